import enum


class SpectraSource(enum.Enum):
    @classmethod
    def list(cls):
        return list(map(lambda c: c.value, cls))

    RANDOM_SMOOTH = "random-smooth"  # Random piecewise-linear reflectance-like curves
    USER_FILE = "user-file"  # An M x N CSV supplied by the user


class AbundancePattern(enum.Enum):
    @classmethod
    def list(cls):
        return list(map(lambda c: c.value, cls))

    IID_DIRICHLET = "iid-dirichlet"  # i.i.d. Dirichlet draws with a purity cap
    BLOCK_SPARSE = "block-sparse"  # Spatially correlated blocks with at most 2 materials each


class DataFormat(enum.Enum):
    @classmethod
    def list(cls):
        return list(map(lambda c: c.value, cls))

    BINARY = "hsd"  # HSD1 binary container
    CSV = "csv"  # L rows x M columns


class Stage(enum.Enum):
    """
    The pipeline stages, in execution order.
    """

    AFFINE_SET_FIT = "affine_set_fit"
    PURE_PIXEL_SEARCH = "pure_pixel_search"
    HYPERPLANE_ESTIMATION = "hyperplane_estimation"
    SHIFT_FACTOR = "shift_factor"
    ENDMEMBER_RECONSTRUCTION = "endmember_reconstruction"
    ABUNDANCE_ESTIMATION = "abundance_estimation"
