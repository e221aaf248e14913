"""
Affine set fitting: the (N-1)-dimensional affine set that best fits the data,
the projection of pixels into its coordinates (the DR space), and the lift
back to spectral space.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from loguru import logger

from hypercsi.cache import config_value
from hypercsi.structures.dataset import SpectralDataset
from hypercsi.structures.errors import (
    DimensionMismatch,
    InvalidEndmemberCount,
    RankDeficientData,
    TooFewBands,
    TooFewPixels,
)
from hypercsi.util.warning_utils import warn


@dataclass(frozen=True)
class AffineSetModel:
    """
    The fitted affine set { C y + d }: 'basis' is C (M x (N-1), orthonormal
    columns), 'mean' is d, and 'eigenvalues' are the N-1 leading eigenvalues
    of the centered scatter matrix in descending order.
    """

    basis: np.ndarray
    mean: np.ndarray
    n_endmembers: int
    eigenvalues: np.ndarray
    rank_deficient: bool = False

    @property
    def n_bands(self) -> int:
        return self.basis.shape[0]

    @property
    def dr_dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class DRDataset:
    """
    Pixels in DR coordinates, one column per pixel ((N-1) x L).

    'model' is the affine set the pixels were projected with; it is None for
    point clouds built directly in DR space.
    """

    pixels: np.ndarray
    model: AffineSetModel | None = None

    def __post_init__(self):
        pixels = np.array(self.pixels, dtype=float)

        if pixels.ndim == 1:
            pixels = pixels.reshape(1, -1)

        if pixels.ndim != 2:
            raise DimensionMismatch(f"Expected a (N-1) x L matrix of DR pixels, got shape {pixels.shape}!")

        if self.model is not None and pixels.shape[0] != self.model.dr_dim:
            raise DimensionMismatch(f"DR pixels of dimension {pixels.shape[0]} vs model dimension {self.model.dr_dim}!")

        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @property
    def dim(self) -> int:
        return self.pixels.shape[0]

    @property
    def n_pixels(self) -> int:
        return self.pixels.shape[1]

    @property
    def n_endmembers(self) -> int:
        return self.dim + 1

    def points(self, indices=None) -> np.ndarray:
        """
        Selected pixels as rows (count x (N-1)). All pixels when 'indices' is None.
        """
        cols = self.pixels if indices is None else self.pixels[:, np.asarray(indices, dtype=int)]
        return cols.T.copy()


def _fix_sign(vectors: np.ndarray) -> np.ndarray:
    """
    Flip each column so its largest-magnitude entry is positive.
    """
    fixed = vectors.copy()
    pivots = np.argmax(np.abs(fixed), axis=0)
    signs = np.sign(fixed[pivots, np.arange(fixed.shape[1])])
    signs[signs == 0] = 1.0
    return fixed * signs


def fit_affine_set(data: SpectralDataset, n_endmembers: int, tol: float | None = None) -> AffineSetModel:
    """
    Fit the affine set of dimension N-1 to the data.

    The mean is the pixel average; the basis holds the N-1 principal
    eigenvectors of U U^T (U the mean-removed data), descending by eigenvalue,
    each sign-fixed so its largest-magnitude entry is positive.

    Args:
        data: The observations
        n_endmembers: N, at least 2
        tol: Relative singular-value tolerance for the rank check. Defaults to geometry.rank_tol.

    Returns: The fitted AffineSetModel

    Raises:
        InvalidEndmemberCount: N < 2
        TooFewPixels / TooFewBands: min(L, M) < N
    """

    tol = float(config_value("geometry.rank_tol", tol))

    if n_endmembers < 2:
        raise InvalidEndmemberCount(f"At least 2 endmembers are required, got {n_endmembers}!")

    if data.n_pixels < n_endmembers:
        raise TooFewPixels(f"{data.n_pixels} pixels cannot support {n_endmembers} endmembers!")

    if data.n_bands < n_endmembers:
        raise TooFewBands(f"{data.n_bands} bands cannot support {n_endmembers} endmembers!")

    X = data.pixels
    M = data.n_bands
    mean = X.mean(axis=1)
    U = X - mean[:, None]
    scatter = U @ U.T

    eigenvalues, eigenvectors = scipy.linalg.eigh(scatter, subset_by_index=[M - n_endmembers + 1, M - 1])

    # eigh returns ascending order
    eigenvalues = eigenvalues[::-1].copy()
    basis = _fix_sign(eigenvectors[:, ::-1])

    leading = eigenvalues[0] if eigenvalues.size else 0.0
    # Eigenvalues of the scatter are squared singular values
    significant = int(np.sum(eigenvalues > tol**2 * leading)) if leading > 0 else 0
    rank_deficient = significant < n_endmembers - 1

    if rank_deficient:
        message = f"Only {significant} of {n_endmembers - 1} principal directions are significant"
        logger.warning(f"[AffineSetFit] {message}, proceeding with the computed basis")
        warn(message, RankDeficientData)

    logger.debug(f"[AffineSetFit] Fitted {n_endmembers - 1}-dimensional affine set to {data.n_pixels} pixels")

    basis.setflags(write=False)
    mean.setflags(write=False)
    return AffineSetModel(basis, mean, n_endmembers, eigenvalues, rank_deficient)


def project(data: SpectralDataset, model: AffineSetModel) -> DRDataset:
    """
    DR coordinates of every pixel: C^T (x[n] - d).
    """

    if data.n_bands != model.n_bands:
        raise DimensionMismatch(f"Dataset has {data.n_bands} bands, model was fitted on {model.n_bands}!")

    return DRDataset(model.basis.T @ (data.pixels - model.mean[:, None]), model)


def lift(dr_points, model: AffineSetModel) -> np.ndarray:
    """
    Map DR points back to spectral space: C y + d.

    Args:
        dr_points: One (N-1)-vector, or k points as rows (k x (N-1))
        model: The affine set the points live in

    Returns: An M-vector for a single point, otherwise k x M (one spectrum per row)
    """

    points = np.asarray(dr_points, dtype=float)
    single = points.ndim == 1

    if single:
        points = points.reshape(1, -1)

    if points.ndim != 2 or points.shape[1] != model.dr_dim:
        raise DimensionMismatch(f"Expected points of dimension {model.dr_dim}, got shape {np.shape(dr_points)}!")

    spectra = points @ model.basis.T + model.mean
    return spectra[0] if single else spectra
