import math

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from hypercsi.structures.enums import AbundancePattern, SpectraSource
from hypercsi.structures.errors import InvalidEndmemberCount, InvalidGamma, InvalidParameter, InvalidPurity


class SceneSpec(BaseModel):
    """
    Parameters of one synthetic scene.

    'dirichlet_gamma' defaults to 1/N in every coordinate. 'snr_db' of None
    means noiseless. 'purity_rho' bounds the purity index ||s[n]|| of every
    pixel and must lie in (1/sqrt(N), 1].
    """

    model_config = ConfigDict(frozen=True)

    n_bands: int
    n_pixels: int
    n_endmembers: int
    dirichlet_gamma: list[float] | None = None
    purity_rho: float = 1.0
    snr_db: float | None = None
    seed: int = 0
    spectra_source: SpectraSource = SpectraSource.RANDOM_SMOOTH
    spectra_path: str | None = None
    pattern: AbundancePattern = AbundancePattern.IID_DIRICHLET
    include_pure_pixels: bool = False
    image_width: int | None = None

    @field_validator("snr_db", mode="before")
    @classmethod
    def _infinite_snr_is_noiseless(cls, value):
        if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity", "none"):
            return None
        if isinstance(value, (int, float)) and math.isinf(value) and value > 0:
            return None
        return value

    @model_validator(mode="after")
    def _check_domain(self) -> "SceneSpec":
        N = self.n_endmembers

        if N < 2:
            raise InvalidEndmemberCount(f"At least 2 endmembers are required, got {N}!")

        if self.n_bands < N:
            raise InvalidParameter(f"{self.n_bands} bands cannot hold {N} linearly independent spectra!")

        if self.n_pixels < 1:
            raise InvalidParameter(f"A scene needs at least one pixel, got {self.n_pixels}!")

        if self.dirichlet_gamma is not None:
            gamma = np.asarray(self.dirichlet_gamma, dtype=float)
            if gamma.shape != (N,) or not np.all(np.isfinite(gamma)) or np.any(gamma <= 0):
                raise InvalidGamma(f"Dirichlet gamma must be {N} positive finite values, got {self.dirichlet_gamma}!")

        if not 1 / math.sqrt(N) < self.purity_rho <= 1:
            raise InvalidPurity(
                f"Purity level must lie in (1/sqrt({N}), 1] = ({1 / math.sqrt(N):.4f}, 1], got {self.purity_rho}!",
                details={"purity_rho": self.purity_rho, "n_endmembers": N},
            )

        if self.snr_db is not None and not math.isfinite(self.snr_db):
            raise InvalidParameter(f"SNR must be finite or 'inf', got {self.snr_db}!")

        if not 0 <= self.seed < 2**64:
            raise InvalidParameter(f"Seed must be a 64-bit unsigned integer, got {self.seed}!")

        if self.spectra_source == SpectraSource.USER_FILE and not self.spectra_path:
            raise InvalidParameter("A user-file spectra source requires 'spectra_path'!")

        if self.include_pure_pixels and self.n_pixels < N:
            raise InvalidParameter(f"{self.n_pixels} pixels cannot hold {N} pure pixels!")

        if self.include_pure_pixels and self.purity_rho < 1:
            raise InvalidPurity(
                f"Pure pixels have purity 1 and cannot appear at purity level {self.purity_rho}!",
                details={"purity_rho": self.purity_rho, "n_endmembers": N},
            )

        if self.image_width is not None and not 1 <= self.image_width <= self.n_pixels:
            raise InvalidParameter(f"Image width must lie in [1, {self.n_pixels}], got {self.image_width}!")

        return self

    @property
    def gamma(self) -> np.ndarray:
        if self.dirichlet_gamma is None:
            return np.full(self.n_endmembers, 1.0 / self.n_endmembers)
        return np.asarray(self.dirichlet_gamma, dtype=float)

    @property
    def grid_shape(self) -> tuple[int, int]:
        """
        (height, width) of the pixel grid; pixel n sits at row n // width.
        """
        width = self.image_width or math.ceil(math.sqrt(self.n_pixels))
        return math.ceil(self.n_pixels / width), width
