from dataclasses import dataclass

import numpy as np
from loguru import logger

from hypercsi.structures.errors import DataFormatError


@dataclass(frozen=True)
class SpectralDataset:
    """
    An M-band, L-pixel observation matrix. Column n of 'pixels' is the
    observed spectrum x[n].

    'n_truth' is the number of materials the data was generated with, or None
    when unknown.
    """

    pixels: np.ndarray
    n_truth: int | None = None
    name: str = "dataset"

    def __post_init__(self):
        pixels = np.array(self.pixels, dtype=float)

        if pixels.ndim != 2:
            raise DataFormatError(f"Expected a 2-D (bands x pixels) matrix, got shape {pixels.shape}!")

        if not np.all(np.isfinite(pixels)):
            raise DataFormatError(f"Dataset '{self.name}' contains non-finite values!")

        if np.any(pixels < 0):
            logger.warning(f"[SpectralDataset] '{self.name}' holds {int(np.sum(pixels < 0))} negative entries")

        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @property
    def n_bands(self) -> int:
        return self.pixels.shape[0]

    @property
    def n_pixels(self) -> int:
        return self.pixels.shape[1]

    @classmethod
    def from_pixel_rows(cls, rows: np.ndarray, n_truth: int | None = None, name: str = "dataset") -> "SpectralDataset":
        """
        Build a dataset from an L x M array (one pixel per row).
        """
        return cls(np.asarray(rows, dtype=float).T, n_truth=n_truth, name=name)
