"""
Closed-form abundance estimation.

For the simplex with facets (b_i, h_i / c) and vertices alpha_i, the
abundance of material i in pixel x is the normalized distance of x from
facet i:

    s_i = (h_i / c - b_i . x) / (h_i / c - b_i . alpha_i)

clipped at zero. Each material's map depends only on its own facet, so the
maps are computed independently.
"""

from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from loguru import logger

from hypercsi.cache import config_value
from hypercsi.structures.errors import DegenerateDenominator, InvalidParameter
from hypercsi.systems.csi.endmembers import EndmemberEstimate
from hypercsi.systems.csi.hyperplanes import HyperplaneSet
from hypercsi.systems.dimred import DRDataset


@dataclass(frozen=True)
class AbundanceMatrix:
    """
    L x N nonnegative fractions; row n is the abundance vector of pixel n.

    'clipped_pixels' counts pixels with at least one negative raw abundance,
    i.e. pixels outside the estimated simplex.
    """

    fractions: np.ndarray
    clipped_pixels: int = 0

    @property
    def n_pixels(self) -> int:
        return self.fractions.shape[0]

    @property
    def n_endmembers(self) -> int:
        return self.fractions.shape[1]

    def map(self, i: int) -> np.ndarray:
        """
        Abundance map of material i (length L).
        """
        return self.fractions[:, i]


def _denominators(
    dr: DRDataset, planes: HyperplaneSet, endmembers: EndmemberEstimate, tol: float | None
) -> tuple[np.ndarray, np.ndarray]:
    tol = float(config_value("unmix.denominator_tol", tol))

    shifted = planes.constants / endmembers.shift_c
    denominators = shifted - np.einsum("ij,ij->i", planes.normals, endmembers.dr_vertices)

    diameter = float(np.linalg.norm(np.ptp(dr.pixels, axis=1)))
    limits = tol * np.linalg.norm(planes.normals, axis=1) * diameter

    for i, (value, limit) in enumerate(zip(denominators, limits)):
        if not value > limit:
            raise DegenerateDenominator(i, float(value))

    return shifted, denominators


def _raw_map(dr: DRDataset, normal: np.ndarray, constant: float, denominator: float) -> np.ndarray:
    return (constant - normal @ dr.pixels) / denominator


def estimate_abundance_map(
    dr: DRDataset, planes: HyperplaneSet, endmembers: EndmemberEstimate, i: int, tol: float | None = None
) -> np.ndarray:
    """
    Abundance map of material i alone (length L), clipped at zero.

    Raises:
        DegenerateDenominator: Vertex i (or another vertex) sits on or beyond its own facet
    """

    if not 0 <= i < planes.n_endmembers:
        raise InvalidParameter(f"Material index {i} is out of range for {planes.n_endmembers} endmembers!")

    shifted, denominators = _denominators(dr, planes, endmembers, tol)
    return np.maximum(_raw_map(dr, planes.normals[i], shifted[i], denominators[i]), 0.0)


def estimate_abundances(
    dr: DRDataset,
    planes: HyperplaneSet,
    endmembers: EndmemberEstimate,
    threads: int = 1,
    tol: float | None = None,
) -> AbundanceMatrix:
    """
    All N abundance maps, one worker per material.

    Args:
        dr: DR pixels
        planes: Estimated (unshifted) facet hyperplanes
        endmembers: The shrunk simplex the abundances refer to
        threads: Worker count; does not change the result
        tol: Relative denominator tolerance. Defaults to unmix.denominator_tol.

    Returns: The AbundanceMatrix

    Raises:
        DegenerateDenominator: Some vertex does not lie strictly inside its facet
    """

    shifted, denominators = _denominators(dr, planes, endmembers, tol)
    n = planes.n_endmembers

    raw = Parallel(n_jobs=threads, backend="threading")(
        delayed(_raw_map)(dr, planes.normals[i], shifted[i], denominators[i]) for i in range(n)
    )

    raw = np.column_stack(raw)
    clipped = int(np.sum(np.any(raw < 0, axis=1)))
    fractions = np.maximum(raw, 0.0)

    if clipped:
        logger.debug(f"[AbundanceEstimation] {clipped} pixels outside the estimated simplex were clipped")

    fractions.setflags(write=False)
    return AbundanceMatrix(fractions, clipped)
