"""
Facet hyperplane estimation: normals from region-wise active pixels, and
constants from the data's supporting value along each normal.
"""

from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from loguru import logger

from hypercsi.structures.errors import AffinelyDependentActiveSet, DegenerateSimplex, EmptyRegion, ZeroNormal
from hypercsi.systems.csi.regions import SearchRegions
from hypercsi.systems.dimred import DRDataset
from hypercsi.systems.geometry import (
    Hyperplane,
    as_points,
    is_affinely_independent,
    normal_from_points_with_origin,
    normal_from_vertices,
)


@dataclass(frozen=True)
class HyperplaneSet:
    """
    N estimated facet hyperplanes: normals (N x (N-1)), constants (N), and the
    active pixels (N x (N-1) indices) each normal was computed from.
    """

    normals: np.ndarray
    constants: np.ndarray
    active_pixels: np.ndarray

    @property
    def n_endmembers(self) -> int:
        return self.normals.shape[0]

    def as_planes(self) -> list[Hyperplane]:
        return [Hyperplane(b, h) for b, h in zip(self.normals, self.constants)]

    def max_violation(self, dr: DRDataset) -> float:
        """
        Largest normalized excess max_i max_n (b_i . x[n] - h_i) / ||b_i|| over the data.
        """
        excess = (self.normals @ dr.pixels - self.constants[:, None]) / np.linalg.norm(self.normals, axis=1)[:, None]
        return float(np.max(excess))


def _normal_from_active(
    dr: DRDataset, purest: np.ndarray, i: int, active: list[int], tol: float | None
) -> tuple[np.ndarray, list[int]]:
    points = dr.points(active)

    if not is_affinely_independent(points, tol):
        raise AffinelyDependentActiveSet(i, active)

    try:
        normal = normal_from_points_with_origin(points, i, tol)
    except DegenerateSimplex as err:
        raise AffinelyDependentActiveSet(i, active) from err

    # Outward: the purest pixel i must sit below the active pixels
    if not normal @ purest[i] < np.max(points @ normal):
        normal = -normal

    return normal, active


def estimate_normal(
    dr: DRDataset,
    regions: SearchRegions,
    purest_dr,
    i: int,
    tol: float | None = None,
    rough=None,
) -> tuple[np.ndarray, list[int]]:
    """
    Estimate the normal of facet i.

    The facet through the purest pixels (excluding pixel i) gives a rough
    outward normal. Within each of the N-1 search regions, the pixel with the
    largest inner product with that rough normal is taken (smallest index on
    ties); the facet normal is then computed from these active pixels with the
    data mean (the origin) standing in for vertex i.

    Args:
        dr: DR pixels
        regions: Search balls around the purest pixels
        purest_dr: The N purest pixels as rows
        i: Facet index (0-based)
        tol: Relative rank tolerance
        rough: Rough normal used to rank pixels within each region. Defaults to the
            facet normal through the purest pixels; only its direction matters.

    Returns: (normal, active pixel indices)

    Raises:
        EmptyRegion: A search region holds no pixel
        AffinelyDependentActiveSet: The active pixels do not determine a facet
    """

    purest = as_points(purest_dr)
    if rough is None:
        rough = normal_from_vertices(purest, i, tol=tol)
    rough = np.asarray(rough, dtype=float).reshape(-1)

    active = []

    for k in range(purest.shape[0] - 1):
        members = regions.region(i, k)

        if members.size == 0:
            raise EmptyRegion(i, k)

        scores = rough @ dr.pixels[:, members]
        active.append(int(members[np.argmax(scores)]))

    return _normal_from_active(dr, purest, i, active, tol)


def estimate_normal_naive(dr: DRDataset, purest_dr, i: int, tol: float | None = None) -> tuple[np.ndarray, list[int]]:
    """
    Estimate the normal of facet i from the N-1 pixels with the largest inner
    products over the whole data set, without search regions.

    The selected pixels tend to cluster, which degrades the estimate; this
    exists to demonstrate that effect.
    """

    purest = as_points(purest_dr)
    rough = normal_from_vertices(purest, i, tol=tol)
    scores = rough @ dr.pixels

    # Descending score, then ascending index
    order = np.lexsort((np.arange(dr.n_pixels), -scores))
    active = [int(n) for n in order[: purest.shape[0] - 1]]

    return _normal_from_active(dr, purest, i, active, tol)


def estimate_constant(dr: DRDataset, normal) -> float:
    """
    The supporting value max_n normal . x[n]: the hyperplane with this constant
    touches the data cloud from outside.
    """

    b = np.asarray(normal, dtype=float).reshape(-1)

    if not np.linalg.norm(b) > 0:
        raise ZeroNormal("Cannot estimate a constant for a zero normal!")

    return float(np.max(b @ dr.pixels))


def estimate_hyperplanes(
    dr: DRDataset,
    regions: SearchRegions,
    purest_dr,
    threads: int = 1,
    naive: bool = False,
    tol: float | None = None,
) -> HyperplaneSet:
    """
    Estimate all N facet hyperplanes. Each facet is independent, so facets are
    distributed over 'threads' workers; each writes only its own slot.
    """

    purest = as_points(purest_dr)
    n = purest.shape[0]

    def _one(i: int) -> tuple[np.ndarray, float, list[int]]:
        if naive:
            normal, active = estimate_normal_naive(dr, purest, i, tol)
        else:
            normal, active = estimate_normal(dr, regions, purest, i, tol)
        return normal, estimate_constant(dr, normal), active

    results = Parallel(n_jobs=threads, backend="threading")(delayed(_one)(i) for i in range(n))

    normals = np.vstack([r[0] for r in results])
    constants = np.array([r[1] for r in results])
    active = np.array([r[2] for r in results], dtype=int).reshape(n, n - 1)

    logger.debug(f"[HyperplaneEstimation] Active pixels: {active.tolist()}")
    return HyperplaneSet(normals, constants, active)
