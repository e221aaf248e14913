"""
Simplex-level operations: affine independence, volume, and the duality between
a simplest simplex and its N facet hyperplanes.
"""

import math
from typing import Sequence

import numpy as np

from hypercsi.cache import config_value
from hypercsi.structures.errors import DimensionMismatch, SingularFacetSystem
from hypercsi.systems.geometry.hyperplane import Hyperplane, as_points, normal_from_vertices


def is_affinely_independent(points, tol: float | None = None) -> bool:
    """
    True iff the k points are affinely independent: the (k-1) difference
    vectors p_m - p_0 have full rank with smallest singular value above tol
    times the largest. A single point is always affinely independent.
    """

    tol = float(config_value("geometry.rank_tol", tol))
    P = as_points(points)
    k, dim = P.shape

    if k <= 1:
        return True

    if k - 1 > dim:
        return False

    s = np.linalg.svd(P[1:] - P[0], compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol * s[0])


def simplex_volume(vertices) -> float:
    """
    |det([v_1 ... v_N; 1 ... 1])| / (N-1)! for N vertices of dimension N-1.
    Affinely dependent vertices give zero.
    """

    V = as_points(vertices)
    n, dim = V.shape

    if dim != n - 1:
        raise DimensionMismatch(f"Expected N vertices of dimension N-1, got {n} of dimension {dim}!")

    lifted = np.vstack([V.T, np.ones(n)])
    return float(abs(np.linalg.det(lifted)) / math.factorial(n - 1))


def hyperplanes_from_vertices(vertices, tol: float | None = None) -> list[Hyperplane]:
    """
    The N facet hyperplanes of a simplest simplex. Plane i passes through every
    vertex except vertex i and its normal points away from vertex i.
    """

    V = as_points(vertices)
    planes = []

    for i in range(V.shape[0]):
        normal = normal_from_vertices(V, i, tol=tol)
        j = 1 if i == 0 else 0
        planes.append(Hyperplane(normal, float(normal @ V[j])))

    return planes


def facet_arrays(planes: Sequence[Hyperplane]) -> tuple[np.ndarray, np.ndarray]:
    """
    Stack a hyperplane sequence into (normals N x (N-1), constants N).
    """

    normals = np.vstack([p.normal for p in planes])
    constants = np.array([p.constant for p in planes], dtype=float)

    n, dim = normals.shape
    if dim != n - 1:
        raise DimensionMismatch(f"Expected N hyperplanes in dimension N-1, got {n} in dimension {dim}!")

    return normals, constants


def reconstruct_vertices(planes: Sequence[Hyperplane], tol: float | None = None) -> np.ndarray:
    """
    Recover the simplex vertices from its facet hyperplanes. Vertex i is the
    intersection of every hyperplane except hyperplane i.

    Args:
        planes: N hyperplanes in dimension N-1
        tol: Relative singular-value tolerance for the N-1 x N-1 facet systems

    Returns: An N x (N-1) array, one vertex per row

    Raises:
        SingularFacetSystem: Some facet system cannot be inverted
    """

    tol = float(config_value("geometry.rank_tol", tol))
    normals, constants = facet_arrays(planes)

    # Unit normals keep the conditioning check independent of each normal's scale
    norms = np.linalg.norm(normals, axis=1)
    unit_normals = normals / norms[:, None]
    unit_constants = constants / norms

    n = normals.shape[0]
    vertices = np.empty((n, n - 1))

    for i in range(n):
        B = np.delete(unit_normals, i, axis=0)
        h = np.delete(unit_constants, i)

        s = np.linalg.svd(B, compute_uv=False)
        if not s[-1] > tol * s[0]:
            raise SingularFacetSystem(i, float(s[0] / s[-1]) if s[-1] > 0 else float("inf"))

        vertices[i] = np.linalg.solve(B, h)

    return vertices
