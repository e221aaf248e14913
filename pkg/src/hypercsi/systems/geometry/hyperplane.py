"""
Hyperplanes in the dimension-reduced space and the projector formula that
produces their normals from simplex vertices.

A hyperplane is the set { x : normal . x = constant }. Normals are returned
unnormalized, exactly as the projector produces them.
"""

from dataclasses import dataclass

import numpy as np

from hypercsi.cache import config_value
from hypercsi.structures.errors import DegenerateSimplex, DimensionMismatch, InvalidParameter, ZeroNormal


def as_points(points) -> np.ndarray:
    """
    Coerce a sequence of points into a float array with one row per point.

    A 1-D input is read as a sequence of scalar (1-D) points.
    """

    arr = np.asarray(points, dtype=float)

    if arr.ndim == 1:
        return arr.reshape(-1, 1)

    if arr.ndim != 2:
        raise DimensionMismatch(f"Expected a sequence of points (2-D array), got shape {arr.shape}!")

    return arr


@dataclass(frozen=True)
class Hyperplane:
    """
    A hyperplane parameterized by a (nonzero) normal vector and an inner-product constant.
    """

    normal: np.ndarray
    constant: float

    def __post_init__(self):
        normal = np.array(self.normal, dtype=float).reshape(-1)

        if not np.linalg.norm(normal) > 0:
            raise ZeroNormal("A hyperplane normal must not be the zero vector!")

        normal.setflags(write=False)
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "constant", float(self.constant))

    @property
    def dim(self) -> int:
        return self.normal.shape[0]

    def normalized(self) -> "Hyperplane":
        """
        The same hyperplane with a unit normal.
        """
        norm = np.linalg.norm(self.normal)
        return Hyperplane(self.normal / norm, self.constant / norm)

    def signed_offset(self, points) -> np.ndarray:
        """
        (normal . p - constant) / ||normal|| for each row p. Positive values lie on the outward side.
        """
        pts = as_points(points)
        return (pts @ self.normal - self.constant) / np.linalg.norm(self.normal)


def _full_column_rank(matrix: np.ndarray, tol: float) -> tuple[bool, float]:
    """
    Check that 'matrix' has full column rank: smallest singular value above
    tol times the largest.

    Returns: (is_full_rank, condition number)
    """
    s = np.linalg.svd(matrix, compute_uv=False)

    if s.size == 0:
        return True, 1.0

    if s[0] == 0:
        return False, np.inf

    cond = s[0] / s[-1] if s[-1] > 0 else np.inf
    return bool(s[-1] > tol * s[0]), float(cond)


def normal_from_vertices(vertices, i: int, j: int | None = None, tol: float | None = None) -> np.ndarray:
    """
    The normal of the facet opposite vertex i: the projection of (v_j - v_i)
    onto the orthogonal complement of the facet's direction space.

    The result is orthogonal to every difference of vertices other than v_i and
    points outward, i.e. b . v_i < b . v_k for every k != i.

    Args:
        vertices: N points of dimension N-1, one row per vertex
        i: Index of the excluded vertex (0-based)
        j: Reference vertex, any index other than i. Defaults to the smallest such index.
        tol: Relative singular-value tolerance. Defaults to geometry.rank_tol.

    Returns: The unnormalized normal vector

    Raises:
        DegenerateSimplex: The vertices are affinely dependent
    """

    tol = float(config_value("geometry.rank_tol", tol))
    V = as_points(vertices)
    n, dim = V.shape

    if n < 2 or dim != n - 1:
        raise DimensionMismatch(f"Expected N >= 2 vertices of dimension N-1, got {n} vertices of dimension {dim}!")

    if not 0 <= i < n:
        raise InvalidParameter(f"Vertex index {i} out of range for {n} vertices!")

    if j is None:
        j = 1 if i == 0 else 0
    elif j == i or not 0 <= j < n:
        raise InvalidParameter(f"Reference vertex {j} must differ from {i} and lie in range!")

    rest = [k for k in range(n) if k not in (i, j)]
    P = (V[rest] - V[j]).T  # (N-1) x (N-2)
    direction = V[j] - V[i]

    if P.shape[1] > 0:
        full_rank, cond = _full_column_rank(P, tol)
        if not full_rank:
            raise DegenerateSimplex(
                f"Facet opposite vertex {i} is degenerate (condition number {cond:.3e})!", details={"i": i}
            )

        normal = direction - P @ np.linalg.solve(P.T @ P, P.T @ direction)
    else:
        normal = direction.copy()

    scale = max(np.max(np.linalg.norm(V - V[j], axis=1)), np.finfo(float).tiny)
    if np.linalg.norm(normal) <= tol * scale:
        raise DegenerateSimplex(f"Vertex {i} lies in the affine hull of the others!", details={"i": i})

    return normal


def normal_from_points_with_origin(points, i: int, tol: float | None = None) -> np.ndarray:
    """
    The facet normal computed from N-1 points lying on the facet, with the
    origin standing in for the excluded vertex i.

    When the points lie on the facet and the origin is the data mean (strictly
    inside the simplex), this has the direction of the true facet normal.

    Args:
        points: N-1 points of dimension N-1, one row per point
        i: Position at which the origin is inserted (0-based)
        tol: Relative singular-value tolerance

    Returns: The unnormalized normal vector

    Raises:
        DegenerateSimplex: The points together with the origin are affinely dependent
    """

    P = as_points(points)
    n_points, dim = P.shape

    if n_points != dim:
        raise DimensionMismatch(f"Expected N-1 points of dimension N-1, got {n_points} of dimension {dim}!")

    if not 0 <= i <= n_points:
        raise InvalidParameter(f"Insertion index {i} out of range for {n_points + 1} vertices!")

    augmented = np.insert(P, i, np.zeros(dim), axis=0)
    return normal_from_vertices(augmented, i, tol=tol)


def point_to_hyperplane_distance(p, plane: Hyperplane) -> float:
    """
    Euclidean distance |h - b . p| / ||b|| from p to the hyperplane.
    """

    point = np.asarray(p, dtype=float).reshape(-1)

    if point.shape[0] != plane.dim:
        raise DimensionMismatch(f"Point of dimension {point.shape[0]} vs hyperplane of dimension {plane.dim}!")

    norm = np.linalg.norm(plane.normal)
    if norm == 0:
        raise ZeroNormal("Cannot measure distance to a hyperplane with a zero normal!")

    return float(abs(plane.constant - plane.normal @ point) / norm)
