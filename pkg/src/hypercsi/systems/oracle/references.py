"""
Brute-force references. These enumerate instead of optimizing, so they are
exact but only usable at small scale; they exist to check the production code.
"""

import itertools

import numpy as np
from loguru import logger

from hypercsi.cache import config_value
from hypercsi.structures.errors import DegenerateSimplex, DimensionMismatch, NotEnclosing, ShapeMismatch, TooManyPixels
from hypercsi.systems.dimred import DRDataset
from hypercsi.systems.geometry import as_points, hyperplanes_from_vertices, is_affinely_independent, simplex_volume

MAX_FCLS_ENDMEMBERS = 12
MAX_SUBSET_PIXELS = 25
MAX_PERMUTATION_SIZE = 10

# Negative weights down to this are rounding, not infeasibility
FEASIBILITY_SLACK = 1e-12


def _face_solution(x: np.ndarray, V: np.ndarray, face: tuple[int, ...]) -> tuple[np.ndarray, float]:
    base = V[face[0]]
    if len(face) == 1:
        weights = np.ones(1)
    else:
        D = (V[list(face[1:])] - base).T
        w, *_ = np.linalg.lstsq(D, x - base, rcond=None)
        weights = np.concatenate([[1.0 - w.sum()], w])

    residual = float(np.linalg.norm(x - weights @ V[list(face)]))
    return weights, residual


def fcls_solve(dr_pixel, dr_vertices) -> np.ndarray:
    """
    Fully constrained least squares by active-set enumeration: the point of the
    simplex nearest to 'dr_pixel', as barycentric weights.

    Every face (nonempty vertex subset) is solved as an equality-constrained
    least squares problem; the feasible solution with the smallest residual
    wins, smaller faces first on ties.

    Args:
        dr_pixel: An (N-1)-vector
        dr_vertices: N vertices as rows

    Returns: N nonnegative weights summing to 1

    Raises:
        DegenerateSimplex: The vertices are affinely dependent
        TooManyPixels: N exceeds the enumeration limit
    """

    V = as_points(dr_vertices)
    n, dim = V.shape
    x = np.asarray(dr_pixel, dtype=float).reshape(-1)

    if n > MAX_FCLS_ENDMEMBERS:
        raise TooManyPixels(f"Enumerating faces of a {n}-vertex simplex exceeds the limit of {MAX_FCLS_ENDMEMBERS}!")

    if x.size != dim:
        raise DimensionMismatch(f"Pixel of dimension {x.size} vs vertices of dimension {dim}!")

    if not is_affinely_independent(V):
        raise DegenerateSimplex("FCLS reference needs affinely independent vertices!")

    best: np.ndarray | None = None
    best_residual = np.inf

    for size in range(1, n + 1):
        for face in itertools.combinations(range(n), size):
            weights, residual = _face_solution(x, V, face)
            if np.all(weights >= -FEASIBILITY_SLACK) and residual < best_residual:
                best = np.zeros(n)
                best[list(face)] = weights
                best_residual = residual

    best = np.maximum(best, 0.0)
    return best / best.sum()


def max_volume_subset(dr: DRDataset, n_endmembers: int) -> list[int]:
    """
    The N pixels spanning the largest simplex, by exhaustive search. Ties go to
    the lexicographically first subset.

    Raises:
        TooManyPixels: L exceeds the enumeration limit
    """

    if dr.n_pixels > MAX_SUBSET_PIXELS:
        raise TooManyPixels(f"{dr.n_pixels} pixels exceed the subset enumeration limit of {MAX_SUBSET_PIXELS}!")

    if dr.dim != n_endmembers - 1:
        raise DimensionMismatch(f"{n_endmembers} vertices need DR dimension {n_endmembers - 1}, got {dr.dim}!")

    points = dr.points()
    best: tuple[int, ...] | None = None
    best_volume = -1.0

    for subset in itertools.combinations(range(dr.n_pixels), n_endmembers):
        volume = simplex_volume(points[list(subset)])
        if volume > best_volume:
            best, best_volume = subset, volume

    return list(best)


def enclosure_excess(dr: DRDataset, vertices) -> float:
    """
    Largest normalized distance by which a pixel lies outside the simplex.
    Nonpositive when every pixel is enclosed.
    """

    planes = hyperplanes_from_vertices(vertices)
    return max(float(np.max(plane.signed_offset(dr.points()))) for plane in planes)


def min_volume_check(
    dr: DRDataset,
    candidate,
    trials: int,
    rng: np.random.Generator,
    scale: float = 1e-2,
    tol: float | None = None,
) -> bool:
    """
    Randomized falsification check of local volume minimality: jitter the candidate's
    vertices 'trials' times and report False as soon as a jittered simplex still
    encloses the data with smaller volume.

    Args:
        dr: The data the candidate must enclose
        candidate: N vertices as rows
        trials: Number of random perturbations
        rng: Source of randomness
        scale: Jitter standard deviation relative to the candidate's diameter
        tol: Allowed facet slack. Defaults to unmix.enclosure_tol.

    Returns: True when no trial found a smaller enclosing simplex

    Raises:
        NotEnclosing: The candidate itself does not enclose the data
    """

    tol = float(config_value("unmix.enclosure_tol", tol))
    V = as_points(candidate)

    excess = enclosure_excess(dr, V)
    if excess > tol:
        raise NotEnclosing(f"Candidate leaves pixels {excess:.3e} outside a facet!", details={"excess": excess})

    volume = simplex_volume(V)
    diameter = max(float(np.linalg.norm(a - b)) for a, b in itertools.combinations(V, 2))

    for trial in range(trials):
        jittered = V + rng.normal(0.0, scale * diameter, size=V.shape)

        if not is_affinely_independent(jittered):
            continue

        if enclosure_excess(dr, jittered) <= tol and simplex_volume(jittered) < volume * (1 - 1e-9):
            logger.debug(f"[Oracle] Trial {trial} found a smaller enclosing simplex")
            return False

    return True


def brute_force_permutation(cost) -> list[int]:
    """
    Minimizer of sum_i cost[i, perm[i]] by enumerating every permutation.
    Ties go to the lexicographically first permutation.
    """

    cost = np.asarray(cost, dtype=float)

    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise ShapeMismatch(f"Assignment needs a square cost matrix, got shape {cost.shape}!")

    n = cost.shape[0]
    if n > MAX_PERMUTATION_SIZE:
        raise TooManyPixels(f"Enumerating {n}! permutations exceeds the limit of {MAX_PERMUTATION_SIZE}!")

    rows = np.arange(n)
    best = min(itertools.permutations(range(n)), key=lambda perm: cost[rows, list(perm)].sum())
    return list(best)
