"""
Spectral-angle metrics with optimal matching between true and estimated
columns.

Angles are computed as 2 atan2(||a' - b'||, ||a' + b'||) on the unit vectors
a', b'. This equals arccos(a.b / (||a|| ||b||)) but stays accurate for nearly
parallel vectors, where arccos loses half the significant digits.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from hypercsi.structures.errors import HyperCSIError, ShapeMismatch, ZeroMap, ZeroVector
from hypercsi.structures.records import EvalReport


def _unit_columns(matrix: np.ndarray, error: type[HyperCSIError], label: str) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=0)
    zero = np.flatnonzero(norms == 0)
    if zero.size:
        raise error(f"{label} columns {zero.tolist()} are zero!", details={"columns": zero.tolist()})
    return matrix / norms


def spectral_angle(a, b) -> float:
    """
    Angle in radians between two nonzero vectors, in [0, pi].

    Raises:
        ShapeMismatch: Lengths differ
        ZeroVector: Either vector is zero
    """

    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)

    if a.shape != b.shape:
        raise ShapeMismatch(f"Cannot compare vectors of length {a.size} and {b.size}!")

    ua = _unit_columns(a[:, None], ZeroVector, "Vector")[:, 0]
    ub = _unit_columns(b[:, None], ZeroVector, "Vector")[:, 0]

    return float(2 * np.arctan2(np.linalg.norm(ua - ub), np.linalg.norm(ua + ub)))


def angle_matrix(true_columns: np.ndarray, est_columns: np.ndarray, error: type[HyperCSIError] = ZeroVector):
    """
    Pairwise angles in radians: entry (i, j) is the angle between true column i
    and estimated column j.
    """

    true_columns = np.asarray(true_columns, dtype=float)
    est_columns = np.asarray(est_columns, dtype=float)

    if true_columns.ndim != 2 or true_columns.shape != est_columns.shape:
        raise ShapeMismatch(f"Cannot compare matrices of shape {true_columns.shape} and {est_columns.shape}!")

    ut = _unit_columns(true_columns, error, "True").T
    ue = _unit_columns(est_columns, error, "Estimated").T

    return 2 * np.arctan2(cdist(ut, ue), cdist(ut, -ue))


def match_permutation(cost) -> list[int]:
    """
    Exact minimizer of sum_i cost[i, perm[i]] over permutations.

    Returns: perm, where perm[i] is the column assigned to row i
    """

    cost = np.asarray(cost, dtype=float)

    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise ShapeMismatch(f"Assignment needs a square cost matrix, got shape {cost.shape}!")

    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(cost.shape[0], dtype=int)
    perm[rows] = cols
    return perm.tolist()


def _matched_rms_degrees(angles: np.ndarray) -> tuple[float, list[int]]:
    perm = match_permutation(angles**2)
    matched = angles[np.arange(angles.shape[0]), perm]
    return float(np.degrees(np.sqrt(np.mean(matched**2)))), perm


def phi_en(true_spectra, est_spectra) -> float:
    """
    RMS spectral angle in degrees between true and estimated endmembers (M x N,
    one per column), under the best matching.
    """
    return _matched_rms_degrees(angle_matrix(true_spectra, est_spectra, ZeroVector))[0]


def phi_ab(true_maps, est_maps) -> float:
    """
    RMS angle in degrees between true and estimated abundance maps (L x N, one
    map per column), under the best matching.
    """
    return _matched_rms_degrees(angle_matrix(true_maps, est_maps, ZeroMap))[0]


def evaluate(true_spectra, est_spectra, true_maps, est_maps) -> EvalReport:
    """
    Compare an estimate with ground truth.

    Args:
        true_spectra: M x N
        est_spectra: M x N
        true_maps: L x N
        est_maps: L x N

    Returns: The EvalReport; endmembers and maps are matched independently
    """

    en_angles = angle_matrix(true_spectra, est_spectra, ZeroVector)
    en_deg, permutation = _matched_rms_degrees(en_angles)
    ab_deg, ab_permutation = _matched_rms_degrees(angle_matrix(true_maps, est_maps, ZeroMap))

    per_endmember = np.degrees(en_angles[np.arange(len(permutation)), permutation])

    return EvalReport(
        phi_en_deg=en_deg,
        phi_ab_deg=ab_deg,
        endmember_angles_deg=per_endmember.tolist(),
        permutation=permutation,
        abundance_permutation=ab_permutation,
    )
