"""
Shrinking the identified simplex toward the data mean and lifting its vertices
back to spectral space.
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger

from hypercsi.cache import config_value
from hypercsi.structures.errors import InvalidParameter, NonpositiveMeanEntry, SpectraClamped
from hypercsi.systems.csi.hyperplanes import HyperplaneSet
from hypercsi.systems.dimred import AffineSetModel, lift
from hypercsi.systems.geometry import reconstruct_vertices
from hypercsi.util.warning_utils import warn

# Lifted residue below this magnitude is floating-point noise rather than a real violation
CLAMP_NOISE = 1e-12


@dataclass(frozen=True)
class EndmemberEstimate:
    """
    DR vertices (N x (N-1), one per row) and nonnegative lifted spectra (M x N,
    one per column) of the estimated simplex, shrunk by 'shift_c'.
    """

    dr_vertices: np.ndarray
    spectra: np.ndarray
    shift_c: float
    eta: float = 1.0
    c_prime: float | None = None
    clamped_entries: int = 0

    @property
    def n_endmembers(self) -> int:
        return self.dr_vertices.shape[0]


def check_eta(eta: float) -> float:
    eta = float(eta)
    if not 0 < eta <= 1:
        raise InvalidParameter(f"eta must lie in (0, 1], got {eta}!", details={"eta": eta})
    return eta


def shift_factor(
    planes: HyperplaneSet, model: AffineSetModel, eta: float | None = None, tol: float | None = None
) -> tuple[float, float]:
    """
    The smallest factor c' >= 1 for which the shrunk vertices lift to
    nonnegative spectra, and the applied factor c = c' / eta.

    Bands with a non-positive mean cannot be fixed by shrinking toward the mean;
    they are skipped and reported with a NonpositiveMeanEntry warning.

    Returns: (c, c_prime)

    Raises:
        InvalidParameter: eta outside (0, 1]
        SingularFacetSystem: Some facet system cannot be inverted
    """

    eta = check_eta(config_value("unmix.eta", eta))

    raw = reconstruct_vertices(planes.as_planes(), tol)
    v = raw @ model.basis.T  # N x M, v[i, j] is band j of C alpha_i
    d = model.mean

    positive = d > 0
    ratios = -v[:, positive] / d[positive]
    c_prime = max(1.0, float(ratios.max())) if ratios.size else 1.0

    unfixable = ~positive & np.any(v < 0, axis=0)
    if np.any(unfixable):
        bands = np.flatnonzero(unfixable).tolist()
        message = f"Bands {bands} have non-positive mean and negative vertex entries; the shift cannot fix them"
        logger.warning(f"[ShiftFactor] {message}")
        warn(message, NonpositiveMeanEntry)

    logger.debug(f"[ShiftFactor] c' = {c_prime:.6g}, eta = {eta}, c = {c_prime / eta:.6g}")
    return c_prime / eta, c_prime


def reconstruct_endmembers(
    planes: HyperplaneSet,
    c: float,
    model: AffineSetModel,
    eta: float = 1.0,
    c_prime: float | None = None,
    tol: float | None = None,
) -> EndmemberEstimate:
    """
    Vertices of the simplex bounded by the estimated hyperplanes, divided by c,
    and their lifted spectra. Negative lifted entries are clamped to zero and
    counted.

    Args:
        planes: The estimated facet hyperplanes
        c: Shift factor, at least 1 in normal use
        model: The affine set used for lifting
        eta: Recorded on the estimate
        c_prime: Recorded on the estimate
        tol: Relative singular-value tolerance for the facet systems

    Returns: The EndmemberEstimate

    Raises:
        SingularFacetSystem: Some facet system cannot be inverted
    """

    if not c > 0:
        raise InvalidParameter(f"Shift factor must be positive, got {c}!")

    dr_vertices = reconstruct_vertices(planes.as_planes(), tol) / c
    spectra = lift(dr_vertices, model).T

    negative = spectra < 0
    clamped = int(np.sum(negative))

    if clamped:
        worst = float(spectra.min())
        if worst < -CLAMP_NOISE:
            message = f"{clamped} negative spectral entries (min {worst:.3e}) clamped to zero"
            logger.warning(f"[EndmemberReconstruction] {message}")
            warn(message, SpectraClamped)
        spectra = np.where(negative, 0.0, spectra)

    dr_vertices.setflags(write=False)
    spectra.setflags(write=False)
    return EndmemberEstimate(dr_vertices, spectra, float(c), float(eta), c_prime, clamped)
