"""
Endmember spectra sources. Each source is registered under
'synth.spectra.<name>' and called as source(spec, rng) -> M x N matrix.
"""

import numpy as np
from loguru import logger

from hypercsi.cache import cached, config_value
from hypercsi.structures.errors import DataFormatError, RankDeficientSpectra
from hypercsi.systems.synth.scene_spec import SceneSpec
from hypercsi.util.io_utils import read_matrix_csv


def random_smooth_spectra(
    n_bands: int,
    n_endmembers: int,
    rng: np.random.Generator,
    knots: int | None = None,
    floor: float | None = None,
    attempts: int | None = None,
) -> np.ndarray:
    """
    Random reflectance-like curves: piecewise-linear interpolants through
    uniformly drawn knot values, each rescaled to [floor, 1] and sampled on M
    evenly spaced bands.

    Args:
        n_bands: M
        n_endmembers: N
        rng: Source of randomness
        knots: Knots per curve; at least N + 2 are used
        floor: Minimum reflectance
        attempts: Redraws allowed before giving up on full column rank

    Returns: M x N matrix with full column rank

    Raises:
        RankDeficientSpectra: No full-rank draw within the allowed attempts
    """

    knots = max(int(config_value("synth.spectra_knots", knots)), n_endmembers + 2, 3)
    floor = float(config_value("synth.spectra_floor", floor))
    attempts = int(config_value("synth.max_spectra_attempts", attempts))

    bands = np.linspace(0.0, 1.0, n_bands)
    positions = np.linspace(0.0, 1.0, knots)

    for attempt in range(attempts):
        values = rng.uniform(0.0, 1.0, size=(n_endmembers, knots))
        curves = np.column_stack([np.interp(bands, positions, v) for v in values])

        low = curves.min(axis=0)
        span = curves.max(axis=0) - low
        span[span == 0] = 1.0
        spectra = floor + (1.0 - floor) * (curves - low) / span

        if np.linalg.matrix_rank(spectra) == n_endmembers:
            return spectra

        logger.debug(f"[Synth] Spectra draw {attempt} is rank deficient, redrawing")

    raise RankDeficientSpectra(f"No full-rank {n_bands} x {n_endmembers} spectra drawn in {attempts} attempts!")


@cached("synth.spectra.random-smooth")
def random_smooth_source(spec: SceneSpec, rng: np.random.Generator) -> np.ndarray:
    return random_smooth_spectra(spec.n_bands, spec.n_endmembers, rng)


@cached("synth.spectra.user-file")
def user_file_source(spec: SceneSpec, rng: np.random.Generator) -> np.ndarray:
    """
    Spectra from an M x N CSV. Must be nonnegative with full column rank.
    """

    spectra = read_matrix_csv(spec.spectra_path)

    if spectra.shape != (spec.n_bands, spec.n_endmembers):
        raise DataFormatError(
            f"{spec.spectra_path} holds a {spectra.shape[0]} x {spectra.shape[1]} matrix, "
            f"expected {spec.n_bands} x {spec.n_endmembers}!"
        )

    if np.any(spectra < 0):
        raise DataFormatError(f"{spec.spectra_path} contains negative reflectances!")

    if np.linalg.matrix_rank(spectra) < spec.n_endmembers:
        raise RankDeficientSpectra(f"Spectra in {spec.spectra_path} do not have full column rank!")

    return spectra
