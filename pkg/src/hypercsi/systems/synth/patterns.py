"""
Abundance patterns. Each pattern is registered under 'synth.pattern.<name>'
and called as pattern(spec, rng) -> N x L matrix whose columns lie on the
unit simplex.
"""

import math

import numpy as np
from loguru import logger

from hypercsi.cache import cached, config_value
from hypercsi.structures.errors import PurityInfeasible
from hypercsi.systems.synth.dirichlet import sample_dirichlet
from hypercsi.systems.synth.scene_spec import SceneSpec


def purity_limited_pool(
    gamma: np.ndarray,
    n_pixels: int,
    rho: float,
    rng: np.random.Generator,
    pool_factor: int | None = None,
    min_acceptance: float | None = None,
) -> np.ndarray:
    """
    Draw Dirichlet abundance vectors in batches of 'n_pixels', keeping those with
    purity index ||s|| <= rho, until n_pixels are kept; then pick n_pixels of
    the kept vectors uniformly without replacement.

    Raises:
        PurityInfeasible: Fewer than n_pixels kept within pool_factor * n_pixels
        draws, or the acceptance rate fell below min_acceptance
    """

    pool_factor = int(config_value("synth.pool_factor", pool_factor))
    min_acceptance = float(config_value("synth.min_acceptance", min_acceptance))

    cap = pool_factor * n_pixels
    kept: list[np.ndarray] = []
    n_kept = 0
    drawn = 0

    while n_kept < n_pixels and drawn < cap:
        batch = min(n_pixels, cap - drawn)
        draws = sample_dirichlet(gamma, batch, rng)
        drawn += batch

        accepted = draws[:, np.linalg.norm(draws, axis=0) <= rho]
        kept.append(accepted)
        n_kept += accepted.shape[1]

        if drawn >= 10 / min_acceptance and n_kept / drawn < min_acceptance:
            break

    if n_kept < n_pixels:
        raise PurityInfeasible(
            f"Only {n_kept} of {drawn} Dirichlet draws satisfy purity <= {rho}; {n_pixels} are required!",
            details={"kept": n_kept, "drawn": drawn, "acceptance": n_kept / max(drawn, 1)},
        )

    pool = np.hstack(kept)
    logger.debug(f"[Synth] Purity pool: kept {n_kept} of {drawn} draws (rho = {rho})")

    return pool[:, rng.choice(n_kept, size=n_pixels, replace=False)]


@cached("synth.pattern.iid-dirichlet")
def iid_dirichlet(spec: SceneSpec, rng: np.random.Generator) -> np.ndarray:
    return purity_limited_pool(spec.gamma, spec.n_pixels, spec.purity_rho, rng)


@cached("synth.pattern.block-sparse")
def block_sparse(spec: SceneSpec, rng: np.random.Generator, block_size: int | None = None) -> np.ndarray:
    """
    Spatially correlated maps on the pixel grid: square blocks, each holding one
    material at abundance 1 or two materials mixed along a linear left-to-right
    ramp.
    """

    block = int(config_value("synth.block_size", block_size))
    N = spec.n_endmembers
    height, width = spec.grid_shape

    if spec.purity_rho < 1:
        logger.warning(f"[Synth] Block-sparse maps contain pure blocks; purity level {spec.purity_rho} is ignored")

    grid = np.zeros((N, height, width))

    for top in range(0, height, block):
        for left in range(0, width, block):
            rows = slice(top, min(top + block, height))
            cols = slice(left, min(left + block, width))
            n_active = int(rng.integers(1, 3))
            materials = rng.choice(N, size=n_active, replace=False)

            if n_active == 1:
                grid[materials[0], rows, cols] = 1.0
                continue

            span = cols.stop - cols.start
            ramp = (np.arange(span) + 0.5) / span
            grid[materials[0], rows, cols] = 1.0 - ramp
            grid[materials[1], rows, cols] = ramp

    return grid.reshape(N, height * width)[:, : spec.n_pixels].copy()


def lag_one_autocorrelation(abundance_map: np.ndarray, width: int) -> float:
    """
    Correlation between horizontally adjacent pixels of one abundance map laid
    out row-major with the given width.
    """

    height = math.ceil(abundance_map.size / width)
    padded = np.full(height * width, np.nan)
    padded[: abundance_map.size] = abundance_map
    image = padded.reshape(height, width)

    left = image[:, :-1].reshape(-1)
    right = image[:, 1:].reshape(-1)
    valid = ~(np.isnan(left) | np.isnan(right))

    if np.std(left[valid]) == 0 or np.std(right[valid]) == 0:
        return 1.0

    return float(np.corrcoef(left[valid], right[valid])[0, 1])
