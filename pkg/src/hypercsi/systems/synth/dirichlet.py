import numpy as np

from hypercsi.structures.errors import InvalidGamma, InvalidParameter

# Redraw rounds for columns whose gamma draws all underflow to zero
MAX_REDRAWS = 100


def sample_dirichlet(gamma, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    'count' i.i.d. Dirichlet(gamma) samples as the columns of an N x count matrix.

    Each coordinate is an independent Gamma(gamma_i, 1) draw; the column is
    normalized by its sum.

    Args:
        gamma: N positive concentration parameters
        count: Number of samples
        rng: Source of randomness

    Returns: N x count matrix with columns on the unit simplex

    Raises:
        InvalidGamma: gamma is empty, non-finite, or not strictly positive
    """

    gamma = np.asarray(gamma, dtype=float).reshape(-1)

    if gamma.size == 0 or not np.all(np.isfinite(gamma)) or np.any(gamma <= 0):
        raise InvalidGamma(f"Dirichlet parameters must be positive and finite, got {gamma.tolist()}!")

    if count < 0:
        raise InvalidParameter(f"Cannot draw {count} samples!")

    draws = rng.standard_gamma(gamma[:, None], size=(gamma.size, count))
    sums = draws.sum(axis=0)

    for _ in range(MAX_REDRAWS):
        empty = np.flatnonzero(sums == 0)
        if empty.size == 0:
            break
        draws[:, empty] = rng.standard_gamma(gamma[:, None], size=(gamma.size, empty.size))
        sums[empty] = draws[:, empty].sum(axis=0)

    if np.any(sums == 0):
        raise InvalidGamma(f"Dirichlet parameters {gamma.tolist()} are too small to sample in double precision!")

    return draws / sums
