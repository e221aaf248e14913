"""
Successive projection: greedy selection of the N purest pixels.

Pixels are augmented with a constant 1 coordinate so the selection works on
the affine geometry of the (mean-centered) DR cloud. Each round picks the
pixel with the largest residual norm, then projects every pixel onto the
orthogonal complement of the pick.
"""

import numpy as np
from loguru import logger

from hypercsi.cache import config_value
from hypercsi.structures.errors import DegenerateData, InvalidEndmemberCount, TooFewPixels
from hypercsi.systems.dimred import DRDataset


def select_purest(dr: DRDataset, n_endmembers: int, tol: float | None = None) -> list[int]:
    """
    Indices of the N purest pixels, in selection order. Ties go to the smallest index.

    Args:
        dr: DR pixels
        n_endmembers: N
        tol: Relative residual-norm tolerance below which no new direction is found

    Returns: N distinct pixel indices

    Raises:
        TooFewPixels: L < N
        DegenerateData: Fewer than N affinely independent pixels exist
    """

    tol = float(config_value("geometry.rank_tol", tol))

    if n_endmembers < 1:
        raise InvalidEndmemberCount(f"Cannot select {n_endmembers} pixels!")

    if dr.n_pixels < n_endmembers:
        raise TooFewPixels(f"{dr.n_pixels} pixels cannot yield {n_endmembers} purest pixels!")

    residual = np.vstack([dr.pixels, np.ones((1, dr.n_pixels))])
    selected: list[int] = []
    first_norm = None

    for step in range(n_endmembers):
        norms = np.einsum("ij,ij->j", residual, residual)
        pick = int(np.argmax(norms))

        if first_norm is None:
            first_norm = norms[pick]
        elif norms[pick] <= tol**2 * first_norm:
            raise DegenerateData(
                f"Only {step} affinely independent pixels found, {n_endmembers} required!",
                details={"selected": selected},
            )

        selected.append(pick)
        direction = residual[:, pick] / np.sqrt(norms[pick])
        residual = residual - np.outer(direction, direction @ residual)

    logger.debug(f"[SPA] Purest pixels: {selected}")
    return selected
