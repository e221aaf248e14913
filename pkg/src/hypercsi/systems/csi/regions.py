from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy.spatial.distance import cdist, pdist

from hypercsi.structures.errors import DuplicatePurestPixels, InvalidEndmemberCount
from hypercsi.systems.dimred import DRDataset


@dataclass(frozen=True)
class SearchRegions:
    """
    Open balls of a common radius around the N purest pixels.

    The radius is half the smallest distance between two centers, so the balls
    are pairwise disjoint. 'membership[k]' lists, in ascending order, the pixels
    strictly inside the ball around center k.
    """

    radius: float
    centers: np.ndarray
    center_indices: tuple[int, ...]
    membership: tuple[np.ndarray, ...]

    @property
    def n_endmembers(self) -> int:
        return len(self.center_indices)

    @staticmethod
    def center_for(i: int, k: int) -> int:
        """
        The center used by the k-th search region of hyperplane i: the centers in
        order, skipping center i.
        """
        return k if k < i else k + 1

    def region(self, i: int, k: int) -> np.ndarray:
        """
        Pixels inside the k-th search region of hyperplane i (k in 0..N-2).
        """
        return self.membership[self.center_for(i, k)]


def build_regions(dr: DRDataset, purest: list[int]) -> SearchRegions:
    """
    Build the search balls around the purest pixels.

    Raises:
        DuplicatePurestPixels: Two purest pixels coincide, so the radius would be zero
    """

    indices = tuple(int(p) for p in purest)

    if len(indices) < 2:
        raise InvalidEndmemberCount(f"At least 2 purest pixels are required, got {len(indices)}!")

    centers = dr.points(indices)
    radius = 0.5 * float(np.min(pdist(centers)))

    if not radius > 0:
        raise DuplicatePurestPixels(f"Purest pixels {indices} contain duplicates!", details={"purest": list(indices)})

    distances = cdist(dr.pixels.T, centers)
    membership = tuple(np.flatnonzero(distances[:, k] < radius) for k in range(len(indices)))

    logger.debug(f"[SearchRegions] r = {radius:.6g}, members per ball: {[m.size for m in membership]}")
    return SearchRegions(radius, centers, indices, membership)
