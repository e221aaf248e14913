from contextlib import contextmanager

import numpy as np
from loguru import logger
from omegaconf import OmegaConf

from hypercsi.cache import get_config
from hypercsi.structures.dataset import SpectralDataset
from hypercsi.systems.csi import HyperplaneSet
from hypercsi.systems.dimred import AffineSetModel, DRDataset
from hypercsi.systems.geometry import facet_arrays, hyperplanes_from_vertices
from hypercsi.systems.synth import sample_dirichlet

UNIT_TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


@contextmanager
def temporary_config(overrides: dict):
    """
    A context manager that temporarily overrides config values, given as
    {dot.path: value}, and restores the previous values when the scope exits.
    """

    cfg = get_config()
    previous = {path: OmegaConf.select(cfg, path) for path in overrides}

    for path, value in overrides.items():
        logger.debug(f"Temporarily setting {path} = {value}")
        OmegaConf.update(cfg, path, value)

    try:
        yield cfg

    finally:
        for path, value in previous.items():
            OmegaConf.update(cfg, path, value)


def random_simplex(n_endmembers: int, rng: np.random.Generator, spread: float = 1.0) -> np.ndarray:
    """
    N well-conditioned random vertices of dimension N-1 (one per row), centered
    near the origin.
    """

    while True:
        vertices = rng.normal(0.0, spread, size=(n_endmembers, n_endmembers - 1))
        vertices -= vertices.mean(axis=0)

        s = np.linalg.svd(vertices[1:] - vertices[0], compute_uv=False)
        if s[-1] > 0.05 * s[0]:
            return vertices


def points_in_simplex(vertices: np.ndarray, count: int, rng: np.random.Generator, gamma: float = 1.0) -> np.ndarray:
    """
    'count' points strictly inside the simplex, one per row.
    """
    weights = sample_dirichlet(np.full(vertices.shape[0], gamma), count, rng)
    return weights.T @ vertices


def dr_cloud(points: np.ndarray) -> DRDataset:
    """
    A DRDataset from points given one per row.
    """
    return DRDataset(np.asarray(points, dtype=float).T)


def lifting_model(n_bands: int, n_endmembers: int, rng: np.random.Generator, offset: float = 1.0) -> AffineSetModel:
    """
    A random affine set {C y + d} with orthonormal C and mean d = offset everywhere.
    """
    basis, _ = np.linalg.qr(rng.normal(size=(n_bands, n_endmembers - 1)))
    return AffineSetModel(basis, np.full(n_bands, offset), n_endmembers, np.ones(n_endmembers - 1))


def mixed_dataset(
    spectra: np.ndarray, n_pixels: int, rng: np.random.Generator, gamma: float = 1.0, pure: bool = True
) -> tuple[SpectralDataset, np.ndarray]:
    """
    Noiseless data A S with Dirichlet abundances; the first N pixels are pure when 'pure' is set.

    Returns: (dataset, abundances N x L)
    """

    n = spectra.shape[1]
    abundances = sample_dirichlet(np.full(n, gamma), n_pixels, rng)
    if pure:
        abundances[:, :n] = np.eye(n)
    return SpectralDataset(spectra @ abundances, n_truth=n), abundances


def hyperplane_set(vertices: np.ndarray) -> HyperplaneSet:
    """
    The exact facet hyperplanes of a simplex, packaged as an estimate would be.
    """

    normals, constants = facet_arrays(hyperplanes_from_vertices(vertices))
    n = normals.shape[0]
    return HyperplaneSet(normals, constants, np.zeros((n, n - 1), dtype=int))


def angle_between(a: np.ndarray, b: np.ndarray) -> float:
    """
    Angle in radians between two vectors.
    """
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return float(2 * np.arctan2(np.linalg.norm(a - b), np.linalg.norm(a + b)))
