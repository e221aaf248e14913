import numpy as np
import pytest

from hypercsi.structures.dataset import SpectralDataset
from hypercsi.structures.errors import (
    DimensionMismatch,
    InvalidEndmemberCount,
    RankDeficientData,
    TooFewBands,
    TooFewPixels,
)
from hypercsi.systems.dimred import fit_affine_set, lift, project

from .. import TEST_SEED
from ..utils import mixed_dataset


def random_spectra(n_bands: int, n_endmembers: int, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(0.05, 1.0, size=(n_bands, n_endmembers))


def test_fit_standard_basis():
    data = SpectralDataset(np.eye(3))
    model = fit_affine_set(data, 3)

    assert np.allclose(model.mean, 1 / 3)
    assert np.allclose(model.basis.T @ model.basis, np.eye(2), atol=1e-10)
    assert np.allclose(model.basis.T @ np.ones(3), 0.0, atol=1e-12)


invalid_fit_cases = [
    # pixels, N, error
    (np.eye(3)[:, :2], 3, TooFewPixels),
    (np.ones((2, 10)), 3, TooFewBands),
    (np.eye(3), 1, InvalidEndmemberCount),
]


@pytest.mark.parametrize("pixels, n, error", invalid_fit_cases)
def test_fit_invalid(pixels, n, error):
    with pytest.raises(error):
        fit_affine_set(SpectralDataset(pixels), n)


fit_cases = [
    # bands, endmembers, pixels
    (10, 2, 50),
    (20, 3, 200),
    (50, 5, 500),
    (224, 8, 1000),
]


@pytest.mark.parametrize("n_bands, n_endmembers, n_pixels", fit_cases)
def test_fit_noiseless_mixtures(n_bands, n_endmembers, n_pixels):
    rng = np.random.default_rng(TEST_SEED)
    spectra = random_spectra(n_bands, n_endmembers, rng)
    data, _ = mixed_dataset(spectra, n_pixels, rng)

    model = fit_affine_set(data, n_endmembers)

    assert model.basis.shape == (n_bands, n_endmembers - 1)
    assert np.allclose(model.basis.T @ model.basis, np.eye(n_endmembers - 1), atol=1e-10)
    assert np.allclose(model.mean, data.pixels.mean(axis=1))
    assert np.all(np.diff(model.eigenvalues) <= 0)
    assert not model.rank_deficient

    # Every pixel lies in the fitted affine set
    centered = data.pixels - model.mean[:, None]
    residual = centered - model.basis @ (model.basis.T @ centered)
    assert np.max(np.linalg.norm(residual, axis=0)) < 1e-9

    # Sign convention: largest-magnitude entry of each basis vector is positive
    pivots = np.argmax(np.abs(model.basis), axis=0)
    assert np.all(model.basis[pivots, np.arange(n_endmembers - 1)] > 0)


def test_fit_matches_full_eigendecomposition():
    rng = np.random.default_rng(TEST_SEED)
    data = SpectralDataset(rng.normal(size=(12, 300)))
    model = fit_affine_set(data, 4)

    centered = data.pixels - data.pixels.mean(axis=1, keepdims=True)
    values, vectors = np.linalg.eigh(centered @ centered.T)
    leading = vectors[:, ::-1][:, :3]

    assert np.allclose(model.eigenvalues, values[::-1][:3])
    # Same subspace
    assert np.allclose(leading @ leading.T, model.basis @ model.basis.T, atol=1e-9)


def test_fit_is_deterministic():
    rng = np.random.default_rng(TEST_SEED)
    data = SpectralDataset(rng.uniform(size=(30, 400)))

    a = fit_affine_set(data, 5)
    b = fit_affine_set(data, 5)

    assert np.array_equal(a.basis, b.basis)
    assert np.array_equal(a.mean, b.mean)


def test_fit_rank_deficient_warns():
    rng = np.random.default_rng(TEST_SEED)
    # Two materials mixed, three requested
    spectra = random_spectra(10, 2, rng)
    data, _ = mixed_dataset(spectra, 100, rng)

    with pytest.warns(RankDeficientData):
        model = fit_affine_set(data, 3)

    assert model.rank_deficient


def test_fit_nearly_collinear_spectra_keeps_full_rank():
    rng = np.random.default_rng(TEST_SEED)
    spectra = random_spectra(10, 3, rng)
    spectra[:, 2] = spectra[:, 1] + 1e-6 * rng.uniform(0.5, 1.0, size=10)
    data, _ = mixed_dataset(spectra, 200, rng)

    model = fit_affine_set(data, 3)

    assert not model.rank_deficient


def test_project_preserves_distances():
    rng = np.random.default_rng(TEST_SEED)
    spectra = random_spectra(40, 4, rng)
    data, _ = mixed_dataset(spectra, 300, rng)
    model = fit_affine_set(data, 4)
    dr = project(data, model)

    assert dr.pixels.shape == (3, 300)
    assert np.allclose(dr.pixels.mean(axis=1), 0.0, atol=1e-8)

    for a, b in [(0, 1), (5, 17), (42, 299)]:
        spectral = np.linalg.norm(data.pixels[:, a] - data.pixels[:, b])
        reduced = np.linalg.norm(dr.pixels[:, a] - dr.pixels[:, b])
        assert reduced == pytest.approx(spectral, abs=1e-9)


def test_project_mean_is_origin():
    rng = np.random.default_rng(TEST_SEED)
    data = SpectralDataset(rng.uniform(size=(8, 50)))
    model = fit_affine_set(data, 3)

    single = project(SpectralDataset(model.mean.reshape(-1, 1)), model)
    assert np.allclose(single.pixels, 0.0, atol=1e-14)


def test_lift_round_trip():
    rng = np.random.default_rng(TEST_SEED)
    spectra = random_spectra(25, 3, rng)
    data, _ = mixed_dataset(spectra, 200, rng)
    model = fit_affine_set(data, 3)

    dr = project(data, model)

    assert np.allclose(lift(np.zeros(2), model), model.mean)
    assert np.allclose(lift(dr.points(), model).T, data.pixels, rtol=1e-8, atol=1e-12)
    # First N pixels are pure: lifting their DR coordinates gives the spectra back
    assert np.allclose(lift(dr.points(range(3)), model).T, spectra, atol=1e-8)


def test_dimension_mismatch():
    rng = np.random.default_rng(TEST_SEED)
    data = SpectralDataset(rng.uniform(size=(8, 50)))
    model = fit_affine_set(data, 3)

    with pytest.raises(DimensionMismatch):
        project(SpectralDataset(rng.uniform(size=(9, 5))), model)

    with pytest.raises(DimensionMismatch):
        lift(np.zeros(3), model)
