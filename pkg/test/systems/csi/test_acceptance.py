"""
Statistical end-to-end checks over many generated scenes. Run with --runslow.
"""

from timeit import default_timer

import numpy as np
import pytest

from hypercsi.systems.csi import build_regions, estimate_hyperplanes, unmix
from hypercsi.systems.dimred import fit_affine_set, project
from hypercsi.systems.geometry import is_affinely_independent
from hypercsi.systems.metrics import phi_en
from hypercsi.systems.spa import select_purest
from hypercsi.systems.synth import SceneSpec, generate_scene

from .. import TEST_SEED

pytestmark = pytest.mark.slow


def mean_phi_en(n_trials: int, **spec_kwargs) -> float:
    errors = []
    for trial in range(n_trials):
        truth = generate_scene(SceneSpec(seed=TEST_SEED + trial, **spec_kwargs))
        endmembers, _, _ = unmix(truth.dataset(), truth.spec.n_endmembers, no_shift=spec_kwargs.get("snr_db") is None)
        errors.append(phi_en(truth.spectra, endmembers.spectra))
    return float(np.mean(errors))


def test_identifiability_improves_with_pixels():
    means = [mean_phi_en(20, n_bands=224, n_pixels=n_pixels, n_endmembers=4) for n_pixels in (100, 1000, 10000)]

    assert means[0] > means[1] > means[2]
    assert means[2] < 0.5


def test_mixed_scene_ballpark():
    common = dict(n_bands=224, n_pixels=10000, n_endmembers=6)

    errors = {}
    for rho in (0.8, 1.0):
        for snr in (20.0, 40.0):
            errors[rho, snr] = mean_phi_en(20, purity_rho=rho, snr_db=snr, **common)

    assert errors[1.0, 40.0] <= 0.6
    assert errors[0.8, 20.0] <= 3.5
    for rho in (0.8, 1.0):
        assert errors[rho, 40.0] < errors[rho, 20.0]


def test_active_sets_are_affinely_independent():
    rng = np.random.default_rng(TEST_SEED)

    for trial in range(500):
        n = int(rng.integers(3, 9))
        truth = generate_scene(SceneSpec(n_bands=40, n_pixels=2000, n_endmembers=n, seed=trial))
        data = truth.dataset()

        model = fit_affine_set(data, n)
        dr = project(data, model)
        purest = select_purest(dr, n)
        planes = estimate_hyperplanes(dr, build_regions(dr, purest), dr.points(purest))

        for active in planes.active_pixels:
            assert is_affinely_independent(dr.points(active))


def test_spectra_nonnegative_across_noise_grid():
    for rho in (0.8, 0.9, 1.0):
        for snr in (20.0, 30.0, 40.0):
            truth = generate_scene(
                SceneSpec(n_bands=224, n_pixels=10000, n_endmembers=6, purity_rho=rho, snr_db=snr, seed=TEST_SEED)
            )
            endmembers, _, diagnostics = unmix(truth.dataset(), 6)

            assert diagnostics.clamped_entries == 0
            assert endmembers.spectra.min() >= 0


def test_runtime_scales_linearly_in_pixels():
    def median_seconds(n_pixels: int) -> float:
        data = generate_scene(SceneSpec(n_bands=224, n_pixels=n_pixels, n_endmembers=6, snr_db=30.0)).dataset()
        times = []
        for _ in range(5):
            start = default_timer()
            unmix(data, 6)
            times.append(default_timer() - start)
        return float(np.median(times))

    base = median_seconds(10000)
    doubled = median_seconds(20000)

    assert base < 1.0
    assert 1.4 <= doubled / base <= 2.8
