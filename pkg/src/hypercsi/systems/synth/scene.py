"""
Synthetic scene assembly: spectra from a registered source, abundances from a
registered pattern, then additive Gaussian noise at a requested SNR.
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger

from hypercsi.cache import get_handler
from hypercsi.structures.dataset import SpectralDataset
from hypercsi.structures.enums import AbundancePattern, SpectraSource
from hypercsi.structures.errors import InvalidParameter
from hypercsi.systems.synth.scene_spec import SceneSpec

# Register the built-in sources and patterns
import hypercsi.systems.synth.patterns  # noqa: F401
import hypercsi.systems.synth.spectra  # noqa: F401


@dataclass(frozen=True)
class GroundTruth:
    """
    A generated scene.

    'spectra' is A (M x N), 'abundances' is S (N x L, one pixel per column),
    'noiseless' is exactly A S and 'observed' is the noisy, nonnegative data.
    'realized_snr_db' is None for noiseless scenes.
    """

    spec: SceneSpec
    spectra: np.ndarray
    abundances: np.ndarray
    noiseless: np.ndarray
    observed: np.ndarray
    sigma2: float
    realized_snr_db: float | None
    max_purity: float

    @property
    def abundance_rows(self) -> np.ndarray:
        """
        Abundances as L x N, one pixel per row.
        """
        return self.abundances.T

    def dataset(self) -> SpectralDataset:
        return SpectralDataset(self.observed, n_truth=self.spec.n_endmembers, name=f"scene-{self.spec.seed}")


def noise_variance(noiseless: np.ndarray, snr_db: float) -> float:
    """
    Per-entry noise variance giving the requested SNR:
    sigma^2 = sum_n ||x[n]||^2 / (10^(snr_db / 10) * M * L).
    """
    return float(np.sum(noiseless**2) / (10 ** (snr_db / 10) * noiseless.size))


def add_noise(
    noiseless: np.ndarray, snr_db: float | None, rng: np.random.Generator
) -> tuple[np.ndarray, float, float | None]:
    """
    Add i.i.d. zero-mean Gaussian noise and clip negatives to zero.

    Returns: (observed, sigma2, realized SNR in dB)
    """

    if snr_db is None:
        return noiseless.copy(), 0.0, None

    sigma2 = noise_variance(noiseless, snr_db)
    noise = rng.normal(0.0, np.sqrt(sigma2), size=noiseless.shape)
    noise_power = float(np.sum(noise**2))
    realized = float(10 * np.log10(np.sum(noiseless**2) / noise_power)) if noise_power > 0 else None

    return np.maximum(noiseless + noise, 0.0), sigma2, realized


def _build_scene(spec: SceneSpec, source: SpectraSource, pattern: AbundancePattern) -> GroundTruth:
    rng = np.random.default_rng(spec.seed)
    N = spec.n_endmembers

    spectra = get_handler("synth.spectra", source.value)(spec, rng)
    abundances = get_handler("synth.pattern", pattern.value)(spec, rng)

    if spec.include_pure_pixels:
        abundances[:, :N] = np.eye(N)

    noiseless = spectra @ abundances
    observed, sigma2, realized = add_noise(noiseless, spec.snr_db, rng)
    max_purity = float(np.max(np.linalg.norm(abundances, axis=0)))

    logger.info(
        f"[Synth] Scene M={spec.n_bands} L={spec.n_pixels} N={N} ({pattern.value}, {source.value}): "
        f"max purity {max_purity:.4f}, SNR {'inf' if realized is None else f'{realized:.2f} dB'}"
    )

    for array in (spectra, abundances, noiseless, observed):
        array.setflags(write=False)

    return GroundTruth(spec, spectra, abundances, noiseless, observed, sigma2, realized, max_purity)


def generate_scene(spec: SceneSpec, spectra_source: SpectraSource | str | None = None) -> GroundTruth:
    """
    Generate a scene with i.i.d. purity-limited Dirichlet abundances, unless the
    spec names another pattern.

    Args:
        spec: Scene parameters, including the seed
        spectra_source: Overrides spec.spectra_source

    Returns: The GroundTruth; identical specs give bit-identical scenes

    Raises:
        PurityInfeasible: The purity level rejects nearly every Dirichlet draw
        RankDeficientSpectra: The spectra lack full column rank
    """

    source = SpectraSource(spectra_source) if spectra_source is not None else spec.spectra_source

    if source == SpectraSource.USER_FILE and not spec.spectra_path:
        raise InvalidParameter("A user-file spectra source requires 'spectra_path'!")

    return _build_scene(spec, source, spec.pattern)


def generate_abundance_maps(spec: SceneSpec, pattern: AbundancePattern | str) -> GroundTruth:
    """
    Generate a scene using the given abundance pattern and the SceneSpec spectra source.
    """
    return _build_scene(spec, spec.spectra_source, AbundancePattern(pattern))
