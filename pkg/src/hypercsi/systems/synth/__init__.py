from hypercsi.systems.synth.dirichlet import sample_dirichlet
from hypercsi.systems.synth.patterns import block_sparse, iid_dirichlet, lag_one_autocorrelation, purity_limited_pool
from hypercsi.systems.synth.scene import (
    GroundTruth,
    add_noise,
    generate_abundance_maps,
    generate_scene,
    noise_variance,
)
from hypercsi.systems.synth.scene_spec import SceneSpec
from hypercsi.systems.synth.spectra import random_smooth_spectra

__all__ = [
    "sample_dirichlet",
    "block_sparse",
    "iid_dirichlet",
    "lag_one_autocorrelation",
    "purity_limited_pool",
    "GroundTruth",
    "add_noise",
    "generate_abundance_maps",
    "generate_scene",
    "noise_variance",
    "SceneSpec",
    "random_smooth_spectra",
]
