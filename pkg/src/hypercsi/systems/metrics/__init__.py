from hypercsi.systems.metrics.angles import (
    angle_matrix,
    evaluate,
    match_permutation,
    phi_ab,
    phi_en,
    spectral_angle,
)

__all__ = ["angle_matrix", "evaluate", "match_permutation", "phi_ab", "phi_en", "spectral_angle"]
