from hypercsi.systems.oracle.references import (
    brute_force_permutation,
    enclosure_excess,
    fcls_solve,
    max_volume_subset,
    min_volume_check,
)

__all__ = ["brute_force_permutation", "enclosure_excess", "fcls_solve", "max_volume_subset", "min_volume_check"]
