from hypercsi.systems.csi.abundance import AbundanceMatrix, estimate_abundance_map, estimate_abundances
from hypercsi.systems.csi.endmembers import EndmemberEstimate, reconstruct_endmembers, shift_factor
from hypercsi.systems.csi.hyperplanes import (
    HyperplaneSet,
    estimate_constant,
    estimate_hyperplanes,
    estimate_normal,
    estimate_normal_naive,
)
from hypercsi.systems.csi.pipeline import HyperCSI, unmix
from hypercsi.systems.csi.regions import SearchRegions, build_regions

__all__ = [
    "AbundanceMatrix",
    "estimate_abundance_map",
    "estimate_abundances",
    "EndmemberEstimate",
    "reconstruct_endmembers",
    "shift_factor",
    "HyperplaneSet",
    "estimate_constant",
    "estimate_hyperplanes",
    "estimate_normal",
    "estimate_normal_naive",
    "HyperCSI",
    "unmix",
    "SearchRegions",
    "build_regions",
]
