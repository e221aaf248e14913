from hypercsi.systems.geometry.hyperplane import (
    Hyperplane,
    as_points,
    normal_from_points_with_origin,
    normal_from_vertices,
    point_to_hyperplane_distance,
)
from hypercsi.systems.geometry.simplex import (
    facet_arrays,
    hyperplanes_from_vertices,
    is_affinely_independent,
    reconstruct_vertices,
    simplex_volume,
)

__all__ = [
    "Hyperplane",
    "as_points",
    "normal_from_points_with_origin",
    "normal_from_vertices",
    "point_to_hyperplane_distance",
    "facet_arrays",
    "hyperplanes_from_vertices",
    "is_affinely_independent",
    "reconstruct_vertices",
    "simplex_volume",
]
