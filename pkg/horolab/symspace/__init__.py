"""Points, geodesics, flats and the visual boundary of SL(n, R)/SO(n)."""

from horolab.symspace.boundary import (
    BoundaryPoint,
    Flat,
    Ray,
    cone_distance,
    cone_exp,
    flat_coordinates,
    ray_to_boundary,
    same_boundary_point,
    tits_angle_in_flat,
    visual_angle,
)
from horolab.symspace.busemann import (
    BusemannConfig,
    busemann,
    busemann_limit,
)
from horolab.symspace.points import (
    Point,
    distance,
    geodesic,
    geodesic_between,
    random_point,
    random_point_in_ball,
)

__all__ = [
    "BoundaryPoint",
    "BusemannConfig",
    "Flat",
    "Point",
    "Ray",
    "busemann",
    "busemann_limit",
    "cone_distance",
    "cone_exp",
    "distance",
    "flat_coordinates",
    "geodesic",
    "geodesic_between",
    "random_point",
    "random_point_in_ball",
    "ray_to_boundary",
    "same_boundary_point",
    "tits_angle_in_flat",
    "visual_angle",
]
