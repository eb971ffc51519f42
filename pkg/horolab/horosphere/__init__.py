"""The horosphere Z, its projections and the retraction onto it."""

from horolab.horosphere.context import (
    HorosphereContext,
    compute_margins,
    pushing_constant,
)
from horolab.horosphere.product import (
    ConePoint,
    YPoint,
    d_Y,
)
from horolab.horosphere.projection import (
    Projection,
    height_along,
    i_u,
    lipschitz_profile_i_u,
    project_to_Z,
    sample_shadow_pair,
    two_point_profile,
)
from horolab.horosphere.retraction import (
    point_near_Z,
    retract_array,
    retract_to_Z,
    retraction_lipschitz,
)

__all__ = [
    "ConePoint",
    "HorosphereContext",
    "Projection",
    "YPoint",
    "compute_margins",
    "d_Y",
    "height_along",
    "i_u",
    "lipschitz_profile_i_u",
    "point_near_Z",
    "project_to_Z",
    "pushing_constant",
    "retract_array",
    "retract_to_Z",
    "retraction_lipschitz",
    "sample_shadow_pair",
    "two_point_profile",
]
