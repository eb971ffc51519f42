"""Matrix groups, Cartan vectors, roots and the Iwasawa decomposition of SL(n, R)."""

from horolab.liecore.algebra import (
    CartanVector,
    Root,
    barycenter,
    conjugate_by_exp,
    d_N,
    extreme_ray_array,
    extreme_rays,
    kappa,
    nilpotent_exp,
    nilpotent_log,
    positive_roots,
    random_chamber_direction,
    random_unipotent,
)
from horolab.liecore.groups import (
    IwasawaFactors,
    Orthogonal,
    PositiveDiagonal,
    SpecialLinear,
    UnitUpper,
    iwasawa_arrays,
    iwasawa_nak,
    random_rotation,
    random_special_linear,
)

__all__ = [
    "CartanVector",
    "IwasawaFactors",
    "Orthogonal",
    "PositiveDiagonal",
    "Root",
    "SpecialLinear",
    "UnitUpper",
    "barycenter",
    "conjugate_by_exp",
    "d_N",
    "extreme_ray_array",
    "extreme_rays",
    "iwasawa_arrays",
    "iwasawa_nak",
    "kappa",
    "nilpotent_exp",
    "nilpotent_log",
    "positive_roots",
    "random_chamber_direction",
    "random_rotation",
    "random_special_linear",
    "random_unipotent",
]
