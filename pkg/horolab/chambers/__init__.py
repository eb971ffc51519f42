"""Chambers at infinity, Weyl chamber regions and shadows."""

from horolab.chambers.flags import (
    Chamber,
    are_opposite,
    boundary_chambers,
    canonical_unipotent,
    common_flat,
    find_opposite_flat,
    flat_spanned,
    longest_element,
    random_chamber,
    transversality_minors,
)
from horolab.chambers.regions import (
    WeylChamberRegion,
    distance_to_flat,
    distance_to_weyl_chamber,
    parabolic_rep,
    trace_zero_basis,
)
from horolab.chambers.shadows import (
    OppositeTemplate,
    ShadowQuery,
    chamber_with_housing,
    contract,
    enlarge,
    housing_unipotent,
    minimal_enlarge_time,
    opposite_chamber_for_shadow,
    random_chamber_in_shadow,
    random_point_in_dx,
    rho,
    translate_along,
    verify_dx_shadows,
)

__all__ = [
    "Chamber",
    "OppositeTemplate",
    "ShadowQuery",
    "WeylChamberRegion",
    "are_opposite",
    "boundary_chambers",
    "canonical_unipotent",
    "chamber_with_housing",
    "common_flat",
    "contract",
    "distance_to_flat",
    "distance_to_weyl_chamber",
    "enlarge",
    "find_opposite_flat",
    "flat_spanned",
    "housing_unipotent",
    "longest_element",
    "minimal_enlarge_time",
    "opposite_chamber_for_shadow",
    "parabolic_rep",
    "random_chamber",
    "random_chamber_in_shadow",
    "random_point_in_dx",
    "rho",
    "trace_zero_basis",
    "translate_along",
    "transversality_minors",
    "verify_dx_shadows",
]
