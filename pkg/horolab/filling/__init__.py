"""Spheres in Z, the exploded complex, Omega and the Whitney filling."""

from horolab.filling.divergence import (
    FlatCycle,
    flat_sphere_on_Z,
    mesh_distance,
    perpendicular_directions,
    sphere_directions,
    stored_opposite_flat,
)
from horolab.filling.exploded import (
    CellCoordinates,
    ExplodedCell,
    ExplodedComplex,
    Face,
    barycenter_of_face,
    build_exploded,
    faces_of,
    maximal_chains,
)
from horolab.filling.omega import (
    ConingMap,
    FaceData,
    OmegaData,
    build_F,
    build_omega_infty,
    omega,
    simplex_grid,
    subdivision_chains,
)
from horolab.filling.schemas import (
    DISK_ID,
    LOCK_ID,
    OMEGA_ID,
    REPORT_ID,
    SCHEMAS,
    SPHERE_ID,
    DiskDocument,
    LockDocument,
    OmegaDocument,
    ReportDocument,
    SphereDocument,
    validate,
    validate_document,
)
from horolab.filling.serialization import (
    disk_to_json,
    dumps,
    omega_to_json,
    plain,
    point_from_json,
    point_to_json,
    record_to_json,
    sphere_from_json,
    sphere_to_json,
)
from horolab.filling.spheres import (
    PiecewiseGeodesicSphere,
    ShadowCone,
    contract_in_shadow,
    geodesic_in_flat,
    interior_direction,
    slerp,
)
from horolab.filling.whitney import (
    FilledDisk,
    HorosphereSphere,
    Triangulation,
    WhitneyCell,
    triangulate,
    whitney_cells,
    whitney_fill,
)

__all__ = [
    "DISK_ID",
    "LOCK_ID",
    "OMEGA_ID",
    "REPORT_ID",
    "SCHEMAS",
    "SPHERE_ID",
    "CellCoordinates",
    "ConingMap",
    "DiskDocument",
    "ExplodedCell",
    "ExplodedComplex",
    "Face",
    "FaceData",
    "FilledDisk",
    "FlatCycle",
    "HorosphereSphere",
    "LockDocument",
    "OmegaData",
    "OmegaDocument",
    "PiecewiseGeodesicSphere",
    "ReportDocument",
    "ShadowCone",
    "SphereDocument",
    "Triangulation",
    "WhitneyCell",
    "barycenter_of_face",
    "build_F",
    "build_exploded",
    "build_omega_infty",
    "contract_in_shadow",
    "disk_to_json",
    "dumps",
    "faces_of",
    "flat_sphere_on_Z",
    "geodesic_in_flat",
    "interior_direction",
    "maximal_chains",
    "mesh_distance",
    "omega",
    "omega_to_json",
    "perpendicular_directions",
    "plain",
    "point_from_json",
    "point_to_json",
    "record_to_json",
    "simplex_grid",
    "slerp",
    "sphere_directions",
    "sphere_from_json",
    "sphere_to_json",
    "stored_opposite_flat",
    "subdivision_chains",
    "triangulate",
    "validate",
    "validate_document",
    "whitney_cells",
    "whitney_fill",
]
