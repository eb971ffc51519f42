"""JSON documents for spheres, filled disks and Omega data.

Points are written as group representatives, row by row. Floats are
written by repr, keys sorted, so equal objects give equal bytes.
"""

from __future__ import annotations

import json
import math
from typing import Any, Sequence

import numpy as np

from horolab.core.exceptions import (
    ConfigurationError,
    ErrorContext,
    SchemaViolation,
    SingularInput,
)
from horolab.core.records import SampleSummary
from horolab.filling.omega import OmegaData
from horolab.filling.schemas import (
    DISK_ID,
    OMEGA_ID,
    SPHERE_ID,
    SphereDocument,
    validate,
)
from horolab.filling.whitney import FilledDisk, HorosphereSphere
from horolab.horosphere.context import HorosphereContext
from horolab.liecore.groups import SpecialLinear
from horolab.symspace.points import Point


def plain(value: Any) -> Any:
    """value with numpy scalars and arrays turned into JSON types."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def dumps(doc: Any) -> str:
    """Deterministic JSON text of a document, newline terminated.

    Raises:
        ValueError: If the document holds a NaN or an infinity.
    """
    return json.dumps(plain(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"


def point_to_json(x: Point) -> list[list[float]]:
    return plain(x.with_rep().g)


def point_from_json(rows: Sequence[Sequence[float]], n: int, path: str) -> Point:
    """A point from a representative, checking the shape.

    Raises:
        SchemaViolation: If the matrix is not n x n, not finite or singular.
    """
    g = np.asarray(rows, dtype=float)
    if g.shape != (n, n) or not np.all(np.isfinite(g)):
        raise SchemaViolation(f"{path}: expected a finite {n}x{n} matrix", path)
    try:
        rep = SpecialLinear.normalized(g)
    except SingularInput as e:
        raise SchemaViolation(f"{path}: singular matrix", path) from e
    return Point.from_group(rep)


def record_to_json(record: SampleSummary) -> dict[str, Any]:
    return {
        "name": record.name,
        "measured": record.measured if math.isfinite(record.measured) else None,
        "bound": record.bound,
        "count": record.count,
        "pass": record.passed,
        "detail": {
            k: v for k, v in record.detail.items() if not isinstance(v, float) or math.isfinite(v)
        },
    }


def sphere_to_json(alpha: HorosphereSphere) -> dict[str, Any]:
    return {
        "schema": SPHERE_ID,
        "n": alpha.ctx.n,
        "dimension": alpha.dimension,
        "tau": alpha.ctx.tau.v,
        "points": [point_to_json(z) for z in alpha.points],
    }


def sphere_from_json(doc: Any, ctx: HorosphereContext) -> HorosphereSphere:
    """Read a sphere document for the horosphere of ctx.

    Raises:
        SchemaViolation: If the document does not match horolab.sphere/1.
        ConfigurationError: If n or tau disagree with ctx, or a point is off Z.
    """
    validate(doc, SphereDocument)
    if doc["n"] != ctx.n:
        raise ConfigurationError(
            f"Sphere file is for n = {doc['n']}, the run has n = {ctx.n}",
            context=ErrorContext(operation="sphere_from_json"),
        )
    if "tau" in doc:
        tau = np.asarray(doc["tau"], dtype=float)
        if tau.shape != (ctx.n,) or not np.allclose(tau / np.linalg.norm(tau), ctx.tau.v):
            raise ConfigurationError(
                "Sphere file tau differs from the run tau",
                context=ErrorContext(operation="sphere_from_json", detail={"tau": doc["tau"]}),
            )
    points = tuple(
        point_from_json(rows, ctx.n, f"$.points[{i}]") for i, rows in enumerate(doc["points"])
    )
    return HorosphereSphere(doc["dimension"], points, ctx)


def disk_to_json(disk: FilledDisk, n: int) -> dict[str, Any]:
    return {
        "schema": DISK_ID,
        "n": n,
        "dimension": disk.dimension,
        "half_width": disk.half_width,
        "vertices": disk.vertices,
        "values": [point_to_json(x) for x in disk.values],
        "simplices": [list(s) for s in disk.simplices],
        "lipschitz": disk.lipschitz,
        "length": disk.length,
        "records": [record_to_json(r) for r in disk.records],
    }


def omega_to_json(od: OmegaData) -> dict[str, Any]:
    """Vertices, the anchor and height of every built face, and the records."""
    faces = []
    for face in sorted(od.faces, key=lambda f: (len(f), f)):
        data = od.faces[face]
        faces.append(
            {
                "face": list(face),
                "anchor": point_to_json(data.anchor),
                "height": data.height,
                "apex_frame": data.apex.frame.entries,
                "apex_direction": data.apex.direction.v,
            }
        )
    return {
        "schema": OMEGA_ID,
        "n": od.n,
        "vertices": [point_to_json(z) for z in od.points],
        "faces": faces,
        "records": [record_to_json(r) for r in od.records],
    }


__all__ = [
    "disk_to_json",
    "dumps",
    "omega_to_json",
    "plain",
    "point_from_json",
    "point_to_json",
    "record_to_json",
    "sphere_from_json",
    "sphere_to_json",
]
