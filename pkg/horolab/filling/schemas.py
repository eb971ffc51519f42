"""Versioned JSON schemas of the horolab file formats.

Each document kind is a pydantic model. Numbers are strict: a JSON
boolean is never an integer, and NaN or infinity is never a number.
Unknown keys are ignored.

Example:
    doc = json.loads(path.read_text())
    validate(doc, SphereDocument)
"""

from __future__ import annotations

from typing import Annotated, Any, Literal, Optional, TypeVar, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    StrictBool,
    StrictInt,
    StrictStr,
    ValidationError,
)

from horolab.core.exceptions import SchemaViolation

SPHERE_ID = "horolab.sphere/1"
DISK_ID = "horolab.disk/1"
OMEGA_ID = "horolab.omega/1"
REPORT_ID = "horolab.report/1"
LOCK_ID = "horolab.lock/1"

Number = Annotated[float, Field(strict=True, allow_inf_nan=False)]
Vector = Annotated[list[Number], Field(min_length=1)]
Matrix = Annotated[list[Vector], Field(min_length=1)]

DocumentT = TypeVar("DocumentT", bound="Document")


class Document(BaseModel):
    """Base of all horolab documents and their nested entries."""

    model_config = ConfigDict(extra="ignore", frozen=True)


class RecordEntry(Document):
    """A sample summary; non-finite measurements are written as null."""

    name: StrictStr
    measured: Optional[Number]
    bound: Number
    count: StrictInt
    passed: StrictBool = Field(alias="pass")
    detail: Optional[dict[str, Any]] = None


class SphereDocument(Document):
    """A sphere in Z given by group representatives of its vertices."""

    schema_id: Literal["horolab.sphere/1"] = Field(alias="schema")
    n: StrictInt
    dimension: Literal[0, 1]
    points: Annotated[list[Matrix], Field(min_length=2)]
    tau: Optional[Vector] = None
    comment: Optional[StrictStr] = None


class DiskDocument(Document):
    schema_id: Literal["horolab.disk/1"] = Field(alias="schema")
    n: StrictInt
    dimension: Literal[0, 1]
    half_width: Number
    vertices: list[Vector]
    values: list[Matrix]
    simplices: list[list[StrictInt]]
    lipschitz: Number
    length: Number
    records: list[RecordEntry]


class FaceEntry(Document):
    face: Annotated[list[StrictInt], Field(min_length=1)]
    anchor: Matrix
    height: Number
    apex_frame: Matrix
    apex_direction: Vector


class OmegaDocument(Document):
    schema_id: Literal["horolab.omega/1"] = Field(alias="schema")
    n: StrictInt
    vertices: Annotated[list[Matrix], Field(min_length=1)]
    faces: list[FaceEntry]
    records: list[RecordEntry]


class CheckEntry(Document):
    check_id: StrictStr
    digest: StrictStr
    measured: Optional[Number]
    bound: Number
    passed: StrictBool = Field(alias="pass")


class FitEntry(Document):
    name: StrictStr
    value: Number
    low: Number
    high: Number


class ReportDocument(Document):
    schema_id: Literal["horolab.report/1"] = Field(alias="schema")
    suite: StrictStr
    n: StrictInt
    seed: StrictInt
    tau: Vector
    checks: list[CheckEntry]
    fits: list[FitEntry]


class LockEntry(Document):
    n: StrictInt
    tau: Vector
    constants: dict[str, Any]


class LockDocument(Document):
    schema_id: Literal["horolab.lock/1"] = Field(alias="schema")
    entries: list[LockEntry]


SCHEMAS: dict[str, type[Document]] = {
    SPHERE_ID: SphereDocument,
    DISK_ID: DiskDocument,
    OMEGA_ID: OmegaDocument,
    REPORT_ID: ReportDocument,
    LOCK_ID: LockDocument,
}


def error_path(loc: tuple[Union[int, str], ...]) -> str:
    """JSON path of a pydantic error location, such as $.points[1][2][0]."""
    return "$" + "".join(f"[{part}]" if isinstance(part, int) else f".{part}" for part in loc)


def validate(doc: Any, model: type[DocumentT]) -> DocumentT:
    """Check a parsed JSON document against a document model.

    Args:
        doc: The parsed document.
        model: One of the document models of this module.

    Returns:
        The validated model.

    Raises:
        SchemaViolation: At the first mismatch, with its path.
    """
    try:
        return model.model_validate(doc)
    except ValidationError as e:
        first = e.errors()[0]
        path = error_path(tuple(first["loc"]))
        raise SchemaViolation(f"{path}: {first['msg']}", path) from e


def validate_document(doc: Any) -> str:
    """Validate a document against the schema its 'schema' key names.

    Returns:
        The schema identifier.

    Raises:
        SchemaViolation: If the identifier is unknown or the document mismatches.
    """
    if not isinstance(doc, dict) or "schema" not in doc:
        raise SchemaViolation("$: document has no 'schema' key", "$.schema")
    schema_id = doc["schema"]
    if schema_id not in SCHEMAS:
        raise SchemaViolation(f"$.schema: unknown schema {schema_id!r}", "$.schema")
    validate(doc, SCHEMAS[schema_id])
    return str(schema_id)


__all__ = [
    "DISK_ID",
    "LOCK_ID",
    "OMEGA_ID",
    "REPORT_ID",
    "SCHEMAS",
    "SPHERE_ID",
    "CheckEntry",
    "DiskDocument",
    "Document",
    "FaceEntry",
    "FitEntry",
    "LockDocument",
    "LockEntry",
    "OmegaDocument",
    "RecordEntry",
    "ReportDocument",
    "SphereDocument",
    "error_path",
    "validate",
    "validate_document",
]
