"""Exceptions, numeric policy and run configuration."""

from horolab.core.config import (
    OUT_VAR,
    SEED_VAR,
    Calibration,
    ExperimentGrid,
    NumericPolicy,
    RunConfig,
    SampleCounts,
    apply_environment,
    barycenter_entries,
    config_from_mapping,
    load_config,
    validate_tau,
)
from horolab.core.exceptions import (
    CalibrationFailure,
    ConfigurationError,
    DegenerateChamber,
    ErrorContext,
    ExhaustedTries,
    GeometryError,
    HorolabError,
    MembershipViolation,
    MissingRepresentative,
    NoCrossing,
    NonConvergence,
    NotInFlat,
    NotOpposite,
    NotRegular,
    NotRegularDirection,
    NumericalFailure,
    ResolutionExceeded,
    SchemaViolation,
    SingularInput,
)
from horolab.core.records import (
    SampleSummary,
)

__all__ = [
    "OUT_VAR",
    "SEED_VAR",
    "Calibration",
    "CalibrationFailure",
    "ConfigurationError",
    "DegenerateChamber",
    "ErrorContext",
    "ExhaustedTries",
    "ExperimentGrid",
    "GeometryError",
    "HorolabError",
    "MembershipViolation",
    "MissingRepresentative",
    "NoCrossing",
    "NonConvergence",
    "NotInFlat",
    "NotOpposite",
    "NotRegular",
    "NotRegularDirection",
    "NumericPolicy",
    "NumericalFailure",
    "ResolutionExceeded",
    "RunConfig",
    "SampleCounts",
    "SampleSummary",
    "SchemaViolation",
    "SingularInput",
    "apply_environment",
    "barycenter_entries",
    "config_from_mapping",
    "load_config",
    "validate_tau",
]
