"""Exception hierarchy for horolab.

All horolab exceptions inherit from HorolabError, so a single except
clause catches every failure raised by the geometry kernel, the filling
constructions, or the experiment runner.

Exception Hierarchy:
    HorolabError
    ├── ConfigurationError     - Rejected configuration (exit 2)
    │   ├── NotRegular
    │   ├── NotRegularDirection
    │   └── DegenerateChamber
    ├── CalibrationFailure     - A calibrated constant is too small (exit 2)
    │   ├── ExhaustedTries
    │   └── MembershipViolation
    ├── NumericalFailure       - A numerical routine did not deliver (exit 3)
    │   ├── SingularInput
    │   ├── NonConvergence
    │   ├── NoCrossing
    │   └── ResolutionExceeded
    ├── GeometryError          - Violated geometric precondition (exit 3)
    │   ├── NotOpposite
    │   ├── NotInFlat
    │   └── MissingRepresentative
    └── SchemaViolation        - Malformed input file (exit 4)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, ClassVar


@dataclass
class ErrorContext:
    """Context information for error messages.

    Names the operation that failed and, for verification failures, the
    lemma and numbered property being checked together with the measured
    diagnostics.
    """

    operation: str
    lemma: str | None = None
    property_id: str | None = None
    detail: dict[str, Any] = field(default_factory=dict)

    def format_location(self) -> str:
        """Format the lemma/property location for display."""
        if self.lemma and self.property_id:
            return f"{self.lemma} ({self.property_id})"
        elif self.lemma:
            return self.lemma
        return "<unknown>"

    def format_context(self) -> str:
        """Format the full context for display."""
        parts = [f"Operation: {self.operation}"]
        if self.lemma:
            parts.append(f"Lemma: {self.format_location()}")
        for key in sorted(self.detail):
            parts.append(f"{key}: {self.detail[key]}")
        return "\n  ".join(parts)


class HorolabError(Exception):
    """Base exception for all horolab errors.

        try:
            report = run_suite(config, "compare")
        except HorolabError as e:
            sys.exit(e.exit_code)

    Attributes:
        message: The error message.
        context: Optional context about where the error occurred.
        exit_code: Process exit code used by the command line runner.
    """

    exit_code: ClassVar[int] = 3

    def __init__(
        self,
        message: str,
        context: ErrorContext | None = None,
    ) -> None:
        self.message = message
        self.context = context
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        """Format the complete error message with context."""
        if self.context is None:
            return self.message

        return f"{self.message}\n\n  {self.context.format_context()}"


class ConfigurationError(HorolabError):
    """Rejected run or model configuration.

    Examples:
        - Sample count below 1
        - Unknown suite name
        - Matrix size below 2
    """

    exit_code = 2


class NotRegular(ConfigurationError):
    """A Cartan vector is not strictly decreasing.

    Raised by kappa and by every operation that needs a direction in the
    open standard chamber, including tau validation.
    """


class NotRegularDirection(ConfigurationError):
    """A boundary direction cannot be used as a ray target.

    Raised for zero or non trace-zero directions.
    """


class DegenerateChamber(ConfigurationError):
    """The angular margin between the standard chamber and tau vanishes."""


class CalibrationFailure(HorolabError):
    """A sampled post-condition failed at the calibrated constants.

    The context names the lemma and the failing property so callers can
    retry with larger constants.
    """

    exit_code = 2


class ExhaustedTries(CalibrationFailure):
    """Random search gave up before finding a certified object."""


class MembershipViolation(CalibrationFailure):
    """A pair (sigma, x) left the admissible set Y(rho)."""


class NumericalFailure(HorolabError):
    """A numerical routine failed to produce a trustworthy value."""

    exit_code = 3


class SingularInput(NumericalFailure):
    """A factorization pivot underflowed."""


class NonConvergence(NumericalFailure):
    """An iterative minimization stalled above tolerance."""


class NoCrossing(NumericalFailure):
    """A ray failed to reach the horosphere before the search horizon."""


class ResolutionExceeded(NumericalFailure):
    """A decomposition needed more cells than the configured budget."""


class GeometryError(HorolabError):
    """A geometric precondition does not hold for the given input."""

    exit_code = 3


class NotOpposite(GeometryError):
    """Two chambers are not in general position."""


class NotInFlat(GeometryError):
    """A boundary point does not lie at infinity of the given flat."""


class MissingRepresentative(GeometryError):
    """An operation needs a group representative the point does not carry."""


class SchemaViolation(HorolabError):
    """An input document does not match its versioned schema.

    Example:
        # horolab fill --input sphere.json
        # Raises: SchemaViolation("missing key 'vertices'")
    """

    exit_code = 4

    def __init__(
        self,
        message: str,
        path: str | None = None,
        context: ErrorContext | None = None,
    ) -> None:
        self.path = path
        super().__init__(message, context)


__all__ = [
    "CalibrationFailure",
    "ConfigurationError",
    "DegenerateChamber",
    "ErrorContext",
    "ExhaustedTries",
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
    "NumericalFailure",
    "ResolutionExceeded",
    "SchemaViolation",
    "SingularInput",
]
