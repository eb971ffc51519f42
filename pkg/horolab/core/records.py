"""Sampled measurement records shared by the geometry verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class SampleSummary:
    """Outcome of a sampled verification.

    Attributes:
        name: Identifier of the measured quantity.
        measured: Worst value over the samples.
        bound: Value the measurement is compared against.
        count: Number of samples taken.
        passed: Whether the measurement respects the bound.
        detail: Extra diagnostics (fitted constants, argmax inputs).
    """

    name: str
    measured: float
    bound: float
    count: int
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def at_most(
        cls, name: str, measured: float, bound: float, count: int, **detail: Any
    ) -> SampleSummary:
        """Summary that passes when measured <= bound."""
        return cls(name, float(measured), float(bound), count, bool(measured <= bound), detail)


__all__ = ["SampleSummary"]
