"""Utility functions for horolab debugging, seeding and fitting.

Example:
    from horolab import load_config, run_suite, explain

    report = run_suite(load_config(), "dil")
    print(explain(report))
"""

from __future__ import annotations

import hashlib
import os
import sys
from typing import TYPE_CHECKING, Any, Sequence

import numpy as np

if TYPE_CHECKING:
    from horolab.experiments.reports import SuiteReport


# Environment variable for debug output
HOROLAB_DEBUG_VAR = "HOROLAB_DEBUG"


def is_debug_enabled() -> bool:
    """Check if HOROLAB_DEBUG environment variable is set.

    Returns:
        True if HOROLAB_DEBUG is set to a truthy value (1, true, yes, on).
    """
    value = os.environ.get(HOROLAB_DEBUG_VAR, "").lower()
    return value in ("1", "true", "yes", "on")


def debug_print(*args: Any, **kwargs: Any) -> None:
    """Print debug output if HOROLAB_DEBUG is enabled.

    Args:
        *args: Arguments to print.
        **kwargs: Keyword arguments for print.
    """
    if is_debug_enabled():
        print("[horolab]", *args, file=sys.stderr, **kwargs)


def make_rng(seed: int | Sequence[int] | np.random.SeedSequence) -> np.random.Generator:
    """Return a PCG64 generator for a seed, a seed tuple or a seed sequence."""
    return np.random.default_rng(seed)


def spawn_rngs(seed: int | Sequence[int], count: int) -> list[np.random.Generator]:
    """Partition a root seed into independent generators.

    Parallel or sequential consumers each take one child; results depend
    only on (seed, index).
    """
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def digest(*values: Any) -> str:
    """Short stable digest of the inputs of a check."""
    h = hashlib.sha256()
    for value in values:
        if isinstance(value, np.ndarray):
            h.update(np.ascontiguousarray(value, dtype=float).tobytes())
        else:
            h.update(repr(value).encode())
    return h.hexdigest()[:16]


def fit_line(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Least-squares fit y = slope * x + intercept.

    Returns:
        (slope, intercept)
    """
    slope, intercept = np.polyfit(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), 1)
    return float(slope), float(intercept)


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of log y against log x."""
    slope, _ = fit_line(np.log(np.asarray(xs, dtype=float)), np.log(np.asarray(ys, dtype=float)))
    return slope


def bootstrap_slope(
    xs: Sequence[float],
    ys: Sequence[float],
    rng: np.random.Generator,
    *,
    rounds: int = 200,
    level: float = 0.9,
) -> tuple[float, float, float]:
    """Least-squares slope with a percentile bootstrap interval.

    Resamples that hit a single distinct x are skipped.

    Returns:
        (slope, low, high)
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    slope, _ = fit_line(x, y)
    draws = []
    for _ in range(rounds):
        idx = rng.integers(0, x.size, size=x.size)
        if np.ptp(x[idx]) == 0:
            continue
        draws.append(fit_line(x[idx], y[idx])[0])
    if not draws:
        return slope, slope, slope
    tail = 50.0 * (1.0 - level)
    low, high = np.percentile(draws, [tail, 100.0 - tail])
    return slope, float(low), float(high)


def explain(report: SuiteReport, *, verbose: bool = False) -> str:
    """Return a human-readable summary of a suite report.

    Args:
        report: A finished suite report.
        verbose: If True, list every check, not only failures.

    Returns:
        Multi-line summary.
    """
    lines: list[str] = [
        f"Suite: {report.suite}",
        f"n: {report.n}  seed: {report.seed}",
        f"Checks: {len(report.checks)}  failed: {report.failed_count}",
    ]
    if report.wall_time is not None:
        lines.append(f"Wall time: {report.wall_time:.2f}s")

    if report.fits:
        lines.append("")
        lines.append("Fitted constants:")
        for fit in report.fits:
            lines.append(
                f"  {fit.name} = {fit.value:.6g}  [{fit.low:.6g}, {fit.high:.6g}]"
            )

    shown = report.checks if verbose else [c for c in report.checks if not c.passed]
    if shown:
        lines.append("")
        lines.append("Checks:" if verbose else "Failures:")
        for check in shown:
            mark = "ok" if check.passed else "FAIL"
            lines.append(
                f"  [{mark}] {check.check_id}: measured {check.measured:.6g}"
                f" bound {check.bound:.6g}"
            )

    return "\n".join(lines)


__all__ = [
    "HOROLAB_DEBUG_VAR",
    "bootstrap_slope",
    "debug_print",
    "digest",
    "explain",
    "fit_exponent",
    "fit_line",
    "is_debug_enabled",
    "make_rng",
    "spawn_rngs",
]
