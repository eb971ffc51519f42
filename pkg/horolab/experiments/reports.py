"""Suite reports and their CSV and JSON files.

A report holds one CheckRecord per check and one FitRecord per fitted
constant. Files are written to a temporary sibling and renamed into
place, so a failed run never leaves a partial file. Wall time is kept
on the object for display only; it is never written.

Example:
    report = SuiteReport("dil", n=2, seed=0, tau=(0.7071, -0.7071))
    report.add("dil.exact", measured=3e-14, bound=1e-10, inputs=(t,))
    write_report(report, "horolab-out")
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from horolab.core.exceptions import ConfigurationError, ErrorContext, SchemaViolation
from horolab.core.records import SampleSummary
from horolab.filling.schemas import REPORT_ID, ReportDocument, validate
from horolab.filling.serialization import dumps
from horolab.utilities import digest

CSV_COLUMNS = ("suite", "check_id", "n", "seed", "measured", "bound", "pass")


def format_float(value: float) -> str:
    """Fixed 12 significant digits, so reruns give identical text."""
    return f"{value:.12g}"


@dataclass(frozen=True)
class CheckRecord:
    """One measured check.

    Attributes:
        check_id: Identifier, unique within the suite.
        digest: Digest of the check inputs.
        measured: Measured value.
        bound: Value the measurement is compared against.
        passed: Outcome.
    """

    check_id: str
    digest: str
    measured: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class FitRecord:
    """A fitted constant and its interval."""

    name: str
    value: float
    low: float
    high: float


@dataclass
class SuiteReport:
    """Checks and fits of one suite run.

    Attributes:
        suite: Suite or experiment name.
        n: Matrix size.
        seed: Root seed.
        tau: Unit tau entries.
        checks: Check records, in run order.
        fits: Fitted constants.
        wall_time: Seconds taken; not part of any file.
    """

    suite: str
    n: int
    seed: int
    tau: tuple[float, ...]
    checks: list[CheckRecord] = field(default_factory=list)
    fits: list[FitRecord] = field(default_factory=list)
    wall_time: float | None = None

    @property
    def failed_count(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def passed(self) -> bool:
        return self.failed_count == 0

    def add(
        self,
        check_id: str,
        measured: float,
        bound: float,
        *,
        passed: bool | None = None,
        inputs: Sequence[Any] = (),
    ) -> CheckRecord:
        """Append a check; by default it passes when measured <= bound."""
        measured = float(measured)
        bound = float(bound)
        ok = bool(measured <= bound) if passed is None else bool(passed)
        record = CheckRecord(check_id, digest(check_id, *inputs), measured, bound, ok)
        self.checks.append(record)
        return record

    def add_summary(
        self, summary: SampleSummary, *, tag: str = "", inputs: Sequence[Any] = ()
    ) -> CheckRecord:
        """Append a SampleSummary as a check, its id suffixed by tag."""
        return self.add(
            f"{summary.name}.{tag}" if tag else summary.name,
            summary.measured,
            summary.bound,
            passed=summary.passed,
            inputs=(summary.count, *inputs),
        )

    def add_within(
        self,
        check_id: str,
        value: float,
        target: float,
        tolerance: float,
        *,
        inputs: Sequence[Any] = (),
    ) -> CheckRecord:
        """Append the check |value - target| <= tolerance."""
        return self.add(check_id, abs(value - target), tolerance, inputs=(value, target, *inputs))

    def fit(
        self, name: str, value: float, low: float | None = None, high: float | None = None
    ) -> FitRecord:
        record = FitRecord(
            name,
            float(value),
            float(value if low is None else low),
            float(value if high is None else high),
        )
        self.fits.append(record)
        return record

    def extend(self, other: SuiteReport) -> None:
        """Merge the checks and fits of a sub-run."""
        self.checks.extend(other.checks)
        self.fits.extend(other.fits)

    def to_json(self) -> dict[str, Any]:
        return {
            "schema": REPORT_ID,
            "suite": self.suite,
            "n": self.n,
            "seed": self.seed,
            "tau": list(self.tau),
            "checks": [
                {
                    "check_id": c.check_id,
                    "digest": c.digest,
                    "measured": c.measured if math.isfinite(c.measured) else None,
                    "bound": c.bound,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "fits": [
                {"name": f.name, "value": f.value, "low": f.low, "high": f.high}
                for f in self.fits
            ],
        }

    def csv_rows(self) -> Iterable[tuple[str, ...]]:
        for c in self.checks:
            yield (
                self.suite,
                c.check_id,
                str(self.n),
                str(self.seed),
                format_float(c.measured),
                format_float(c.bound),
                "true" if c.passed else "false",
            )

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(self.csv_rows())
        return buffer.getvalue()

    @classmethod
    def from_json(cls, doc: Any) -> SuiteReport:
        """Rebuild a report from its JSON document.

        Raises:
            SchemaViolation: If doc does not match horolab.report/1.
        """
        validate(doc, ReportDocument)
        checks = [
            CheckRecord(
                c["check_id"],
                c["digest"],
                math.inf if c["measured"] is None else float(c["measured"]),
                float(c["bound"]),
                c["pass"],
            )
            for c in doc["checks"]
        ]
        fits = [FitRecord(f["name"], f["value"], f["low"], f["high"]) for f in doc["fits"]]
        return cls(doc["suite"], doc["n"], doc["seed"], tuple(doc["tau"]), checks, fits)


def atomic_write_text(path: str | Path, text: str) -> Path:
    """Write text to path through a temporary file in the same directory.

    Raises:
        ConfigurationError: If the directory cannot be created or written.
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as e:
        raise ConfigurationError(
            f"Cannot write {target}: {e}",
            context=ErrorContext(operation="atomic_write_text"),
        ) from e
    return target


def write_report(report: SuiteReport, out_dir: str | Path) -> tuple[Path, Path]:
    """Write <suite>.csv and <suite>.json into out_dir."""
    out = Path(out_dir)
    csv_path = atomic_write_text(out / f"{report.suite}.csv", report.to_csv())
    json_path = atomic_write_text(out / f"{report.suite}.json", dumps(report.to_json()))
    return csv_path, json_path


def read_report(path: str | Path) -> SuiteReport:
    """Load and validate a JSON report.

    Raises:
        ConfigurationError: If the file cannot be read.
        SchemaViolation: If it is not JSON or not a report.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read report {path}: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaViolation(f"{path} is not JSON: {e}", "$") from e
    return SuiteReport.from_json(doc)


__all__ = [
    "CSV_COLUMNS",
    "CheckRecord",
    "FitRecord",
    "SuiteReport",
    "atomic_write_text",
    "format_float",
    "read_report",
    "write_report",
]
