"""The horolab command line.

Exit status:
    0  every check passed
    1  at least one check failed
    2  configuration or calibration error
    3  numerical failure or violated geometric precondition, including
       a linear algebra error or a non-finite value reaching a JSON file
    4  malformed input file
"""

from __future__ import annotations

import sys
from typing import Any, Literal, Optional, Sequence

import numpy as np

from horolab.cli.builder import ParserBuilder, build_command_config, split_namespace
from horolab.core.config import RunConfig, load_config
from horolab.core.exceptions import (
    ConfigurationError,
    ErrorContext,
    HorolabError,
    NumericalFailure,
)
from horolab.experiments.calibration import apply_lock, calibrate, write_lock
from horolab.experiments.reports import SuiteReport, read_report, write_report
from horolab.experiments.runners import (
    run_distort,
    run_divergence,
    run_fill,
    run_fill_sweep,
)
from horolab.experiments.suites import run_suite
from horolab.utilities import debug_print, explain


class Horolab:
    """Numerical verification of horosphere filling constructions in SL(n, R)/SO(n).

    Every command writes <suite>.csv and <suite>.json into the output
    directory and prints a summary.
    """

    def __init__(self, config: Optional[str] = None) -> None:
        """Set up a run.

        Args:
            config: TOML configuration file; defaults apply when omitted.
        """
        self.config_path = config
        self._config: RunConfig | None = None

    @property
    def run_config(self) -> RunConfig:
        """The loaded configuration with environment overrides and locked constants."""
        if self._config is None:
            self._config = apply_lock(load_config(self.config_path))
        return self._config

    def _finish(self, report: SuiteReport) -> SuiteReport:
        write_report(report, self.run_config.out_dir)
        print(explain(report))
        return report

    def verify(self, suite: str, calibrate: bool = False) -> SuiteReport:
        """Run a verification suite.

        Args:
            suite: Suite name, one of iwasawa, busemann, compare, dil,
                dxshadows, largeshadows, pushing, opposition, omega_infty.
            calibrate: Fit the calibrated constants first and store them in
                the lockfile of the output directory.
        """
        if calibrate:
            self._calibrate()
        return self._finish(run_suite(self.run_config, suite))

    def _calibrate(self) -> None:
        config = load_config(self.config_path)
        constants, report = calibrate(config)
        write_lock(config, constants)
        write_report(report, config.out_dir)
        debug_print(f"calibration written to {config.out_dir}")
        self._config = apply_lock(config)

    def distort(self, mode: Literal["rank1", "rank2_paths"]) -> SuiteReport:
        """Measure horosphere distortion.

        Args:
            mode: rank1 for the SL(2) horocycle table, rank2_paths for
                filled 0-spheres of growing size.
        """
        return self._finish(run_distort(self.run_config, mode, progress=debug_print))

    def divergence(self) -> SuiteReport:
        """Measure spheres cut out of the horosphere by flats of growing height."""
        return self._finish(run_divergence(self.run_config))

    def fill(
        self, input: Optional[str] = None, output: Optional[str] = None, sweep: bool = False
    ) -> SuiteReport:
        """Fill a horosphere sphere with a disk.

        Args:
            input: horolab.sphere/1 file to fill.
            output: Path of the horolab.disk/1 file to write.
            sweep: Fill round loops of growing size instead of an input file.
        """
        if sweep:
            return self._finish(run_fill_sweep(self.run_config, progress=debug_print))
        if input is None or output is None:
            raise ConfigurationError(
                "fill needs --input and --output unless --sweep is given",
                context=ErrorContext(operation="cmd_fill"),
            )
        return self._finish(run_fill(self.run_config, input, output, progress=debug_print))

    def explain(self, report: str, verbose: bool = False) -> None:
        """Summarize a written JSON report.

        Args:
            report: Path of a <suite>.json report.
            verbose: List every check, not only failures.
        """
        print(explain(read_report(report), verbose=verbose))


class CommandRunner:
    """Parses a command line and dispatches to a method of a command class."""

    def __init__(self, cls: type, *, prog: str | None = None) -> None:
        self._cls = cls
        self._builder = ParserBuilder(build_command_config(cls, prog=prog))

    @property
    def parser(self) -> Any:
        return self._builder.parser

    def run(self, args: Sequence[str] | None = None) -> Any:
        """Parse args and call the chosen method; print help when none is given."""
        namespace = self.parser.parse_args(None if args is None else list(args))
        debug_print(f"Parsed result: {namespace}")
        command, init_kwargs, method_kwargs = split_namespace(self._builder.config, namespace)
        if command is None:
            self.parser.print_help()
            return None
        instance = self._cls(**init_kwargs)
        return getattr(instance, command.replace("-", "_"))(**method_kwargs)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the horolab command line and return its exit status."""
    runner = CommandRunner(Horolab, prog="horolab")
    try:
        result = runner.run(argv)
    except HorolabError as e:
        print(f"horolab: error: {e}", file=sys.stderr)
        return e.exit_code
    except (np.linalg.LinAlgError, ValueError) as e:
        print(f"horolab: numerical error: {e}", file=sys.stderr)
        return NumericalFailure.exit_code
    if isinstance(result, SuiteReport) and not result.passed:
        return 1
    return 0


__all__ = ["CommandRunner", "Horolab", "main"]
