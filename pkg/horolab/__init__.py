"""horolab - numerical verification of horosphere fillings.

Checks, one sampled inequality at a time, the geometric lemmas behind
filling spheres in a horosphere of the symmetric space SL(n, R)/SO(n),
and runs the distortion, divergence and filling experiments built on
them.

Basic usage:
    from horolab import explain, load_config, run_suite

    report = run_suite(load_config("horolab.toml"), "dil")
    print(explain(report))

CLI:
    $ horolab verify --suite iwasawa --config horolab.toml
    $ horolab distort --mode rank1
    $ horolab explain --report horolab-out/iwasawa.json
"""

from horolab._version import __version__
from horolab.core.config import Calibration, NumericPolicy, RunConfig, load_config
from horolab.core.exceptions import (
    CalibrationFailure,
    ConfigurationError,
    ErrorContext,
    GeometryError,
    HorolabError,
    NumericalFailure,
    SchemaViolation,
)
from horolab.experiments.calibration import apply_lock, calibrate, write_lock
from horolab.experiments.reports import SuiteReport, read_report, write_report
from horolab.experiments.runners import (
    run_distort,
    run_divergence,
    run_fill,
    run_fill_sweep,
)
from horolab.experiments.suites import SUITES, run_suite
from horolab.utilities import explain

__all__ = [
    "SUITES",
    "Calibration",
    "CalibrationFailure",
    "ConfigurationError",
    "ErrorContext",
    "GeometryError",
    "HorolabError",
    "NumericPolicy",
    "NumericalFailure",
    "RunConfig",
    "SchemaViolation",
    "SuiteReport",
    "__version__",
    "apply_lock",
    "calibrate",
    "explain",
    "load_config",
    "read_report",
    "run_distort",
    "run_divergence",
    "run_fill",
    "run_fill_sweep",
    "run_suite",
    "write_lock",
    "write_report",
]
