"""Verification suites, experiment runners, calibration and reports."""

from horolab.experiments.calibration import (
    CALIBRATED,
    LOCK_NAME,
    MARGIN,
    apply_lock,
    bootstrap_max,
    calibrate,
    read_lock,
    write_lock,
)
from horolab.experiments.reports import (
    CSV_COLUMNS,
    CheckRecord,
    FitRecord,
    SuiteReport,
    atomic_write_text,
    format_float,
    read_report,
    write_report,
)
from horolab.experiments.runners import (
    DISTORT_MODES,
    circle_in_flat,
    distort_rank1,
    distort_rank2_paths,
    horocycle_length,
    horocycle_point,
    run_distort,
    run_divergence,
    run_fill,
    run_fill_sweep,
)
from horolab.experiments.suites import (
    SUITES,
    SuiteRegistry,
    point_at_height,
    run_suite,
    verify_busemann,
    verify_compare,
    verify_dil,
    verify_dxshadows,
    verify_iwasawa,
    verify_largeshadows,
    verify_omega_infty,
    verify_opposition,
    verify_pushing,
)

__all__ = [
    "CALIBRATED",
    "CSV_COLUMNS",
    "DISTORT_MODES",
    "LOCK_NAME",
    "MARGIN",
    "SUITES",
    "CheckRecord",
    "FitRecord",
    "SuiteRegistry",
    "SuiteReport",
    "apply_lock",
    "atomic_write_text",
    "bootstrap_max",
    "calibrate",
    "circle_in_flat",
    "distort_rank1",
    "distort_rank2_paths",
    "format_float",
    "horocycle_length",
    "horocycle_point",
    "point_at_height",
    "read_lock",
    "read_report",
    "run_distort",
    "run_divergence",
    "run_fill",
    "run_fill_sweep",
    "run_suite",
    "verify_busemann",
    "verify_compare",
    "verify_dil",
    "verify_dxshadows",
    "verify_iwasawa",
    "verify_largeshadows",
    "verify_omega_infty",
    "verify_opposition",
    "verify_pushing",
    "write_lock",
    "write_report",
]
