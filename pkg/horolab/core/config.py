"""Configuration dataclasses for horolab runs.

These records hold every tolerance, sample count, calibrated constant
and experiment grid a run depends on. A run is fully determined by its
RunConfig and seed.

Example:
    config = load_config("horolab.toml")
    config = replace(config, seed=7)
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from horolab.core.exceptions import ConfigurationError, ErrorContext, NotRegular

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib


# Environment variables allowed to override the file
SEED_VAR = "HOROLAB_SEED"
OUT_VAR = "HOROLAB_OUT"


@dataclass(frozen=True)
class NumericPolicy:
    """Every numerical tolerance used by the kernel.

    Attributes:
        construction: Invariant tolerance for validated types.
        reconstruction: Relative Frobenius error allowed in multiply-back.
        trace: Trace-zero tolerance for Cartan vectors.
        regularity: Minimal gap between consecutive Cartan entries.
        transversality: Threshold on normalized flag minors.
        level_set: Tolerance on h = 0 for horosphere points.
        bisection: Target bracket width of the crossing search.
        descent: Stall tolerance of the flat-distance minimizations.
        multistarts: Number of starts for the flat-distance minimizations.
        condition_warning: Condition number above which Iwasawa warns.
    """

    construction: float = 1e-9
    reconstruction: float = 1e-10
    trace: float = 1e-12
    regularity: float = 1e-9
    transversality: float = 1e-10
    level_set: float = 1e-8
    bisection: float = 1e-10
    descent: float = 1e-6
    multistarts: int = 8
    condition_warning: float = 1e12


@dataclass(frozen=True)
class Calibration:
    """Constants standing in for the existential constants of the lemmas.

    Attributes:
        c_compare: Slope cap for log rho against flat distance.
        c_enlarge: Ray length per unit radius when enlarging shadows.
        rho_star: Uniform shadow radius for points of D_x; also the radius
            of the admissible set Y(rho).
        c_pushing: max d([e],[n]) over d_N(n) <= 1; None means estimate it.
        pushing_cap: Cap C in Lip(i_u) <= C (rho+1)^2 h(u).
        two_point_cap: Cap on the two-variable pushing ratio.
        omega_cap: Cap C for anchor distances d(x_delta, V(delta)).
        fill_cap: Cap C_fill for filled disks.
        exploded_collar: Collar width of the exploded simplex.
        shadow_rho: Shadow radius rho used when sampling Sigma_u(rho).
    """

    c_compare: float = 3.0
    c_enlarge: float = 4.0
    rho_star: float = 4.0
    c_pushing: float | None = None
    pushing_cap: float = 4.0
    two_point_cap: float = 4.0
    omega_cap: float = 8.0
    fill_cap: float = 60.0
    exploded_collar: float = 1.0 / 3.0
    shadow_rho: float = 1.0

    def __post_init__(self) -> None:
        """Validate calibration constants."""
        for f in fields(self):
            value = getattr(self, f.name)
            if value is not None and not value > 0:
                raise ConfigurationError(
                    f"Calibration constant {f.name} must be positive, got {value!r}"
                )
        if not self.exploded_collar < 1:
            raise ConfigurationError("exploded_collar must lie in (0, 1)")


@dataclass(frozen=True)
class SampleCounts:
    """Per-suite sample counts."""

    iwasawa: int = 1000
    busemann: int = 100
    lipschitz_pairs: int = 10000
    compare: int = 500
    dil: int = 20
    dxshadows: int = 1000
    largeshadows: int = 32
    pushing: int = 500
    opposition: int = 10000
    shadow_checks: int = 64
    omega_edges: int = 50
    omega_triangles: int = 20
    property_grid: int = 20

    def __post_init__(self) -> None:
        """Validate sample counts."""
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise ConfigurationError(
                    f"Sample count {f.name} must be at least 1",
                    context=ErrorContext(operation="SampleCounts"),
                )


@dataclass(frozen=True)
class ExperimentGrid:
    """Grids and resolutions for the distortion, divergence and fill runs.

    Attributes:
        rank1_ambient: Ambient separations for the rank-one table.
        rank2_ambient: Ambient separations for the rank-two path table.
        divergence_radii: Heights r of the flat spheres.
        pushing_heights: Heights h(u) for the pushing regression.
        enlarge_radii: Radii for the shadow enlargement regression.
        fill_lipschitz: Loop Lipschitz constants for the m = 1 fill run.
        cycle_samples: Boundary directions per flat sphere.
        cone_resolution: Samples per arc and per radial step of cones.
        disk_resolution: Grid points per side when measuring disks.
        whitney_depth: Maximal quadtree depth of the Whitney decomposition.
        whitney_budget: Maximal number of Whitney cells.
        mesh_levels: A-levels of the divergence ladder mesh.
        mesh_steps: N-steps of the divergence ladder mesh.
    """

    rank1_ambient: tuple[float, ...] = (2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0)
    rank2_ambient: tuple[float, ...] = (2.0, 4.0, 8.0, 14.0, 20.0)
    divergence_radii: tuple[float, ...] = (2.0, 4.0, 8.0)
    pushing_heights: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)
    enlarge_radii: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)
    fill_lipschitz: tuple[float, ...] = (1.0, 2.0, 4.0)
    cycle_samples: int = 64
    cone_resolution: int = 8
    disk_resolution: int = 17
    whitney_depth: int = 4
    whitney_budget: int = 4096
    mesh_levels: int = 41
    mesh_steps: int = 81


def barycenter_entries(n: int) -> tuple[float, ...]:
    """Entries of the unit barycenter direction of the standard chamber.

    The barycenter is the normalized sum of the unit extreme rays of the
    closed chamber of strictly decreasing trace-zero diagonals.
    """
    total = [0.0] * n
    for j in range(1, n):
        ray = [(n - j) / n] * j + [-j / n] * (n - j)
        norm = math.sqrt(sum(v * v for v in ray))
        total = [t + v / norm for t, v in zip(total, ray)]
    norm = math.sqrt(sum(v * v for v in total))
    return tuple(v / norm for v in total)


def validate_tau(tau: tuple[float, ...], n: int, policy: NumericPolicy) -> tuple[float, ...]:
    """Check tau is a regular descending trace-zero direction and normalize it.

    Raises:
        NotRegular: If tau is not strictly decreasing.
        ConfigurationError: If tau has the wrong length or a nonzero trace.
    """
    context = ErrorContext(operation="validate_tau", detail={"tau": tau})
    if len(tau) != n:
        raise ConfigurationError(f"tau must have {n} entries, got {len(tau)}", context)
    norm = math.sqrt(sum(v * v for v in tau))
    if norm == 0:
        raise NotRegular("tau must be nonzero", context)
    unit = tuple(v / norm for v in tau)
    if abs(sum(unit)) > 1e-9:
        raise ConfigurationError("tau must be trace-zero", context)
    gaps = [unit[i] - unit[i + 1] for i in range(n - 1)]
    if min(gaps) <= policy.regularity:
        raise NotRegular("tau must be strictly decreasing", context)
    return unit


@dataclass(frozen=True)
class RunConfig:
    """Complete description of an experiment run.

    Attributes:
        n: Matrix size, n = rank + 1.
        tau: Entries of the tau direction; defaults to the chamber barycenter.
        seed: Root seed of every random stream in the run.
        samples: Per-suite sample counts.
        policy: Numerical tolerances.
        calibration: Calibrated constants.
        grid: Experiment grids and resolutions.
        out_dir: Directory receiving CSV and JSON outputs.
    """

    n: int = 3
    tau: tuple[float, ...] | None = None
    seed: int = 0
    samples: SampleCounts = field(default_factory=SampleCounts)
    policy: NumericPolicy = field(default_factory=NumericPolicy)
    calibration: Calibration = field(default_factory=Calibration)
    grid: ExperimentGrid = field(default_factory=ExperimentGrid)
    out_dir: str = "horolab-out"

    def __post_init__(self) -> None:
        """Validate and normalize the configuration."""
        if self.n < 2:
            raise ConfigurationError(f"n must be at least 2, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be a 64-bit value, got {self.seed}")
        tau = self.tau if self.tau is not None else barycenter_entries(self.n)
        object.__setattr__(self, "tau", validate_tau(tuple(tau), self.n, self.policy))

    @property
    def tau_entries(self) -> tuple[float, ...]:
        """The validated unit tau entries."""
        assert self.tau is not None
        return self.tau


def _section(
    cls: type[Any], data: Mapping[str, Any] | None, name: str
) -> Any:
    """Build a frozen section dataclass from a TOML table."""
    if not data:
        return cls()
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigurationError(
            f"Unknown keys in [{name}]: {', '.join(sorted(unknown))}"
        )
    values = {
        key: tuple(value) if isinstance(value, list) else value
        for key, value in data.items()
    }
    return cls(**values)


def config_from_mapping(data: Mapping[str, Any]) -> RunConfig:
    """Build a RunConfig from a parsed configuration mapping.

    Args:
        data: Mapping with top-level keys and section tables.

    Returns:
        The validated configuration.

    Raises:
        ConfigurationError: On unknown keys or invalid values.
    """
    top = {"n", "tau", "seed", "out_dir", "samples", "tolerances", "calibration", "experiments"}
    unknown = set(data) - top
    if unknown:
        raise ConfigurationError(f"Unknown configuration keys: {', '.join(sorted(unknown))}")

    tau = data.get("tau")
    return RunConfig(
        n=int(data.get("n", 3)),
        tau=tuple(float(v) for v in tau) if tau is not None else None,
        seed=int(data.get("seed", 0)),
        samples=_section(SampleCounts, data.get("samples"), "samples"),
        policy=_section(NumericPolicy, data.get("tolerances"), "tolerances"),
        calibration=_section(Calibration, data.get("calibration"), "calibration"),
        grid=_section(ExperimentGrid, data.get("experiments"), "experiments"),
        out_dir=str(data.get("out_dir", "horolab-out")),
    )


def apply_environment(
    config: RunConfig, environ: Mapping[str, str] | None = None
) -> RunConfig:
    """Apply the HOROLAB_SEED and HOROLAB_OUT overrides."""
    env = os.environ if environ is None else environ
    changes: dict[str, Any] = {}
    if env.get(SEED_VAR):
        try:
            changes["seed"] = int(env[SEED_VAR], 0)
        except ValueError as e:
            raise ConfigurationError(f"{SEED_VAR} is not an integer: {env[SEED_VAR]!r}") from e
    if env.get(OUT_VAR):
        changes["out_dir"] = env[OUT_VAR]
    return replace(config, **changes) if changes else config


def load_config(
    path: str | Path | None = None,
    environ: Mapping[str, str] | None = None,
) -> RunConfig:
    """Load a TOML configuration file and apply environment overrides.

    Args:
        path: Configuration file; None gives the defaults.
        environ: Environment mapping (defaults to os.environ).

    Returns:
        The validated configuration.
    """
    data: dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as e:
            raise ConfigurationError(f"Cannot read configuration {path}: {e}") from e
        except tomllib.TOMLDecodeError as e:
            raise ConfigurationError(f"Malformed configuration {path}: {e}") from e
    return apply_environment(config_from_mapping(data), environ)


__all__ = [
    "OUT_VAR",
    "SEED_VAR",
    "Calibration",
    "ExperimentGrid",
    "NumericPolicy",
    "RunConfig",
    "SampleCounts",
    "apply_environment",
    "barycenter_entries",
    "config_from_mapping",
    "load_config",
    "validate_tau",
]
