"""Distortion, divergence and filling experiments.

Each runner returns a SuiteReport like the verification suites and
takes every grid and resolution from the run configuration. Distances
in the rank-one table are in curvature -1 units, so the closed form
2 sinh(d / 2) applies.
"""

from __future__ import annotations

import json
import math
import time
from pathlib import Path
from typing import Callable

import numpy as np
import scipy.linalg

from horolab.core.config import RunConfig
from horolab.core.exceptions import ConfigurationError, ErrorContext, SchemaViolation
from horolab.experiments.reports import SuiteReport, atomic_write_text
from horolab.filling.divergence import flat_sphere_on_Z, mesh_distance, perpendicular_directions
from horolab.filling.omega import OmegaData
from horolab.filling.serialization import disk_to_json, dumps, omega_to_json, sphere_from_json
from horolab.filling.whitney import FilledDisk, HorosphereSphere, whitney_fill
from horolab.horosphere.context import HorosphereContext
from horolab.horosphere.retraction import retract_to_Z
from horolab.symspace.busemann import busemann
from horolab.symspace.points import Point, distance
from horolab.utilities import debug_print, fit_exponent, fit_line, make_rng

DISTORT_MODES = ("rank1", "rank2_paths")

# curvature -1 normalization of the SL(2) distance
_HYPERBOLIC_SCALE = math.sqrt(2.0)
# steps of the horocycle path, before Richardson extrapolation
_HOROCYCLE_STEPS = 2**20
# the antipodal in-Z distance must grow faster than linearly in r
MESH_EXPONENT_FLOOR = 1.2


def _timed(report: SuiteReport, start: float) -> SuiteReport:
    report.wall_time = time.perf_counter() - start
    return report


def _new_report(config: RunConfig, suite: str) -> SuiteReport:
    return SuiteReport(suite, config.n, config.seed, config.tau_entries)


def horocycle_point(s: float) -> Point:
    """[u_s] with u_s = [[1, s], [0, 1]], on the horocycle through [e]."""
    return Point.from_group(np.array([[1.0, s], [0.0, 1.0]]))


def horocycle_length(s: float, steps: int = _HOROCYCLE_STEPS) -> float:
    """Length of the horocycle from [e] to [u_s], in curvature -1 units.

    N acts by isometries, so the length of the inscribed polygon with m
    equal sides is m d([e], [u_(s/m)]). Its error is O(m^-2), and
    Richardson extrapolation from m and 2m removes that term.
    """
    base = Point.base(2)
    coarse = steps * distance(base, horocycle_point(s / steps))
    fine = 2 * steps * distance(base, horocycle_point(s / (2 * steps)))
    return _HYPERBOLIC_SCALE * (4.0 * fine - coarse) / 3.0


def distort_rank1(config: RunConfig) -> SuiteReport:
    """In-horocycle against ambient distance in SL(2).

    Raises:
        ConfigurationError: If n != 2.
    """
    if config.n != 2:
        raise ConfigurationError(
            f"The rank-one table needs n = 2, got n = {config.n}",
            context=ErrorContext(operation="cmd_distort"),
        )
    start = time.perf_counter()
    report = _new_report(config, "distort.rank1")
    base = Point.base(2)
    ambients, intrinsics = [], []
    for a in config.grid.rank1_ambient:
        s = 2.0 * math.sinh(a / 2.0)
        ambient = _HYPERBOLIC_SCALE * distance(base, horocycle_point(s))
        intrinsic = horocycle_length(s)
        ambients.append(ambient)
        intrinsics.append(intrinsic)
        closed = 2.0 * math.sinh(ambient / 2.0)
        report.add(
            f"distort.rank1.closed_form.a{a:g}",
            abs(intrinsic / closed - 1.0),
            1e-6,
            inputs=(a, s),
        )
    slope, _ = fit_line(ambients, np.log(intrinsics).tolist())
    report.fit("distort.rank1.log_slope", slope)
    report.add_within("distort.rank1.log_slope", slope, 0.5, 0.02, inputs=tuple(ambients))
    return _timed(report, start)


def _point_at_distance(rng: np.random.Generator, n: int, radius: float) -> Point:
    """[exp(S)] for a random trace-zero symmetric S with |S| = radius."""
    s = rng.standard_normal((n, n))
    s = (s + s.T) / 2.0
    s -= np.trace(s) / n * np.eye(n)
    s *= radius / float(np.linalg.norm(s))
    return Point.from_group(scipy.linalg.expm(s))


def distort_rank2_paths(
    config: RunConfig, progress: Callable[[str], None] | None = None
) -> SuiteReport:
    """Lengths of filled 0-spheres of Z against ambient distance.

    Raises:
        ConfigurationError: If n < 3.
    """
    if config.n < 3:
        raise ConfigurationError(
            f"Paths in Z are filled from rank 2 on, got n = {config.n}",
            context=ErrorContext(operation="cmd_distort"),
        )
    start = time.perf_counter()
    report = _new_report(config, "distort.rank2_paths")
    ctx = HorosphereContext.from_run(config)
    rng = make_rng([config.seed, 301])
    z1 = Point.base(config.n)
    ambients, lengths = [], []
    for a in config.grid.rank2_ambient:
        z2 = retract_to_Z(_point_at_distance(rng, config.n, a), ctx)
        alpha = HorosphereSphere(0, (z1, z2), ctx)
        disk = whitney_fill(
            alpha,
            config.calibration,
            config.grid,
            seed=int(rng.integers(2**32)),
            checks=config.samples.shadow_checks,
            progress=progress,
        )
        ambient = distance(z1, z2)
        ambients.append(ambient)
        lengths.append(disk.length)
        for record in disk.records:
            report.add_summary(record, tag=f"a{a:g}", inputs=(config.seed, a))
        report.add(
            f"distort.rank2.length_ratio.a{a:g}",
            disk.length / (ambient + 1.0),
            config.calibration.fill_cap,
            inputs=(config.seed, a, ambient),
        )
        debug_print(f"rank2_paths: ambient {ambient:.4g}, length {disk.length:.4g}")
    exponent = fit_exponent(ambients, lengths)
    report.fit("distort.rank2.log_log_slope", exponent)
    report.add_within(
        "distort.rank2.log_log_slope", exponent, 1.0, 0.2, inputs=(config.seed, *ambients)
    )
    return _timed(report, start)


def run_distort(
    config: RunConfig, mode: str, progress: Callable[[str], None] | None = None
) -> SuiteReport:
    """Dispatch a distortion mode.

    Raises:
        ConfigurationError: If the mode is unknown.
    """
    if mode == "rank1":
        return distort_rank1(config)
    if mode == "rank2_paths":
        return distort_rank2_paths(config, progress)
    raise ConfigurationError(
        f"Unknown distort mode {mode!r}; expected one of {', '.join(DISTORT_MODES)}",
        context=ErrorContext(operation="cmd_distort"),
    )


def run_divergence(config: RunConfig) -> SuiteReport:
    """Spheres cut out of Z by flats through points of growing height.

    Raises:
        ConfigurationError: If n < 3.
    """
    if config.n < 3:
        raise ConfigurationError(
            f"The divergence experiment needs n >= 3, got n = {config.n}",
            context=ErrorContext(operation="cmd_divergence"),
        )
    start = time.perf_counter()
    report = _new_report(config, "divergence")
    ctx = HorosphereContext.from_run(config)
    tau = ctx.tau.v
    radii = list(config.grid.divergence_radii)
    ratios, antipodal, ambient = [], [], []
    for r in radii:
        x = Point.from_group(np.diag(np.exp(r * tau)))
        cycle = flat_sphere_on_Z(x, ctx, seed=config.seed, samples=config.grid.cycle_samples)
        level = max(abs(busemann(z, ctx.cfg)) for z in cycle.points)
        report.add(f"divergence.level_set.r{r:g}", level, 1e-7, inputs=(config.seed, r))
        ratios.append(cycle.lipschitz / r)
        report.fit(f"divergence.lipschitz_ratio.r{r:g}", cycle.lipschitz / r)
        if config.n == 3:
            far = cycle.antipode(0)
            antipodal.append(
                mesh_distance(
                    cycle.points[0],
                    cycle.points[far],
                    ctx,
                    steps=config.grid.mesh_steps,
                    levels=config.grid.mesh_levels,
                )
            )
            ambient.append(distance(cycle.points[0], cycle.points[far]))
            report.fit(f"divergence.mesh_distance.r{r:g}", antipodal[-1])
    report.add(
        "divergence.lipschitz_ratio_spread",
        max(ratios) / min(ratios),
        2.0,
        inputs=(config.seed, *radii),
    )
    if antipodal:
        exponent = fit_exponent(radii, antipodal)
        report.fit("divergence.mesh_exponent", exponent)
        report.add(
            "divergence.mesh_exponent",
            exponent,
            MESH_EXPONENT_FLOOR,
            passed=exponent > MESH_EXPONENT_FLOOR,
            inputs=(config.seed, *radii),
        )
        report.fit("divergence.ambient_exponent", fit_exponent(radii, ambient))
    return _timed(report, start)


def _fill_report(
    report: SuiteReport, disk: FilledDisk, od: OmegaData, config: RunConfig, tag: str = ""
) -> None:
    for record in (*disk.records, *od.records):
        report.add_summary(record, tag=tag, inputs=(config.seed,))


def run_fill(
    config: RunConfig,
    input_path: str | Path,
    output_path: str | Path,
    progress: Callable[[str], None] | None = None,
) -> SuiteReport:
    """Fill the sphere of a horolab.sphere/1 file and write the disk.

    Also writes the Omega data as fill.omega.json into out_dir.

    Raises:
        ConfigurationError: If the input cannot be read or does not fit the run.
        SchemaViolation: If the input is not a valid sphere document.
    """
    start = time.perf_counter()
    try:
        text = Path(input_path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read sphere file {input_path}: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaViolation(f"{input_path} is not JSON: {e}", "$") from e
    ctx = HorosphereContext.from_run(config)
    alpha = sphere_from_json(doc, ctx)
    od = OmegaData(
        alpha.points,
        ctx,
        config.calibration,
        seed=config.seed,
        checks=config.samples.shadow_checks,
        resolution=config.grid.cone_resolution,
    )
    disk = whitney_fill(
        alpha,
        config.calibration,
        config.grid,
        od=od,
        seed=config.seed,
        checks=config.samples.shadow_checks,
        progress=progress,
    )
    atomic_write_text(output_path, dumps(disk_to_json(disk, config.n)))
    atomic_write_text(Path(config.out_dir) / "fill.omega.json", dumps(omega_to_json(od)))
    report = _new_report(config, "fill")
    _fill_report(report, disk, od, config)
    report.fit("fill.lipschitz", disk.lipschitz)
    report.fit("fill.sphere_lipschitz", alpha.lipschitz())
    return _timed(report, start)


def circle_in_flat(ctx: HorosphereContext, radius: float, vertices: int = 8) -> HorosphereSphere:
    """A round loop of the standard flat inside Z, with Lipschitz constant about radius."""
    basis = perpendicular_directions(ctx.tau.v)
    points = []
    for j in range(vertices):
        theta = 2.0 * math.pi * j / vertices
        w = radius * (math.cos(theta) * basis[:, 0] + math.sin(theta) * basis[:, 1])
        points.append(Point.from_group(np.diag(np.exp(w))))
    return HorosphereSphere(1, tuple(points), ctx)


def run_fill_sweep(
    config: RunConfig, progress: Callable[[str], None] | None = None
) -> SuiteReport:
    """Fill round loops of growing size and fit the drift of C_fill.

    Raises:
        ConfigurationError: If n < 4.
    """
    if config.n < 4:
        raise ConfigurationError(
            f"Loops in Z are filled from rank 3 on, got n = {config.n}",
            context=ErrorContext(operation="cmd_fill"),
        )
    start = time.perf_counter()
    report = _new_report(config, "fill.sweep")
    ctx = HorosphereContext.from_run(config)
    sizes, constants = [], []
    for radius in config.grid.fill_lipschitz:
        alpha = circle_in_flat(ctx, radius)
        od = OmegaData(
            alpha.points,
            ctx,
            config.calibration,
            seed=config.seed,
            checks=config.samples.shadow_checks,
            resolution=config.grid.cone_resolution,
        )
        disk = whitney_fill(
            alpha,
            config.calibration,
            config.grid,
            od=od,
            seed=config.seed,
            checks=config.samples.shadow_checks,
            progress=progress,
        )
        _fill_report(report, disk, od, config, tag=f"L{radius:g}")
        lip_alpha = alpha.lipschitz()
        sizes.append(lip_alpha)
        constants.append(disk.lipschitz / (lip_alpha + 1.0))
        report.fit(f"fill.sweep.c_fill.L{radius:g}", constants[-1])
    drift = fit_exponent(sizes, constants)
    report.fit("fill.sweep.c_fill_slope", drift)
    report.add_within("fill.sweep.c_fill_slope", drift, 0.0, 0.2, inputs=(config.seed, *sizes))
    return _timed(report, start)


__all__ = [
    "DISTORT_MODES",
    "circle_in_flat",
    "distort_rank1",
    "distort_rank2_paths",
    "horocycle_length",
    "horocycle_point",
    "run_distort",
    "run_divergence",
    "run_fill",
    "run_fill_sweep",
]
