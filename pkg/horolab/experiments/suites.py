"""Verification suites and their registry.

Every suite is a function (config, report) -> None that appends checks
and fits to the report. Random streams are derived from (seed, suite
tag) only, so a rerun with the same configuration reproduces every
number. Suites that compare two seeds spawn two children of that
stream.

Example:
    report = run_suite(load_config(), "busemann")
    print(report.failed_count)
"""

from __future__ import annotations

import math
import time
from typing import Callable

import numpy as np

from horolab.chambers.flags import (
    Chamber,
    are_opposite,
    boundary_chambers,
    canonical_unipotent,
    find_opposite_flat,
    flat_spanned,
    longest_element,
    random_chamber,
)
from horolab.chambers.regions import distance_to_flat, parabolic_rep
from horolab.chambers.shadows import (
    chamber_with_housing,
    contract,
    enlarge,
    minimal_enlarge_time,
    opposite_chamber_for_shadow,
    random_chamber_in_shadow,
    rho,
    translate_along,
    verify_dx_shadows,
)
from horolab.core.config import NumericPolicy, RunConfig
from horolab.core.exceptions import ConfigurationError, ErrorContext, GeometryError
from horolab.experiments.reports import SuiteReport
from horolab.filling.omega import build_omega_infty
from horolab.horosphere.context import HorosphereContext, pushing_constant
from horolab.horosphere.projection import (
    lipschitz_profile_i_u,
    project_to_Z,
    sample_shadow_pair,
    two_point_profile,
)
from horolab.horosphere.retraction import retract_to_Z, retraction_lipschitz
from horolab.liecore.algebra import (
    CartanVector,
    conjugate_by_exp,
    d_N,
    kappa,
    nilpotent_exp,
    nilpotent_log,
    random_chamber_direction,
    random_unipotent,
)
from horolab.liecore.groups import (
    SpecialLinear,
    UnitUpper,
    iwasawa_nak,
    random_special_linear,
)
from horolab.symspace.boundary import Flat
from horolab.symspace.busemann import BusemannConfig, busemann, busemann_limit
from horolab.symspace.points import Point, distance, random_point, random_point_in_ball
from horolab.utilities import (
    bootstrap_slope,
    debug_print,
    fit_exponent,
    fit_line,
    make_rng,
    spawn_rngs,
)

Suite = Callable[[RunConfig, SuiteReport], None]

# Stream tags keep the suites statistically independent under one seed
_TAGS = {
    "iwasawa": 101,
    "busemann": 102,
    "compare": 103,
    "dil": 104,
    "dxshadows": 105,
    "largeshadows": 106,
    "pushing": 107,
    "opposition": 108,
    "omega_infty": 109,
}


class SuiteRegistry:
    """Registry of verification suites by name.

    Example:
        registry = SuiteRegistry()

        @registry.suite("iwasawa")
        def verify_iwasawa(config, report): ...

        registry.get("iwasawa")(config, report)
    """

    def __init__(self) -> None:
        self._suites: dict[str, Suite] = {}

    def register(self, name: str, suite: Suite) -> None:
        """Register a suite; a second registration under a name replaces the first."""
        self._suites[name] = suite

    def suite(self, name: str) -> Callable[[Suite], Suite]:
        """Decorator registering a suite function under name."""

        def decorator(func: Suite) -> Suite:
            self.register(name, func)
            return func

        return decorator

    def get(self, name: str) -> Suite:
        """Look up a suite.

        Raises:
            ConfigurationError: If no suite has that name.
        """
        try:
            return self._suites[name]
        except KeyError:
            raise ConfigurationError(
                f"Unknown suite {name!r}; expected one of {', '.join(self.names())}",
                context=ErrorContext(operation="run_suite"),
            ) from None

    def names(self) -> list[str]:
        return list(self._suites)

    def __contains__(self, name: object) -> bool:
        return name in self._suites

    def __len__(self) -> int:
        return len(self._suites)

    def __repr__(self) -> str:
        return f"<SuiteRegistry({len(self._suites)} suites)>"


SUITES = SuiteRegistry()


def _stream(config: RunConfig, suite: str) -> np.random.Generator:
    return make_rng([config.seed, _TAGS[suite]])


def _halves(config: RunConfig, suite: str) -> list[np.random.Generator]:
    """Two independent children of the suite stream."""
    return spawn_rngs([config.seed, _TAGS[suite]], 2)


def _tau(config: RunConfig) -> CartanVector:
    return CartanVector(np.asarray(config.tau_entries))


def _relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def _add_slope_fit(
    report: SuiteReport, name: str, xs: list[float], ys: list[float], rng: np.random.Generator
) -> float:
    slope, low, high = bootstrap_slope(xs, ys, rng)
    report.fit(name, slope, low, high)
    return slope


@SUITES.suite("iwasawa")
def verify_iwasawa(config: RunConfig, report: SuiteReport) -> None:
    """Iwasawa reconstruction, the nilpotent exp/log pair and conjugation by A."""
    rng = _stream(config, "iwasawa")
    n, count, policy = config.n, config.samples.iwasawa, config.policy
    recon = roundtrip = conj = gauge = 0.0
    signs = [np.diag(rng.choice([-1.0, 1.0], size=n)) for _ in range(4)]
    for _ in range(count):
        g = random_special_linear(rng, n)
        factors = iwasawa_nak(g, policy)
        recon = max(
            recon,
            float(np.linalg.norm(factors.reconstruct() - g.entries) / np.linalg.norm(g.entries)),
        )

        u = random_unipotent(rng, n)
        back = nilpotent_exp(nilpotent_log(u))
        roundtrip = max(roundtrip, float(np.max(np.abs(back.entries - u.entries))))

        v = random_chamber_direction(rng, n)
        t = float(rng.uniform(0.0, 3.0))
        brute = np.diag(np.exp(-t * v.v)) @ u.entries @ np.diag(np.exp(t * v.v))
        fast = conjugate_by_exp(v, t, u).entries
        conj = max(conj, float(np.max(np.abs(fast - brute)) / max(1.0, float(np.max(np.abs(brute))))))

        size = d_N(u)
        for s in signs:
            flipped = UnitUpper(s @ u.entries @ s)
            gauge = max(gauge, abs(d_N(flipped) - size))

    inputs = (config.seed, n, count)
    report.add("iwasawa.reconstruction", recon, policy.reconstruction, inputs=inputs)
    report.add("iwasawa.nilpotent_roundtrip", roundtrip, 1e-12, inputs=inputs)
    report.add("iwasawa.conjugate_by_exp", conj, 1e-10, inputs=inputs)
    report.add("iwasawa.d_N_sign_invariance", gauge, 1e-12, inputs=inputs)


@SUITES.suite("busemann")
def verify_busemann(config: RunConfig, report: SuiteReport) -> None:
    """Iwasawa formula against the limit definition, 1-Lipschitz, normalization."""
    rng = _stream(config, "busemann")
    cfg = BusemannConfig.from_run(config)
    tau = cfg.tau_direction.v
    n = config.n

    worst = 0.0
    for _ in range(config.samples.busemann):
        x = random_point(rng, n, 1.0)
        shift = float(rng.uniform(-5.0, 5.0)) - busemann(x, cfg)
        moved = Point.from_group(parabolic_rep(x) * np.exp(shift * tau)[None, :])
        worst = max(worst, abs(busemann(moved, cfg) - busemann_limit(moved, cfg, t=200.0)))
    report.add(
        "busemann.limit_agreement", worst, 1e-4, inputs=(config.seed, config.samples.busemann)
    )

    excess = -math.inf
    for _ in range(config.samples.lipschitz_pairs):
        x = random_point(rng, n, 2.0)
        y = random_point_in_ball(rng, x, 1.0)
        excess = max(excess, abs(busemann(x, cfg) - busemann(y, cfg)) - distance(x, y))
    report.add(
        "busemann.lipschitz_excess",
        excess,
        1e-8,
        inputs=(config.seed, config.samples.lipschitz_pairs),
    )

    report.add("busemann.base_point", abs(busemann(Point.base(n), cfg)), config.policy.level_set)
    ray = max(
        abs(busemann(Point.from_group(np.diag(np.exp(t * tau))), cfg) - t)
        for t in (1.0, 5.0, 10.0, 50.0)
    )
    report.add("busemann.central_ray", ray, 1e-9)


@SUITES.suite("compare")
def verify_compare(config: RunConfig, report: SuiteReport) -> None:
    """Shadow radius against the distance to the flat E_d.

    The forward direction is checked on every sample; the reverse one is
    a linear fit of log rho against the distance, done separately on two
    seed halves and compared.
    """
    n, policy = config.n, config.policy
    bound = config.calibration.c_compare
    halves = _halves(config, "compare")
    per_half = max(2, config.samples.compare // 2)
    excess = -math.inf
    slopes = []
    for index, rng in enumerate(halves):
        dists: list[float] = []
        logs: list[float] = []
        for _ in range(per_half):
            x = random_point(rng, n, 2.0)
            r = float(rng.uniform(0.1, 3.0))
            d = random_chamber_in_shadow(rng, x, r)
            query = rho(x, d, policy)
            flat = Flat(SpecialLinear(canonical_unipotent(d, policy).entries))
            gap = distance_to_flat(x, flat, policy, rng)
            excess = max(excess, gap - query.rho)
            if query.rho > 0:
                dists.append(gap)
                logs.append(math.log(query.rho))
        slope = _add_slope_fit(report, f"compare.reverse_slope.{index}", dists, logs, rng)
        slopes.append(slope)
        report.add(
            f"compare.reverse_slope_positive.{index}",
            -slope,
            0.0,
            passed=slope > 0,
            inputs=(config.seed, index, per_half),
        )
        report.add(
            f"compare.reverse_slope_cap.{index}", slope, bound, inputs=(config.seed, index)
        )
    report.add(
        "compare.forward", excess, 1e-6, inputs=(config.seed, 2 * per_half)
    )
    report.add(
        "compare.reverse_stability",
        _relative_gap(slopes[0], slopes[1]),
        0.25,
        inputs=(config.seed, *slopes),
    )

    rng = _stream(config, "compare")
    sizes: list[float] = []
    spans: list[float] = []
    base = Point.base(n)
    for _ in range(config.samples.compare):
        u = random_unipotent(rng, n, target_dN=math.exp(float(rng.uniform(-1.0, 4.0))))
        sizes.append(math.log(d_N(u)))
        spans.append(distance(base, Point.from_group(u.entries)))
    slope = _add_slope_fit(report, "compare.lmr_slope", spans, sizes, rng)
    _, intercept = fit_line(spans, sizes)
    report.fit("compare.lmr_intercept", intercept)
    report.add(
        "compare.lmr_slope_positive",
        -slope,
        0.0,
        passed=slope > 0,
        inputs=(config.seed, config.samples.compare),
    )


@SUITES.suite("dil")
def verify_dil(config: RunConfig, report: SuiteReport) -> None:
    """Contraction of shadow radii along the Weyl chamber."""
    rng = _stream(config, "dil")
    n, policy = config.n, config.policy
    times = [0.5 * j for j in range(1, 21)]
    if n == 2:
        v = CartanVector(np.array([1.0, -1.0]) / math.sqrt(2.0))
        worst = 0.0
        for _ in range(config.samples.dil):
            x = random_point(rng, n, 2.0)
            d = random_chamber_in_shadow(rng, x, 1.0)
            start = rho(x, d, policy).rho
            for t in times:
                exact = math.exp(-math.sqrt(2.0) * t) * start
                worst = max(worst, abs(contract(x, v, t, d, policy) - exact) / start)
        report.add("dil.exact_rank1", worst, 1e-10, inputs=(config.seed, config.samples.dil))
    else:
        drift = 0.0
        for _ in range(config.samples.dil):
            x = random_point(rng, n, 2.0)
            v = random_chamber_direction(rng, n)
            k = kappa(v, policy)
            i = int(np.argmin(-np.diff(v.v)))
            q = np.eye(n)
            q[i, i + 1] = float(rng.uniform(0.5, 2.0))
            d = chamber_with_housing(x, q)
            radii = [contract(x, v, t, d, policy) for t in times]
            slope, _ = fit_line(times, np.log(radii).tolist())
            drift = max(drift, abs(-slope - k) / k)
        report.add("dil.single_root_rate", drift, 0.01, inputs=(config.seed, config.samples.dil))

    lag = excess = 0.0
    for _ in range(config.samples.dil):
        x = random_point(rng, n, 2.0)
        v = random_chamber_direction(rng, n) if n > 2 else _tau(config)
        k = kappa(v, policy)
        d = random_chamber_in_shadow(rng, x, 2.0)
        start = rho(x, d, policy).rho
        for t in times[::4]:
            fast = contract(x, v, t, d, policy)
            moved = rho(translate_along(x, v, t), d, policy).rho
            lag = max(lag, abs(fast - moved) / max(start, 1e-300))
            excess = max(excess, fast / (math.exp(-k * t) * start) - 1.0)
    inputs = (config.seed, config.samples.dil)
    report.add("dil.translate_agreement", lag, 1e-8, inputs=inputs)
    report.add("dil.kappa_rate", excess, 1e-9, inputs=inputs)


@SUITES.suite("dxshadows")
def verify_dxshadows(config: RunConfig, report: SuiteReport) -> None:
    """Chambers of S_x stay in a uniform shadow of every point of D_x."""
    n, policy = config.n, config.policy
    rho_star = config.calibration.rho_star
    centers = 4
    per_center = max(1, config.samples.dxshadows // (2 * centers))
    worst = []
    for index, rng in enumerate(_halves(config, "dxshadows")):
        half = 0.0
        for j in range(centers):
            x = random_point(rng, n, 2.0)
            summary = verify_dx_shadows(x, per_center, rng, rho_star, policy)
            report.add_summary(summary, tag=f"{index}.{j}", inputs=(config.seed,))
            half = max(half, summary.measured)
        worst.append(half)
        report.fit(f"dxshadows.max_rho.{index}", half)
    report.add(
        "dxshadows.seed_stability",
        _relative_gap(worst[0], worst[1]),
        0.2,
        inputs=(config.seed, *worst),
    )


@SUITES.suite("largeshadows")
def verify_largeshadows(config: RunConfig, report: SuiteReport) -> None:
    """enlarge at the calibrated time, and the minimal time as a function of r."""
    n, policy, calibration = config.n, config.policy, config.calibration
    v = _tau(config)
    checks = config.samples.shadow_checks
    radii = list(config.grid.enlarge_radii)
    slopes = []
    for index, rng in enumerate(_halves(config, "largeshadows")):
        x = random_point(rng, n, 1.0)
        times = []
        for r in radii:
            enlarge(x, v, r, rng, calibration, checks, policy)
            t_star = minimal_enlarge_time(
                x, v, r, int(rng.integers(2**32)), config.samples.largeshadows, policy
            )
            times.append(t_star)
            report.add(
                f"largeshadows.minimal_time.{index}.r{r:g}",
                t_star,
                calibration.c_enlarge * (r + 1.0),
                inputs=(config.seed, index, r),
            )
        slope = _add_slope_fit(report, f"largeshadows.time_slope.{index}", radii, times, rng)
        slopes.append(slope)
        debug_print(f"largeshadows: half {index} times {times}")
    report.add(
        "largeshadows.slope_stability",
        _relative_gap(slopes[0], slopes[1]),
        0.25,
        inputs=(config.seed, *slopes),
    )


def point_at_height(rng: np.random.Generator, ctx: HorosphereContext, h: float) -> Point:
    """A random point u with h(u) = h, above a random point of Z."""
    z = retract_to_Z(random_point(rng, ctx.n, 1.5), ctx)
    return Point.from_group(parabolic_rep(z) * np.exp(h * ctx.tau.v)[None, :])


@SUITES.suite("pushing")
def verify_pushing(config: RunConfig, report: SuiteReport) -> None:
    """Projection to Z along rays: level set, travel time, Lipschitz profiles."""
    rng = _stream(config, "pushing")
    ctx = HorosphereContext.from_run(config)
    calibration = config.calibration
    count = config.samples.pushing
    level = travel = 0.0
    for _ in range(count):
        u = point_at_height(rng, ctx, float(rng.uniform(1.0, 8.0)))
        _, sigma, _ = sample_shadow_pair(rng, u, ctx)
        proj = project_to_Z(u, sigma, ctx)
        level = max(level, abs(busemann(proj.z, ctx.cfg)))
        travel = max(travel, proj.T / proj.bound)
    report.add("pushing.level_set", level, 1e-8, inputs=(config.seed, count))
    report.add("pushing.travel_time", travel, 1.0, inputs=(config.seed, count))

    heights = list(config.grid.pushing_heights)
    per_height = max(4, count // (4 * len(heights)))
    ratios = []
    for h in heights:
        summary = lipschitz_profile_i_u(
            point_at_height(rng, ctx, h), per_height, rng, ctx, calibration.pushing_cap
        )
        report.add_summary(summary, tag=f"h{h:g}", inputs=(config.seed, h))
        ratios.append(summary.measured)
    exponent = fit_exponent(heights, ratios)
    report.fit("pushing.lipschitz_exponent", exponent)
    report.add_within(
        "pushing.lipschitz_exponent", exponent, 1.0, 0.2, inputs=(config.seed, *heights)
    )

    worst = 0.0
    for _ in range(max(1, count // 4)):
        u1 = point_at_height(rng, ctx, float(rng.uniform(2.0, 6.0)))
        u2 = random_point_in_ball(rng, u1, 0.5)
        flat, s1, s2 = sample_shadow_pair(rng, u1, ctx)
        worst = max(worst, two_point_profile(u1, u2, s1, s2, ctx, flat))
    report.add(
        "pushing.two_point", worst, calibration.two_point_cap, inputs=(config.seed, count // 4)
    )

    report.add_summary(
        retraction_lipschitz(ctx, 1.0, max(1, count // 4), rng), inputs=(config.seed,)
    )

    c = pushing_constant(config.n, count, rng)
    report.fit("pushing.c_pushing", c)
    if calibration.c_pushing is not None:
        report.add("pushing.c_pushing", c, calibration.c_pushing, inputs=(config.seed, count))


@SUITES.suite("opposition")
def verify_opposition(config: RunConfig, report: SuiteReport) -> None:
    """Genericity of opposite chambers, opposite flats and spanned flats."""
    rng = _stream(config, "opposition")
    n, policy = config.n, config.policy
    count = config.samples.opposition
    opposite = asymmetric = 0
    for _ in range(count):
        d, e = random_chamber(rng, n), random_chamber(rng, n)
        forward = are_opposite(d, e, policy)
        opposite += int(forward)
        asymmetric += int(forward != are_opposite(e, d, policy))
    report.add("opposition.frequency", 1.0 - opposite / count, 1e-3, inputs=(config.seed, count))
    report.add("opposition.symmetry", asymmetric, 0.0, inputs=(config.seed, count))

    standard = Chamber.standard(n)
    flat = find_opposite_flat(standard, rng, policy=policy)
    chambers = boundary_chambers(flat)
    missing = sum(not are_opposite(standard, c, policy) for c in chambers)
    report.add("opposition.opposite_flat", missing, 0.0, inputs=(config.seed, len(chambers)))

    wrong = 0
    pairs = config.samples.shadow_checks
    w0 = longest_element(n)
    for _ in range(pairs):
        d, e = random_chamber(rng, n), random_chamber(rng, n)
        if not are_opposite(d, e, policy):
            continue
        spanned = flat_spanned(d, e, policy).frame.entries
        wrong += int(not (
            Chamber.of_frame(spanned).same_as(d) and Chamber.of_frame(spanned @ w0).same_as(e)
        ))
    report.add("opposition.flat_spanned", wrong, 0.0, inputs=(config.seed, pairs))

    x = random_point(rng, n, 1.0)
    x_new, d = opposite_chamber_for_shadow(
        x, _tau(config), seed=config.seed, checks=pairs, policy=policy
    )
    worst = _shadow_flat_margin(x, x_new, d, rng, pairs, policy)
    report.add(
        "opposition.shadow_opposite_chamber",
        worst,
        1.0,
        passed=worst < 1.0,
        inputs=(config.seed, pairs),
    )


def _shadow_flat_margin(
    x: Point,
    x_new: Point,
    d: Chamber,
    rng: np.random.Generator,
    count: int,
    policy: NumericPolicy,
) -> float:
    """Largest rho_x' over the chambers of flats spanned by d and e in S_x.

    Infinite when a sampled e is not opposite d or its flat is not
    opposite the standard chamber.
    """
    standard = Chamber.standard(x.n)
    worst = 0.0
    for i in range(count):
        e = random_chamber_in_shadow(rng, x, 1.0, on_sphere=i % 2 == 0)
        if not are_opposite(e, d, policy):
            return math.inf
        try:
            chambers = boundary_chambers(flat_spanned(e, d, policy))
        except GeometryError:
            return math.inf
        if not all(are_opposite(standard, f, policy) for f in chambers):
            return math.inf
        worst = max(worst, *(rho(x_new, f, policy).rho for f in chambers))
    return worst


def _omega_run(
    config: RunConfig,
    report: SuiteReport,
    ctx: HorosphereContext,
    rng: np.random.Generator,
    size: int,
    label: str,
) -> None:
    points = [retract_to_Z(random_point(rng, config.n, 1.5), ctx) for _ in range(size)]
    od = build_omega_infty(
        points,
        ctx,
        config.calibration,
        seed=int(rng.integers(2**32)),
        checks=config.samples.shadow_checks,
        resolution=config.grid.cone_resolution,
    )
    for summary in od.records:
        report.add_summary(summary, tag=label, inputs=(config.seed,))
    forced = max(abs(od.face((i,)).height - 1.0) for i in range(size))
    report.add(f"{label}.vertex_height", forced, 1e-9, inputs=(config.seed,))


@SUITES.suite("omega_infty")
def verify_omega_infty(config: RunConfig, report: SuiteReport) -> None:
    """Omega_infty and anchors on random edges, and triangles from rank 3 on."""
    rng = _stream(config, "omega_infty")
    ctx = HorosphereContext.from_run(config)
    for i in range(config.samples.omega_edges):
        _omega_run(config, report, ctx, rng, 2, f"edge{i}")
    if config.n >= 4:
        for i in range(config.samples.omega_triangles):
            _omega_run(config, report, ctx, rng, 3, f"triangle{i}")


def run_suite(config: RunConfig, name: str) -> SuiteReport:
    """Run a registered suite and return its report.

    Raises:
        ConfigurationError: If the suite is unknown.
        HorolabError: Any failure raised by the suite itself.
    """
    suite = SUITES.get(name)
    report = SuiteReport(name, config.n, config.seed, config.tau_entries)
    start = time.perf_counter()
    debug_print(f"suite {name}: n = {config.n}, seed = {config.seed}")
    suite(config, report)
    report.wall_time = time.perf_counter() - start
    debug_print(f"suite {name}: {len(report.checks)} checks, {report.failed_count} failed")
    return report


__all__ = [
    "SUITES",
    "SuiteRegistry",
    "point_at_height",
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
]
