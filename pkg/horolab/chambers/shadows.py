"""Shadows of points on the chambers opposite the standard chamber.

For x = [p] with p = n a in NA and a chamber d = n_d c*, the housing
unipotent is q_x(d) = a^-1 n^-1 n_d a, the canonical unipotent of p^-1 d.
The shadow S_x(r) is the set of d with rho_x(d) = d_N(q_x(d)) < r.
Moving x along [p exp(tV)] conjugates q by exp(-tV), which contracts
every root component at rate at least kappa(V).

Both rho and the constructions below are equivariant under NA: for
g = n a, rho_[g y](g d) = rho_y(d). The opposite-chamber template is
therefore built once at the base point and translated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from horolab.chambers.flags import (
    Chamber,
    are_opposite,
    boundary_chambers,
    canonical_unipotent,
    find_opposite_flat,
    flat_spanned,
    longest_element,
    transversality_minors,
)
from horolab.chambers.regions import WeylChamberRegion, distance_to_weyl_chamber, parabolic_rep
from horolab.core.config import Calibration, NumericPolicy
from horolab.core.exceptions import (
    CalibrationFailure,
    ErrorContext,
    ExhaustedTries,
    GeometryError,
    NotOpposite,
)
from horolab.core.records import SampleSummary
from horolab.liecore.algebra import (
    CartanVector,
    conjugate_by_exp,
    d_N_array,
    extreme_ray_array,
    kappa,
    random_unipotent,
)
from horolab.liecore.groups import DEFAULT_POLICY, UnitUpper
from horolab.symspace.points import Point, random_point_in_ball
from horolab.utilities import debug_print


@dataclass(frozen=True, eq=False)
class ShadowQuery:
    """The shadow data of a chamber seen from a point.

    Attributes:
        x: The point.
        d: The chamber, opposite the standard chamber.
        rho: rho_x(d) = d_N(q).
        q: The housing unipotent q_x(d).
    """

    x: Point
    d: Chamber
    rho: float
    q: UnitUpper

    def in_shadow(self, r: float) -> bool:
        """Membership of d in S_x(r)."""
        return self.rho < r


def housing_unipotent(p: np.ndarray, n_d: np.ndarray) -> np.ndarray:
    """q = a^-1 n^-1 n_d a for the parabolic representative p = n a."""
    a = np.diag(p).copy()
    n = p / a[None, :]
    m = scipy.linalg.solve_triangular(n, n_d, unit_diagonal=True)
    return np.triu(m * (a[None, :] / a[:, None]), 1) + np.eye(p.shape[0])


def rho(x: Point, d: Chamber, policy: NumericPolicy = DEFAULT_POLICY) -> ShadowQuery:
    """Compute q_x(d) and rho_x(d).

    Raises:
        NotOpposite: If d is not opposite the standard chamber.
    """
    n_d = canonical_unipotent(d, policy).entries
    q = housing_unipotent(parabolic_rep(x), n_d)
    return ShadowQuery(x, d, d_N_array(q), UnitUpper(q))


def contract(
    x: Point,
    v: CartanVector,
    t: float,
    d: Chamber,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> float:
    """rho at [p exp(tV)] of d, by exact per-root scaling of q_x(d).

    Raises:
        NotRegular: If V is not in the open standard chamber.
        NotOpposite: If d is not opposite the standard chamber.
    """
    kappa(v, policy)
    query = rho(x, d, policy)
    return d_N_array(conjugate_by_exp(v, t, query.q).entries)


def translate_along(x: Point, v: CartanVector, t: float) -> Point:
    """The point [p exp(tV)] of C_x."""
    p = parabolic_rep(x)
    return Point.from_group(p * np.exp(t * v.v)[None, :])


def chamber_with_housing(x: Point, q: np.ndarray) -> Chamber:
    """The chamber d with q_x(d) = q, namely (n a q a^-1) c*."""
    p = parabolic_rep(x)
    a = np.diag(p).copy()
    n = p / a[None, :]
    n_d = n @ (q * (a[:, None] / a[None, :]))
    return Chamber.from_unipotent(UnitUpper(np.triu(n_d, 1) + np.eye(p.shape[0])))


def random_chamber_in_shadow(
    rng: np.random.Generator, x: Point, r: float, *, on_sphere: bool = False
) -> Chamber:
    """A chamber of S_x(r), with rho uniform in (0, r) or equal to r."""
    radius = r if on_sphere else r * rng.uniform(0.0, 1.0)
    u = random_unipotent(rng, x.n, target_dN=radius)
    return chamber_with_housing(x, u.entries)


def random_point_in_dx(rng: np.random.Generator, x: Point, depth: float = 4.0) -> Point:
    """A point of D_x: a point of C_x moved by less than 1."""
    rays = extreme_ray_array(x.n)
    w = rng.uniform(0.0, depth, size=rays.shape[0]) @ rays
    region = WeylChamberRegion(x)
    return random_point_in_ball(rng, region.point(w), 0.999)


def verify_dx_shadows(
    x: Point,
    samples: int,
    rng: np.random.Generator,
    rho_star: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> SampleSummary:
    """Sample y in D_x and d in S_x; report the largest rho_y(d).

    Passes when every sample stays below rho_star.
    """
    worst = 0.0
    for _ in range(samples):
        y = random_point_in_dx(rng, x)
        d = random_chamber_in_shadow(rng, x, 1.0)
        worst = max(worst, rho(y, d, policy).rho)
    return SampleSummary.at_most("dx_shadows.max_rho", worst, rho_star, samples)


def _enlarge_holds(
    x_new: Point,
    x: Point,
    r: float,
    rng: np.random.Generator,
    checks: int,
    policy: NumericPolicy,
) -> tuple[bool, dict[str, float]]:
    """Sampled post-check of enlarge at x_new."""
    worst_rho = 0.0
    worst_gap = 0.0
    for _ in range(checks):
        y = random_point_in_ball(rng, x.with_rep(), r)
        d = random_chamber_in_shadow(rng, y, 1.0)
        worst_rho = max(worst_rho, rho(x_new, d, policy).rho)
        worst_gap = max(worst_gap, distance_to_weyl_chamber(x_new, WeylChamberRegion(y), policy))
    ok = worst_rho < 1.0 and worst_gap < 1.0
    return ok, {"max_rho": worst_rho, "max_dist_to_Cy": worst_gap}


def enlarge(
    x: Point,
    v: CartanVector,
    r: float,
    rng: np.random.Generator,
    calibration: Calibration = Calibration(),
    checks: int = 64,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> Point:
    """A point x' of C_x whose shadow contains the shadows of B_r(x).

    x' = [p exp(tV)] with t = c_enlarge (r + 1).

    Raises:
        CalibrationFailure: If a sampled y in B_r(x) has a chamber of S_y
            outside S_x', or x' is not in D_y.
    """
    kappa(v, policy)
    t = calibration.c_enlarge * (r + 1.0)
    x_new = translate_along(x, v, t)
    ok, detail = _enlarge_holds(x_new, x, r, rng, checks, policy)
    if not ok:
        raise CalibrationFailure(
            f"enlarge post-check failed at t = {t:.4g}",
            context=ErrorContext(
                operation="enlarge", lemma="shadow-enlargement", property_id="S_y in S_x'",
                detail={"t": t, **detail},
            ),
        )
    return x_new


def minimal_enlarge_time(
    x: Point,
    v: CartanVector,
    r: float,
    rng_seed: int,
    checks: int = 64,
    policy: NumericPolicy = DEFAULT_POLICY,
    t_max: float = 200.0,
) -> float:
    """Smallest t, to 1e-2, passing the enlarge post-check on a fixed sample.

    Every candidate t is checked against the same samples, so the pass
    region is an interval [t*, t_max].
    """
    def holds(t: float) -> bool:
        gen = np.random.default_rng(rng_seed)
        return _enlarge_holds(translate_along(x, v, t), x, r, gen, checks, policy)[0]

    hi = 1.0
    while not holds(hi):
        hi *= 2.0
        if hi > t_max:
            raise CalibrationFailure(f"enlarge needs t > {t_max} at r = {r}")
    lo = 0.0
    while hi - lo > 1e-2:
        mid = (lo + hi) / 2
        lo, hi = (lo, mid) if holds(mid) else (mid, hi)
    return hi


@dataclass(frozen=True, eq=False)
class OppositeTemplate:
    """The base-point construction reused by opposite_chamber_for_shadow.

    Attributes:
        d: Chamber d at the base point.
        t_out: Parameter of x' = [exp(t_out V)].
        radius: Radius r of the contracted neighborhood of c*.
        r_prime: Largest sampled rho_[exp(tV)] of the spanned-flat chambers.
    """

    d: Chamber
    t_out: float
    radius: float
    r_prime: float


def _spanned_chambers_ok(
    e: Chamber, d0: Chamber, margin: float, policy: NumericPolicy
) -> bool:
    if float(np.min(transversality_minors(e, d0))) <= margin:
        return False
    flat = flat_spanned(e, d0, policy)
    c = Chamber.standard(e.n)
    return all(float(np.min(transversality_minors(c, f))) > margin for f in boundary_chambers(flat))


def _template_chamber(
    n: int, rng: np.random.Generator, margin: float, policy: NumericPolicy, tries: int = 100
) -> Chamber:
    """A chamber d0 such that the flat spanned by c* and d0 is opposite c with margin.

    A flat E0 opposite c is moved by the u in N sending one of its
    chambers onto c*; d0 is the antipode of c* in the moved flat.
    """
    standard = Chamber.standard(n)
    anti = Chamber.anti_standard(n)
    for _ in range(tries):
        flat0 = find_opposite_flat(standard, rng, policy=policy)
        c0 = boundary_chambers(flat0)[0]
        n_inv = canonical_unipotent(c0, policy).inverse().entries
        d0 = Chamber.of_frame(n_inv @ flat0.frame.entries @ longest_element(n))
        if _spanned_chambers_ok(anti, d0, margin, policy):
            return d0
    raise ExhaustedTries(
        f"No opposite flat with transversality margin {margin}",
        context=ErrorContext(operation="opposite_chamber_for_shadow", lemma="opposite-chamber"),
    )


@lru_cache(maxsize=32)
def _opposite_template(
    n: int,
    v_entries: tuple[float, ...],
    seed: int,
    checks: int,
    margin: float,
    policy: NumericPolicy,
) -> OppositeTemplate:
    v = CartanVector(np.asarray(v_entries))
    k = kappa(v, policy)
    rng = np.random.default_rng(seed)
    base = Point.base(n)
    d0 = _template_chamber(n, rng, margin, policy)

    radius = 1.0
    while True:
        probes = [
            random_chamber_in_shadow(rng, base, radius, on_sphere=i % 2 == 0)
            for i in range(checks)
        ]
        try:
            if all(_spanned_chambers_ok(e, d0, margin, policy) for e in probes):
                break
        except NotOpposite:
            pass
        radius /= 2.0
        if radius < 1e-8:
            raise CalibrationFailure(
                "No neighborhood of c* is opposite the template chamber",
                context=ErrorContext(operation="opposite_chamber_for_shadow", lemma="opposite-flats"),
            )
    t = math.log(1.0 / radius) / k
    d = Chamber.of_frame(np.exp(t * v.v)[:, None] * d0.frame.entries)

    # rho_[exp tV](exp(tV) f) = rho_[e](f)
    r_prime = max(
        rho(base, f, policy).rho
        for e in probes
        for f in boundary_chambers(flat_spanned(e, d0, policy))
    )
    t_out = t + max(0.0, math.log(r_prime) / k) + 1.0 / k
    debug_print(f"opposite template: radius {radius:.3g}, t {t:.3g}, r' {r_prime:.3g}")
    return OppositeTemplate(d, t_out, radius, r_prime)


def opposite_chamber_for_shadow(
    x: Point,
    v: CartanVector,
    seed: int = 0,
    checks: int = 64,
    policy: NumericPolicy = DEFAULT_POLICY,
    margin: float = 1e-3,
) -> tuple[Point, Chamber]:
    """A chamber d and a point x' of C_x for the shadow S_x.

    For every e in S_x, the chamber e is opposite d, the flat spanned by
    e and d is opposite the standard chamber and all its chambers lie in
    S_x'. These three properties are checked on sampled e.

    Raises:
        CalibrationFailure: If a sampled post-condition fails.
    """
    template = _opposite_template(
        x.n, tuple(float(t) for t in v.v), seed, checks, margin, policy
    )
    p = parabolic_rep(x)
    d = template.d.translate(p)
    x_new = Point.from_group(p * np.exp(template.t_out * v.v)[None, :])
    rng = np.random.default_rng([seed, 1])
    standard = Chamber.standard(x.n)
    for i in range(checks):
        e = random_chamber_in_shadow(rng, x, 1.0, on_sphere=i % 2 == 0)
        failed: str | None = None
        if not are_opposite(e, d, policy):
            failed = "(1) e opposite d"
        else:
            try:
                chambers = boundary_chambers(flat_spanned(e, d, policy))
            except GeometryError:
                chambers = []
                failed = "(1) e opposite d"
            if failed is None and not all(are_opposite(standard, f, policy) for f in chambers):
                failed = "(2) flat opposite c"
            if failed is None and not all(rho(x_new, f, policy).rho < 1.0 for f in chambers):
                failed = "(3) flat chambers in S_x'"
        if failed is not None:
            raise CalibrationFailure(
                f"opposite_chamber_for_shadow post-condition {failed} failed",
                context=ErrorContext(
                    operation="opposite_chamber_for_shadow",
                    lemma="opposite-flats",
                    property_id=failed,
                    detail={"radius": template.radius, "r_prime": template.r_prime},
                ),
            )
    return x_new, d


__all__ = [
    "OppositeTemplate",
    "ShadowQuery",
    "chamber_with_housing",
    "contract",
    "enlarge",
    "housing_unipotent",
    "minimal_enlarge_time",
    "opposite_chamber_for_shadow",
    "random_chamber_in_shadow",
    "random_point_in_dx",
    "rho",
    "translate_along",
    "verify_dx_shadows",
]
