"""Pushing points of the horoball down to Z along rays to the boundary.

For u with h(u) > 0 and sigma in a chamber opposite the standard one,
the ray from u toward sigma meets Z exactly once. i_u(sigma) is that
point and T_u(sigma) the time it takes. h is concave along the ray, so
doubling from t = 1 brackets the crossing and brentq pins it down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from horolab.chambers.flags import common_flat, flat_spanned, random_chamber
from horolab.chambers.shadows import random_chamber_in_shadow
from horolab.core.exceptions import ConfigurationError, ErrorContext, NoCrossing
from horolab.core.records import SampleSummary
from horolab.horosphere.context import HorosphereContext
from horolab.liecore.algebra import CartanVector, extreme_ray_array
from horolab.symspace.boundary import (
    BoundaryPoint,
    Flat,
    Ray,
    flat_coordinates,
    ray_to_boundary,
    tits_angle_in_flat,
)
from horolab.symspace.busemann import busemann, busemann_array
from horolab.symspace.points import Point, distance


@dataclass(frozen=True, eq=False)
class Projection:
    """Result of project_to_Z.

    Attributes:
        z: The crossing point i_u(sigma).
        T: The travel time T_u(sigma).
        bound: (h(u) + c rho) / sin(epsilon), the expected cap on T.
        ray: The ray that was followed.
    """

    z: Point
    T: float
    bound: float
    ray: Ray

    @property
    def within_bound(self) -> bool:
        return self.T <= self.bound


def height_along(ray: Ray, ctx: HorosphereContext, t: float) -> float:
    """h(r(t))."""
    return busemann_array(ray.rep(t), ctx.tau.v)


def project_to_Z(u: Point, sigma: BoundaryPoint, ctx: HorosphereContext) -> Projection:
    """Follow the ray from u toward sigma down to the horosphere.

    Raises:
        ConfigurationError: If h(u) is negative beyond the level-set tolerance.
        NoCrossing: If h stays positive up to the search horizon.
    """
    h_u = busemann(u, ctx.cfg)
    ray = ray_to_boundary(u, sigma, policy=ctx.policy)
    bound = ctx.push_bound(max(h_u, 0.0))
    if abs(h_u) <= ctx.policy.level_set:
        return Projection(u, 0.0, bound, ray)
    if h_u < 0:
        raise ConfigurationError(
            f"project_to_Z starts below the horosphere (h = {h_u:.6g})",
            context=ErrorContext(operation="project_to_Z", lemma="pushing"),
        )

    horizon = ctx.search_horizon(h_u)
    lo, hi = 0.0, 1.0
    while height_along(ray, ctx, hi) > 0:
        lo, hi = hi, 2.0 * hi
        if lo > horizon:
            raise NoCrossing(
                f"Ray stays above the horosphere up to t = {lo:.4g}",
                context=ErrorContext(
                    operation="project_to_Z",
                    lemma="pushing",
                    detail={"h_u": h_u, "horizon": horizon},
                ),
            )
    T = scipy.optimize.brentq(
        lambda t: height_along(ray, ctx, t),
        lo,
        hi,
        xtol=ctx.policy.bisection,
        rtol=4 * np.finfo(float).eps,
    )
    return Projection(ray(T), float(T), bound, ray)


def i_u(u: Point, sigma: BoundaryPoint, ctx: HorosphereContext) -> Point:
    """The crossing point i_u(sigma)."""
    return project_to_Z(u, sigma, ctx).z


def _chamber_direction(rng: np.random.Generator, n: int) -> CartanVector:
    """A random unit direction in the closed standard chamber."""
    weights = rng.uniform(0.0, 1.0, size=n - 1)
    weights[rng.integers(n - 1)] += 0.05
    return CartanVector(weights @ extreme_ray_array(n)).unit()


def _nearby_direction(rng: np.random.Generator, w: CartanVector, step: float) -> CartanVector:
    """A closed-chamber direction about step radians from w."""
    noise = rng.standard_normal(w.n)
    noise -= noise.mean()
    noise -= np.dot(noise, w.v) * w.v
    moved = w.v + step * noise / np.linalg.norm(noise)
    return CartanVector(np.sort(moved)[::-1]).unit()


def sample_shadow_pair(
    rng: np.random.Generator, u: Point, ctx: HorosphereContext, step: float = 0.05
) -> tuple[Flat, BoundaryPoint, BoundaryPoint]:
    """Two nearby points of one chamber of S_u(rho), and a flat containing them."""
    d = random_chamber_in_shadow(rng, u, ctx.rho)
    flat = flat_spanned(d, random_chamber(rng, u.n), ctx.policy)
    w1 = _chamber_direction(rng, u.n)
    w2 = _nearby_direction(rng, w1, step)
    return flat, flat.boundary_point(w1), flat.boundary_point(w2)


def lipschitz_profile_i_u(
    u: Point,
    samples: int,
    rng: np.random.Generator,
    ctx: HorosphereContext,
    cap: float,
) -> SampleSummary:
    """Largest ratio d(i_u(s1), i_u(s2)) / angle(s1, s2) over sampled pairs.

    Passes when the ratio stays below cap (rho + 1)^2 h(u).
    """
    h_u = busemann(u, ctx.cfg)
    if h_u < 1.0 - ctx.policy.level_set:
        raise ConfigurationError(f"lipschitz_profile_i_u needs h(u) >= 1, got {h_u:.6g}")
    worst = 0.0
    for _ in range(samples):
        flat, s1, s2 = sample_shadow_pair(rng, u, ctx)
        angle = tits_angle_in_flat(flat, s1, s2)
        if angle == 0:
            continue
        worst = max(worst, distance(i_u(u, s1, ctx), i_u(u, s2, ctx)) / angle)
    bound = cap * (ctx.rho + 1.0) ** 2 * h_u
    return SampleSummary.at_most("pushing.lipschitz_ratio", worst, bound, samples, h_u=h_u)


def two_point_profile(
    u1: Point,
    u2: Point,
    sigma1: BoundaryPoint,
    sigma2: BoundaryPoint,
    ctx: HorosphereContext,
    flat: Flat | None = None,
) -> float:
    """d(i_u1(s1), i_u2(s2)) / (d(u1, u2) + min(h(u1), h(u2)) angle(s1, s2)).

    The angle is measured in flat, or in a common flat found for the two
    points. Equal inputs give 0.

    Raises:
        ConfigurationError: If h(u1) or h(u2) is below 1.
        NotInFlat: If no common flat contains both points.
    """
    h1, h2 = busemann(u1, ctx.cfg), busemann(u2, ctx.cfg)
    if min(h1, h2) < 1.0 - ctx.policy.level_set:
        raise ConfigurationError("two_point_profile needs h(u_i) >= 1")
    where = flat if flat is not None else common_flat(sigma1, sigma2, ctx.policy)
    angle = flat_coordinates(where, sigma1).angle(flat_coordinates(where, sigma2))
    scale = distance(u1, u2) + min(h1, h2) * angle
    gap = distance(i_u(u1, sigma1, ctx), i_u(u2, sigma2, ctx))
    if scale == 0:
        return 0.0 if gap <= ctx.policy.level_set else math.inf
    return gap / scale


__all__ = [
    "Projection",
    "height_along",
    "i_u",
    "lipschitz_profile_i_u",
    "project_to_Z",
    "sample_shadow_pair",
    "two_point_profile",
]
