"""Retraction of a neighborhood of Z onto Z along the Busemann gradient."""

from __future__ import annotations

import math

import numpy as np

from horolab.core.exceptions import ConfigurationError, ErrorContext
from horolab.core.records import SampleSummary
from horolab.horosphere.context import HorosphereContext
from horolab.liecore.groups import iwasawa_arrays
from horolab.symspace.points import Point, distance, random_point, random_point_in_ball


def retract_array(g: np.ndarray, tau: np.ndarray) -> tuple[np.ndarray, float]:
    """Representative n a exp(-h V_tau) of the retraction of [g], and h([g])."""
    n, a, _ = iwasawa_arrays(g)
    log_a = np.log(a)
    h = float(np.dot(log_a - log_a.mean(), tau))
    return n * (a * np.exp(-h * tau))[None, :], h


def retract_to_Z(x: Point, ctx: HorosphereContext, r_max: float | None = None) -> Point:
    """Move x along the geodesic asymptotic to tau to the point with h = 0.

    x = [n a] goes to [n a exp(-h(x) V_tau)]. The map fixes Z and is
    idempotent.

    Raises:
        ConfigurationError: If r_max is given and |h(x)| exceeds it.
    """
    g, h = retract_array(x.with_rep().g, ctx.tau.v)
    if r_max is not None and abs(h) > r_max:
        raise ConfigurationError(
            f"retract_to_Z needs |h| <= {r_max}, got {h:.6g}",
            context=ErrorContext(operation="retract_to_Z"),
        )
    return Point.from_group(g)


def point_near_Z(
    rng: np.random.Generator, ctx: HorosphereContext, r: float, spread: float = 2.0
) -> Point:
    """A random point of the r-neighborhood N_r(Z)."""
    z = retract_to_Z(random_point(rng, ctx.n, spread), ctx)
    height = rng.uniform(-r, r)
    return Point.from_group(z.g * np.exp(height * ctx.tau.v)[None, :])


def retraction_lipschitz(
    ctx: HorosphereContext,
    r: float,
    samples: int,
    rng: np.random.Generator,
    step: float = 0.05,
) -> SampleSummary:
    """Sampled Lipschitz constant of retract_to_Z on N_r(Z).

    The flow exp(-h V_tau) stretches a root direction by at most
    exp(r max_root), which is used as the bound.
    """
    worst = 0.0
    for _ in range(samples):
        x = point_near_Z(rng, ctx, r)
        y = random_point_in_ball(rng, x, step)
        gap = distance(x, y)
        if gap == 0:
            continue
        worst = max(worst, distance(retract_to_Z(x, ctx), retract_to_Z(y, ctx)) / gap)
    spread = float(ctx.tau.v[0] - ctx.tau.v[-1])
    bound = math.exp((r + step) * spread) + 1.0
    return SampleSummary.at_most(f"retraction.lipschitz.r{r:g}", worst, bound, samples)


__all__ = ["point_near_Z", "retract_array", "retract_to_Z", "retraction_lipschitz"]
