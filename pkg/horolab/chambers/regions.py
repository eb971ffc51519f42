"""Distances to flats and to Weyl chambers [p A+].

Both are minimizations of f(w) = d([exp w], [y])^2 over a convex subset
of the Cartan subalgebra. With M = exp(-w) S exp(-w), S = y y^T,

    f(w) = 1/4 |log M|_F^2,    grad f(w) = -diag(log M),

and f is convex along the flat, so L-BFGS-B with a few starts finds the
global minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.optimize

from horolab.core.config import NumericPolicy
from horolab.core.exceptions import ErrorContext, NonConvergence
from horolab.liecore.algebra import extreme_ray_array
from horolab.liecore.groups import DEFAULT_POLICY, iwasawa_arrays
from horolab.symspace.boundary import Flat
from horolab.symspace.points import Point

Objective = Callable[[np.ndarray], "tuple[float, np.ndarray]"]


def parabolic_rep(x: Point) -> np.ndarray:
    """The representative p = n a of x in the parabolic group NA."""
    n, a, _ = iwasawa_arrays(x.with_rep().g)
    return n * a[None, :]


@lru_cache(maxsize=None)
def trace_zero_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the trace-zero vectors, as columns."""
    basis = scipy.linalg.null_space(np.ones((1, n)))
    basis.setflags(write=False)
    return basis


def _objective(s: np.ndarray, to_w: np.ndarray) -> Objective:
    """f and its gradient in the coordinates z with w = to_w @ z."""

    def f(z: np.ndarray) -> tuple[float, np.ndarray]:
        w = to_w @ z
        scale = np.exp(-w)
        m = scale[:, None] * s * scale[None, :]
        lam, q = np.linalg.eigh(m)
        log_m = (q * np.log(lam)[None, :]) @ q.T
        value = 0.25 * float(np.sum(log_m * log_m))
        return value, to_w.T @ (-np.diag(log_m))

    return f


def _minimize(
    f: Objective,
    starts: list[np.ndarray],
    bounds: list[tuple[float, float | None]] | None,
    policy: NumericPolicy,
    operation: str,
) -> tuple[float, np.ndarray]:
    best: scipy.optimize.OptimizeResult | None = None
    for z0 in starts:
        result = scipy.optimize.minimize(
            f,
            z0,
            jac=True,
            method="L-BFGS-B",
            bounds=bounds,
            options={"gtol": policy.descent * 1e-3, "ftol": 1e-15, "maxiter": 500},
        )
        if best is None or result.fun < best.fun:
            best = result
    assert best is not None
    grad = np.asarray(best.jac)
    if bounds is not None:
        # only the free directions of active lower bounds count
        active = (best.x <= 1e-12) & (grad > 0)
        grad = np.where(active, 0.0, grad)
    if float(np.linalg.norm(grad)) > policy.descent:
        raise NonConvergence(
            f"{operation} stalled with gradient {np.linalg.norm(grad):.3g}",
            context=ErrorContext(operation=operation, detail={"value": float(best.fun)}),
        )
    return float(np.sqrt(max(best.fun, 0.0))), np.asarray(best.x)


def _cartan_starts(y: np.ndarray, s: np.ndarray) -> list[np.ndarray]:
    """Iwasawa and diagonal guesses for the nearest flat coordinate."""
    _, a, _ = iwasawa_arrays(y)
    iwasawa = np.log(a)
    diagonal = 0.5 * np.log(np.diag(s))
    return [iwasawa - iwasawa.mean(), diagonal - diagonal.mean()]


def distance_to_flat(
    x: Point,
    flat: Flat,
    policy: NumericPolicy = DEFAULT_POLICY,
    rng: np.random.Generator | None = None,
) -> float:
    """min over a in A of d(x, [U a]).

    Raises:
        NonConvergence: If the best start stalls above the descent tolerance.
    """
    y = np.linalg.solve(flat.frame.entries, x.with_rep().g)
    s = y @ y.T
    basis = trace_zero_basis(flat.n)
    gen = rng if rng is not None else np.random.default_rng(0)
    guesses = _cartan_starts(y, s)
    starts = [basis.T @ w for w in guesses] + [np.zeros(flat.n - 1)]
    while len(starts) < policy.multistarts:
        starts.append(starts[0] + gen.normal(scale=1.0, size=flat.n - 1))
    value, _ = _minimize(_objective(s, basis), starts, None, policy, "distance_to_flat")
    return value


@dataclass(frozen=True, eq=False)
class WeylChamberRegion:
    """The Weyl chamber C_x = [p A+] and its unit neighborhood D_x.

    The base is stored through its parabolic representative, so the
    region depends only on the point.
    """

    base: Point

    @cached_property
    def p(self) -> np.ndarray:
        """Parabolic representative of the base."""
        return parabolic_rep(self.base)

    def point(self, w: np.ndarray) -> Point:
        """[p exp(w)] for w in the closed chamber."""
        return Point.from_group(self.p * np.exp(w)[None, :])

    def contains_in_neighborhood(
        self, y: Point, policy: NumericPolicy = DEFAULT_POLICY
    ) -> bool:
        """Membership in D_x."""
        return distance_to_weyl_chamber(y, self, policy) < 1.0


def distance_to_weyl_chamber(
    y: Point,
    region: WeylChamberRegion,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> float:
    """min over a in the closed chamber A+ of d(y, [p a]).

    The chamber is parametrized as w = sum s_j omega_j with s_j >= 0 over
    its extreme rays omega_j, which turns it into box bounds.

    Raises:
        NonConvergence: If the descent stalls above tolerance.
    """
    n = region.base.n
    rays = np.asarray(extreme_ray_array(n)).T
    m = np.linalg.solve(region.p, y.with_rep().g)
    s = m @ m.T
    starts = []
    for w in _cartan_starts(m, s):
        coeffs, *_ = np.linalg.lstsq(rays, w, rcond=None)
        starts.append(np.clip(coeffs, 0.0, None))
    starts.append(np.zeros(n - 1))
    bounds: list[tuple[float, float | None]] = [(0.0, None)] * (n - 1)
    value, _ = _minimize(_objective(s, rays), starts, bounds, policy, "distance_to_weyl_chamber")
    return value


__all__ = [
    "WeylChamberRegion",
    "distance_to_flat",
    "distance_to_weyl_chamber",
    "parabolic_rep",
    "trace_zero_basis",
]
