"""The Busemann function h centered at tau.

For x = [n a k] in Iwasawa coordinates, h(x) = <log a, V_tau>. This is
normalized by h([e]) = 0, vanishes on the N-orbit of the base point and
grows at unit rate along [exp(t V_tau)]. The horoball is H = h^-1([0, oo))
and the horosphere is Z = h^-1(0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from horolab.core.config import NumericPolicy, RunConfig
from horolab.core.exceptions import ConfigurationError, ErrorContext, NotRegular
from horolab.liecore.algebra import CartanVector
from horolab.liecore.groups import DEFAULT_POLICY, iwasawa_arrays
from horolab.symspace.points import Point, distance


@dataclass(frozen=True)
class BusemannConfig:
    """The direction V_tau of the horosphere center.

    V_tau must lie in the open standard chamber. For SL(n) the space is
    irreducible, so a chamber-interior tau is never contained in a proper
    join factor of the boundary.
    """

    tau_direction: CartanVector
    policy: NumericPolicy = DEFAULT_POLICY

    def __post_init__(self) -> None:
        """Validate regularity and normalize to a unit vector."""
        if abs(self.tau_direction.norm - 1.0) > self.policy.construction:
            object.__setattr__(self, "tau_direction", self.tau_direction.unit())
        if not self.tau_direction.is_regular(self.policy):
            raise NotRegular(
                "tau must lie in the open standard chamber",
                context=ErrorContext(
                    operation="BusemannConfig",
                    detail={"tau": self.tau_direction.v.tolist()},
                ),
            )

    @classmethod
    def from_run(cls, config: RunConfig) -> BusemannConfig:
        """Build from the validated tau of a run configuration."""
        return cls(CartanVector(np.asarray(config.tau_entries)), config.policy)

    @property
    def n(self) -> int:
        return self.tau_direction.n


def busemann_array(g: np.ndarray, tau: np.ndarray) -> float:
    """h([g]) for a raw representative and raw tau entries."""
    _, a, _ = iwasawa_arrays(g)
    log_a = np.log(a)
    return float(np.dot(log_a - log_a.mean(), tau))


def busemann(x: Point, cfg: BusemannConfig) -> float:
    """Value of h at x.

    Raises:
        MissingRepresentative: If x carries no representative.
        SingularInput: From the Iwasawa factorization.
    """
    if x.n != cfg.n:
        raise ConfigurationError(f"Point of size {x.n} for tau of size {cfg.n}")
    return busemann_array(x.g, cfg.tau_direction.v)


def _ray_gap(x: Point, cfg: BusemannConfig, t: float) -> float:
    far = Point.from_group(np.diag(np.exp(t * cfg.tau_direction.v)))
    return distance(x.with_rep(), far)


def busemann_limit(x: Point, cfg: BusemannConfig, t: float = 200.0) -> float:
    """h(x) from the limit of t - d(x, [exp(t V_tau)]).

    Once the N-part has decayed, d(x, [exp(t V_tau)]) is the hyperbola
    sqrt((t - h)^2 + s^2) in t, where s is the part of log a orthogonal to
    V_tau. Distances at t and 2t determine h without the O(s^2 / t) bias
    of the plain difference.
    """
    d1 = _ray_gap(x, cfg, t)
    d2 = _ray_gap(x, cfg, 2 * t)
    return (3 * t * t - (d2 * d2 - d1 * d1)) / (2 * t)


__all__ = ["BusemannConfig", "busemann", "busemann_limit"]
