"""Angular margins of the horosphere and the pushing constant."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from horolab.core.config import NumericPolicy, RunConfig
from horolab.core.exceptions import ConfigurationError, DegenerateChamber, ErrorContext
from horolab.liecore.algebra import CartanVector, barycenter, extreme_ray_array, random_unipotent
from horolab.liecore.groups import DEFAULT_POLICY
from horolab.symspace.busemann import BusemannConfig
from horolab.symspace.points import Point, distance
from horolab.utilities import make_rng


@dataclass(frozen=True)
class HorosphereContext:
    """Everything the horosphere constructions need besides the points.

    Attributes:
        cfg: The Busemann function.
        epsilon: pi/2 minus the largest angle between tau and the standard chamber.
        theta: Angle between the chamber barycenter tau_0 and tau.
        rho: Shadow radius of the admissible directions Sigma_u(rho).
        c_pushing: max d([e], [n]) over d_N(n) <= 1.
        policy: Numerical tolerances.
    """

    cfg: BusemannConfig
    epsilon: float
    theta: float
    rho: float = 1.0
    c_pushing: float = 1.0
    policy: NumericPolicy = DEFAULT_POLICY

    def __post_init__(self) -> None:
        """Validate the margins."""
        if not self.epsilon > self.policy.regularity:
            raise DegenerateChamber(
                f"Chamber margin epsilon = {self.epsilon!r} is not positive",
                context=ErrorContext(operation="HorosphereContext"),
            )
        if not self.theta < math.pi / 2:
            raise ConfigurationError(f"theta = {self.theta!r} must be below pi/2")
        if not self.rho > 0:
            raise ConfigurationError(f"Shadow radius must be positive, got {self.rho!r}")

    @property
    def n(self) -> int:
        return self.cfg.n

    @property
    def tau(self) -> CartanVector:
        return self.cfg.tau_direction

    @property
    def tau0(self) -> CartanVector:
        """The barycenter direction of the standard chamber."""
        return barycenter(self.n)

    def push_bound(self, h: float) -> float:
        """(h + c rho) / sin(epsilon), the bound on the travel time T_u."""
        return (h + self.c_pushing * self.rho) / math.sin(self.epsilon)

    @property
    def b(self) -> float:
        """(1 + c rho) / sin(epsilon), so that T_u <= b h(u) when h(u) >= 1."""
        return self.push_bound(1.0)

    def search_horizon(self, h: float) -> float:
        """Largest ray parameter searched for a crossing."""
        return 10.0 * (h + self.rho + 1.0) / math.sin(self.epsilon)

    @classmethod
    def from_run(cls, config: RunConfig) -> HorosphereContext:
        """Build the context of a run, estimating c_pushing if not calibrated."""
        cfg = BusemannConfig.from_run(config)
        c = config.calibration.c_pushing
        if c is None:
            c = pushing_constant(config.n, config.samples.pushing, make_rng([config.seed, 7]))
        return compute_margins(cfg, rho=config.calibration.shadow_rho, c_pushing=c)


def compute_margins(
    cfg: BusemannConfig, *, rho: float = 1.0, c_pushing: float = 1.0
) -> HorosphereContext:
    """Compute epsilon and theta from the extreme rays of the chamber.

    A linear functional on the spherical chamber attains its minimum at an
    extreme ray, so the largest angle to tau is the largest angle to an
    extreme ray.

    Raises:
        DegenerateChamber: If epsilon <= 1e-9.
    """
    tau = cfg.tau_direction.v
    cosines = extreme_ray_array(cfg.n) @ tau
    widest = math.acos(float(np.clip(cosines.min(), -1.0, 1.0)))
    epsilon = math.pi / 2 - widest
    theta = barycenter(cfg.n).angle(cfg.tau_direction)
    if epsilon <= 1e-9:
        raise DegenerateChamber(
            "tau sees the standard chamber at a right angle",
            context=ErrorContext(operation="compute_margins", detail={"epsilon": epsilon}),
        )
    return HorosphereContext(cfg, epsilon, theta, rho=rho, c_pushing=c_pushing, policy=cfg.policy)


def pushing_constant(n: int, samples: int, rng: np.random.Generator) -> float:
    """Sampled max of d([e], [u]) over unipotents u with d_N(u) = 1.

    Single root vectors are always included among the samples.
    """
    base = Point.base(n)
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            u = np.eye(n)
            u[i, j] = 1.0
            worst = max(worst, distance(base, Point.from_group(u)))
    for _ in range(samples):
        u = random_unipotent(rng, n, target_dN=1.0)
        worst = max(worst, distance(base, Point.from_group(u.entries)))
    return worst


__all__ = ["HorosphereContext", "compute_margins", "pushing_constant"]
