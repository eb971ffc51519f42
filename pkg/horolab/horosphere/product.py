"""The cone over the boundary and the admissible set Y(rho)."""

from __future__ import annotations

from dataclasses import dataclass

from horolab.chambers.flags import Chamber, common_flat
from horolab.chambers.shadows import rho
from horolab.core.exceptions import (
    ConfigurationError,
    ErrorContext,
    MembershipViolation,
    NotOpposite,
)
from horolab.horosphere.context import HorosphereContext
from horolab.symspace.boundary import BoundaryPoint, Flat, cone_distance, flat_coordinates
from horolab.symspace.busemann import busemann
from horolab.symspace.points import Point, distance


@dataclass(frozen=True, eq=False)
class ConePoint:
    """A point (sigma, t) of the Euclidean cone over the boundary.

    All points with t = 0 are the cone point.
    """

    sigma: BoundaryPoint
    t: float

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ConfigurationError(f"Cone parameter must be nonnegative, got {self.t!r}")

    def distance(self, other: ConePoint, flat: Flat | None = None) -> float:
        """Cone metric, with the angle measured in a common flat."""
        if self.t == 0 or other.t == 0:
            return max(self.t, other.t)
        angle = _angle(self.sigma, other.sigma, flat)
        return cone_distance(self.t, other.t, angle)


@dataclass(frozen=True, eq=False)
class YPoint:
    """A pair (sigma, x) with h(x) >= 1 and sigma in Sigma_x(rho).

    Raises:
        MembershipViolation: On construction outside Y(rho).
    """

    sigma: BoundaryPoint
    x: Point
    ctx: HorosphereContext

    def __post_init__(self) -> None:
        """Check membership in Y(rho)."""
        height = busemann(self.x, self.ctx.cfg)
        context = ErrorContext(
            operation="YPoint", lemma="omega", detail={"h": height, "rho": self.ctx.rho}
        )
        if height < 1.0 - self.ctx.policy.level_set:
            raise MembershipViolation(f"Point has height {height:.6g} < 1", context)
        try:
            value = rho(self.x, Chamber(self.sigma.frame), self.ctx.policy).rho
        except NotOpposite as e:
            raise MembershipViolation("Direction is not opposite the standard chamber", context) from e
        if not value < self.ctx.rho:
            context.detail["rho_x"] = value
            raise MembershipViolation(f"Direction lies outside the shadow (rho = {value:.6g})", context)

    @property
    def height(self) -> float:
        return busemann(self.x, self.ctx.cfg)


def _angle(first: BoundaryPoint, second: BoundaryPoint, flat: Flat | None) -> float:
    where = flat if flat is not None else common_flat(first, second)
    return flat_coordinates(where, first).angle(flat_coordinates(where, second))


def d_Y(p: YPoint, q: YPoint, flat: Flat | None = None) -> float:
    """d(x1, x2) + min(h(x1), h(x2)) angle(sigma1, sigma2).

    Raises:
        NotInFlat: If no common flat contains both directions.
    """
    angle = _angle(p.sigma, q.sigma, flat)
    return distance(p.x, q.x) + min(p.height, q.height) * angle


__all__ = ["ConePoint", "YPoint", "d_Y"]
