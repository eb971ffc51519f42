"""Spheres at infinity and their contraction inside a larger shadow.

A sphere here is piecewise geodesic for the Tits metric: a pair of
boundary points (m = 0) or a cyclic list of boundary points whose
consecutive pairs are joined by geodesic arcs inside named flats
(m = 1). contract_in_shadow cones such a sphere off to a point u of a
chamber d that is opposite every chamber of the shadow, following for
each point v the Tits geodesic from v to u in the flat spanned by the
chamber of v and d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from horolab.chambers.flags import Chamber, flat_spanned
from horolab.chambers.shadows import opposite_chamber_for_shadow, rho
from horolab.core.config import NumericPolicy
from horolab.core.exceptions import (
    CalibrationFailure,
    ConfigurationError,
    ErrorContext,
    GeometryError,
)
from horolab.liecore.algebra import CartanVector, extreme_ray_array
from horolab.liecore.groups import DEFAULT_POLICY
from horolab.symspace.boundary import BoundaryPoint, Flat, flat_coordinates, visual_angle
from horolab.symspace.points import Point

# Largest Tits angle accepted for a geodesic arc
_MAX_ARC_ANGLE = math.pi - 1e-6


def slerp(w0: np.ndarray, w1: np.ndarray, f: float) -> np.ndarray:
    """Point at fraction f on the great-circle arc between unit vectors."""
    angle = 2.0 * math.atan2(float(np.linalg.norm(w0 - w1)), float(np.linalg.norm(w0 + w1)))
    if angle < 1e-15:
        return w0.copy()
    s = math.sin(angle)
    return (math.sin((1.0 - f) * angle) * w0 + math.sin(f * angle) * w1) / s


@lru_cache(maxsize=None)
def interior_direction(n: int) -> CartanVector:
    """A fixed regular direction of the standard chamber.

    The extreme rays are weighted 1, 2, ..., n-1. Unlike the barycenter,
    its antipode in a flat is never the barycenter of a chamber.
    """
    weights = np.arange(1, n, dtype=float)
    return CartanVector(weights @ extreme_ray_array(n)).unit()


def geodesic_in_flat(
    flat: Flat, start: BoundaryPoint, end: BoundaryPoint, f: float
) -> BoundaryPoint:
    """The point at fraction f of the Tits geodesic from start to end in flat.

    Raises:
        NotInFlat: If an endpoint is not at infinity of the flat.
        GeometryError: If the endpoints are antipodal.
    """
    w0 = flat_coordinates(flat, start).v
    w1 = flat_coordinates(flat, end).v
    angle = CartanVector(w0).angle(CartanVector(w1))
    if angle > _MAX_ARC_ANGLE:
        raise GeometryError(
            "Endpoints are antipodal; the Tits geodesic is not unique",
            context=ErrorContext(operation="geodesic_in_flat", detail={"angle": angle}),
        )
    return flat.boundary_point(CartanVector(slerp(w0, w1, f)))


@dataclass(frozen=True, eq=False)
class PiecewiseGeodesicSphere:
    """An m-sphere in the boundary, m in {0, 1}.

    For m = 1 the arc i runs from vertices[i] to vertices[i + 1] inside
    flats[i], and the loop is parametrized by s in [0, 1) with every arc
    taking an equal share.

    Raises:
        ConfigurationError: On a wrong vertex or flat count, or an arc of
            angle pi.
        NotInFlat: If an arc endpoint is not at infinity of its flat.
    """

    dimension: int
    vertices: tuple[BoundaryPoint, ...]
    flats: tuple[Flat, ...] = ()
    _coords: tuple[tuple[np.ndarray, np.ndarray, float], ...] = field(
        init=False, repr=False, default=()
    )

    def __post_init__(self) -> None:
        if self.dimension == 0:
            if len(self.vertices) != 2 or self.flats:
                raise ConfigurationError("A 0-sphere is a pair of boundary points without arcs")
            return
        if self.dimension != 1:
            raise ConfigurationError(f"Sphere dimension must be 0 or 1, got {self.dimension}")
        if len(self.vertices) < 2 or len(self.flats) != len(self.vertices):
            raise ConfigurationError("A loop needs at least 2 vertices and one flat per arc")
        coords = []
        for i, flat in enumerate(self.flats):
            w0 = flat_coordinates(flat, self.vertices[i]).v
            w1 = flat_coordinates(flat, self.vertices[(i + 1) % len(self.vertices)]).v
            angle = CartanVector(w0).angle(CartanVector(w1))
            if angle > _MAX_ARC_ANGLE:
                raise ConfigurationError(
                    f"Arc {i} has angle {angle:.6g}, not below pi",
                    context=ErrorContext(operation="PiecewiseGeodesicSphere"),
                )
            coords.append((w0, w1, angle))
        object.__setattr__(self, "_coords", tuple(coords))

    @property
    def n(self) -> int:
        return self.vertices[0].n

    @property
    def arc_count(self) -> int:
        return len(self.flats)

    def arc_angles(self) -> list[float]:
        return [angle for _, _, angle in self._coords]

    def point(self, s: float) -> BoundaryPoint:
        """alpha(s). For m = 0, s < 0.5 gives the first vertex."""
        if self.dimension == 0:
            return self.vertices[0] if s < 0.5 else self.vertices[1]
        k = self.arc_count
        scaled = (s % 1.0) * k
        i = min(int(scaled), k - 1)
        w0, w1, _ = self._coords[i]
        return self.flats[i].boundary_point(CartanVector(slerp(w0, w1, scaled - i)))

    def lipschitz(self) -> float:
        """Lipschitz constant of the loop on the unit circle; 0 for m = 0."""
        if self.dimension == 0:
            return 0.0
        return max(self.arc_angles()) * self.arc_count / (2.0 * math.pi)

    def samples(self, resolution: int) -> list[tuple[float, BoundaryPoint]]:
        """(s, alpha(s)) at resolution points per arc, or the two vertices."""
        if self.dimension == 0:
            return [(0.0, self.vertices[0]), (1.0, self.vertices[1])]
        steps = resolution * self.arc_count
        return [(j / steps, self.point(j / steps)) for j in range(steps)]


@dataclass(frozen=True, eq=False)
class ShadowCone:
    """The cone of a sphere to the point u, inside the shadow of x_new.

    Attributes:
        sphere: The coned-off sphere alpha.
        x_new: The point x' whose shadow contains the cone.
        chamber: The chamber d, opposite every chamber of the old shadow.
        apex: The point u of d.
        lipschitz: Sampled Lipschitz constant, measured with the angle at x'.
    """

    sphere: PiecewiseGeodesicSphere
    x_new: Point
    chamber: Chamber
    apex: BoundaryPoint
    lipschitz: float = 0.0

    def toward_apex(self, v: BoundaryPoint, f: float) -> BoundaryPoint:
        """The point at fraction f of the geodesic from v to u.

        Raises:
            NotOpposite: If the chamber of v is not opposite d.
        """
        if f >= 1.0:
            return self.apex
        flat = flat_spanned(Chamber(v.frame), self.chamber)
        return geodesic_in_flat(flat, v, self.apex, f)

    def at(self, s: float, f: float) -> BoundaryPoint:
        """The cone at boundary parameter s and radial fraction f (1 is the apex)."""
        return self.toward_apex(self.sphere.point(s), f)


def _cone_grid(sphere: PiecewiseGeodesicSphere, resolution: int) -> list[list[tuple[float, float]]]:
    """Rows of (s, f) parameters, one row per boundary sample."""
    fractions = [j / resolution for j in range(resolution + 1)]
    return [[(s, f) for f in fractions] for s, _ in sphere.samples(max(1, resolution // 2))]


def _cone_lipschitz(cone: ShadowCone, resolution: int) -> float:
    """Largest angle at x' between neighbouring samples over their parameter gap.

    The m = 0 cone is a segment of parameter length 2, the m = 1 cone the
    unit disk in polar coordinates.
    """
    grid = _cone_grid(cone.sphere, resolution)
    values = [[cone.at(s, f) for s, f in row] for row in grid]
    worst = 0.0
    step = 1.0 / resolution
    for row in values:
        for a, b in zip(row, row[1:]):
            worst = max(worst, visual_angle(cone.x_new, a, b) / step)
    if cone.sphere.dimension == 1:
        for i, row in enumerate(values):
            nxt = values[(i + 1) % len(values)]
            gap = 2.0 * math.pi / len(values)
            for j, (a, b) in enumerate(zip(row, nxt)):
                radius = 1.0 - grid[i][j][1]
                if radius > 0:
                    worst = max(worst, visual_angle(cone.x_new, a, b) / (gap * radius))
    return worst


def contract_in_shadow(
    alpha: PiecewiseGeodesicSphere,
    x: Point,
    v: CartanVector,
    *,
    seed: int = 0,
    checks: int = 64,
    resolution: int = 8,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> ShadowCone:
    """Cone alpha off inside the shadow of a point x' of C_x.

    Raises:
        ConfigurationError: If m > k - 2.
        CalibrationFailure: If a chamber of alpha is outside S_x, or from
            opposite_chamber_for_shadow.
    """
    k = x.n - 1
    if alpha.dimension > k - 2:
        raise ConfigurationError(
            f"A {alpha.dimension}-sphere cannot be contracted in rank {k}",
            context=ErrorContext(operation="contract_in_shadow", lemma="shadow-contraction"),
        )
    for _, sigma in alpha.samples(resolution):
        value = rho(x, Chamber(sigma.frame), policy).rho
        if not value < 1.0 + policy.construction:
            raise CalibrationFailure(
                f"Sphere leaves the shadow of x (rho = {value:.6g})",
                context=ErrorContext(
                    operation="contract_in_shadow",
                    lemma="shadow-contraction",
                    property_id="alpha in Sigma_x",
                    detail={"rho": value},
                ),
            )
    x_new, d = opposite_chamber_for_shadow(x, v, seed, checks, policy)
    apex = BoundaryPoint(d.frame, interior_direction(x.n))
    cone = ShadowCone(alpha, x_new, d, apex)
    return ShadowCone(alpha, x_new, d, apex, _cone_lipschitz(cone, resolution))


__all__ = [
    "PiecewiseGeodesicSphere",
    "ShadowCone",
    "contract_in_shadow",
    "geodesic_in_flat",
    "interior_direction",
    "slerp",
]
