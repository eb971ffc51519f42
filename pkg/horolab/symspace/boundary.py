"""Flats, boundary points at infinity, rays and angles.

A boundary point is the class of the ray [g exp(tV)]. It is kept in a
canonical form where V is sorted into descending order; the ray is then
asymptotic to the standard Iwasawa coordinates of the frame, which is
what makes ray_to_boundary a single factorization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from horolab.core.config import NumericPolicy
from horolab.core.exceptions import ErrorContext, NotInFlat, NotRegularDirection
from horolab.liecore.algebra import CartanVector, barycenter
from horolab.liecore.groups import DEFAULT_POLICY, SpecialLinear, iwasawa_arrays
from horolab.symspace.points import Point, distance

# Off-diagonal size of log(U^-1 r(1)) allowed for a ray inside a flat
_MEMBERSHIP_TOL = 1e-6


def _sign_fixed(frame: np.ndarray) -> np.ndarray:
    if np.linalg.det(frame) < 0:
        frame = frame.copy()
        frame[:, -1] = -frame[:, -1]
    return frame


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """A point of the visual boundary.

    Attributes:
        frame: Frame g of the ray [g exp(tV)], columns permuted so that
            the direction is descending.
        direction: Unit direction V with descending entries.
    """

    frame: SpecialLinear
    direction: CartanVector

    def __post_init__(self) -> None:
        """Normalize and sort the direction, permuting the frame to match."""
        v = self.direction.v
        if self.direction.norm <= DEFAULT_POLICY.construction:
            raise NotRegularDirection(
                "Boundary point needs a nonzero direction",
                context=ErrorContext(operation="BoundaryPoint", detail={"v": v.tolist()}),
            )
        if v.size != self.frame.n:
            raise NotRegularDirection(f"Direction of size {v.size} for frame of size {self.frame.n}")
        order = np.argsort(-v, kind="stable")
        frame = _sign_fixed(self.frame.entries[:, order])
        object.__setattr__(self, "frame", SpecialLinear(frame))
        object.__setattr__(self, "direction", CartanVector(v[order] / self.direction.norm))

    @classmethod
    def barycenter_of(cls, frame: SpecialLinear | np.ndarray) -> BoundaryPoint:
        """The barycenter of the chamber with the given frame."""
        group = frame if isinstance(frame, SpecialLinear) else SpecialLinear.normalized(frame)
        return cls(group, barycenter(group.n))

    @property
    def n(self) -> int:
        return self.frame.n

    @property
    def chamber_frame(self) -> np.ndarray:
        """Frame whose flag is a chamber containing this point."""
        return self.frame.entries

    def is_regular(self, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
        return self.direction.is_regular(policy)

    def reference_ray(self, t: float) -> Point:
        """[g exp(tV)] for the canonical frame."""
        return Point.from_group(self.frame.entries * np.exp(t * self.direction.v)[None, :])


@dataclass(frozen=True, eq=False)
class Flat:
    """The maximal flat [U A].

    Attributes:
        frame: Adapted basis U, determinant 1.
    """

    frame: SpecialLinear

    @classmethod
    def standard(cls, n: int) -> Flat:
        """The diagonal flat [A]."""
        return cls(SpecialLinear(np.eye(n)))

    @property
    def n(self) -> int:
        return self.frame.n

    def point(self, w: CartanVector | np.ndarray) -> Point:
        """[U exp(W)]."""
        v = w.v if isinstance(w, CartanVector) else np.asarray(w, dtype=float)
        return Point.from_group(self.frame.entries * np.exp(v)[None, :])

    def base_point(self) -> Point:
        return Point.from_group(self.frame)

    def boundary_point(self, w: CartanVector) -> BoundaryPoint:
        """The endpoint of t -> [U exp(tW)]."""
        return BoundaryPoint(self.frame, w)

    def chamber_frames(self) -> list[np.ndarray]:
        """Frames of the n! boundary chambers, U P_pi for every permutation."""
        u = self.frame.entries
        return [_sign_fixed(u[:, list(perm)]) for perm in itertools.permutations(range(self.n))]


@dataclass(frozen=True, eq=False)
class Ray:
    """The unit-speed ray t -> [g0 exp(tV)] starting at origin."""

    origin: Point
    base: np.ndarray
    direction: np.ndarray

    def rep(self, t: float) -> np.ndarray:
        """Representative of r(t)."""
        return self.base * np.exp(t * self.direction)[None, :]

    def __call__(self, t: float) -> Point:
        if t == 0:
            return self.origin
        return Point.from_group(self.rep(t))


def ray_to_boundary(
    u: Point,
    sigma: BoundaryPoint,
    *,
    require_regular: bool = False,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> Ray:
    """The geodesic ray from u toward sigma.

    With g the canonical frame of sigma and g^-1 rep(u) = n a k, the ray is
    t -> [g n a exp(tV)]. Directions with ties (walls of the closed
    chamber) are accepted unless require_regular is set.

    Raises:
        NotRegularDirection: If require_regular is set and V has ties.
        MissingRepresentative: If u carries no representative.
    """
    if require_regular and not sigma.is_regular(policy):
        raise NotRegularDirection(
            "Ray target must be a regular boundary point",
            context=ErrorContext(
                operation="ray_to_boundary", detail={"v": sigma.direction.v.tolist()}
            ),
        )
    frame = sigma.frame.entries
    y = np.linalg.solve(frame, u.g)
    n, a, _ = iwasawa_arrays(y, policy)
    return Ray(u, frame @ (n * a[None, :]), sigma.direction.v.copy())


def flat_coordinates(flat: Flat, sigma: BoundaryPoint) -> CartanVector:
    """Direction of sigma in the coordinates of the flat.

    The ray from [U] toward sigma stays in [U A] exactly when sigma lies
    in the boundary of the flat; then U^-1 r(1) is diagonal up to a
    rotation and its log gives the direction.

    Raises:
        NotInFlat: If the ray leaves the flat.
    """
    ray = ray_to_boundary(flat.base_point(), sigma)
    y = np.linalg.solve(flat.frame.entries, ray.rep(1.0))
    w, q = np.linalg.eigh(y @ y.T)
    log_s = (q * np.log(w)[None, :]) @ q.T / 2
    off = float(np.max(np.abs(log_s - np.diag(np.diag(log_s)))))
    if off > _MEMBERSHIP_TOL:
        raise NotInFlat(
            "Boundary point does not lie at infinity of the flat",
            context=ErrorContext(operation="flat_coordinates", detail={"off_diagonal": off}),
        )
    return CartanVector(np.diag(log_s)).unit()


def tits_angle_in_flat(flat: Flat, first: BoundaryPoint, second: BoundaryPoint) -> float:
    """Angle in [0, pi] between two boundary points of one flat.

    Raises:
        NotInFlat: If either point fails the membership test.
    """
    return flat_coordinates(flat, first).angle(flat_coordinates(flat, second))


def same_boundary_point(
    first: BoundaryPoint,
    second: BoundaryPoint,
    horizon: float = 100.0,
    threshold: float = 10.0,
) -> bool:
    """Decide equality by ray divergence.

    The ray from [g1] toward the second point is compared with the
    reference ray of the first. Equal points give a non-increasing
    distance that stays below threshold at the horizon.
    """
    ray = ray_to_boundary(Point.from_group(first.frame), second)
    gaps = [distance(ray(t), first.reference_ray(t)) for t in np.linspace(0.0, horizon, 5)]
    steady = all(b <= a + 1e-9 for a, b in zip(gaps, gaps[1:]))
    return steady and gaps[-1] < threshold


def visual_angle(x: Point, first: BoundaryPoint, second: BoundaryPoint) -> float:
    """Riemannian angle at x between the rays toward the two points.

    It never exceeds the Tits angle, and needs no common flat.
    """
    r1 = ray_to_boundary(x, first)
    r2 = ray_to_boundary(x, second)
    # both bases represent x, so they differ by a rotation k
    k = np.linalg.solve(r1.base, r2.base)
    t1 = np.diag(r1.direction)
    t2 = k @ np.diag(r2.direction) @ k.T
    a = t1 / np.linalg.norm(t1)
    b = t2 / np.linalg.norm(t2)
    return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))


def cone_distance(t1: float, t2: float, angle: float) -> float:
    """Euclidean cone metric between (sigma1, t1) and (sigma2, t2)."""
    return math.sqrt(max(0.0, t1 * t1 + t2 * t2 - 2 * t1 * t2 * math.cos(angle)))


def cone_exp(x: Point, sigma: BoundaryPoint, t: float) -> Point:
    """The exponential map of the cone at x: (sigma, t) -> r_{x, sigma}(t)."""
    return ray_to_boundary(x, sigma)(t)


__all__ = [
    "BoundaryPoint",
    "Flat",
    "Ray",
    "cone_distance",
    "cone_exp",
    "flat_coordinates",
    "ray_to_boundary",
    "same_boundary_point",
    "tits_angle_in_flat",
    "visual_angle",
]
