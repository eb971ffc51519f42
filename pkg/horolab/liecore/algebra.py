"""Cartan subalgebra, roots and the nilpotent calculus on N.

The Cartan subalgebra is the space of trace-zero diagonal matrices,
stored as vectors. The standard chamber is the cone of strictly
decreasing vectors; its positive roots are v -> v_i - v_j for i < j and
its root spaces are the matrix units E_ij, so N is exactly the unit
upper-triangular group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from horolab.core.config import NumericPolicy
from horolab.core.exceptions import ConfigurationError, ErrorContext, NotRegular
from horolab.liecore.groups import DEFAULT_POLICY, UnitUpper


@dataclass(frozen=True, eq=False)
class CartanVector:
    """A trace-zero diagonal Lie algebra element, stored as its diagonal."""

    v: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.v, dtype=float, copy=True)
        if arr.ndim != 1 or arr.size < 2:
            raise ConfigurationError(f"CartanVector needs at least 2 entries, got {arr.shape}")
        if abs(float(arr.sum())) > DEFAULT_POLICY.construction * max(1.0, float(np.abs(arr).sum())):
            raise ConfigurationError(f"CartanVector must be trace-zero, got sum {arr.sum()!r}")
        arr -= arr.mean()
        arr.setflags(write=False)
        object.__setattr__(self, "v", arr)

    @property
    def n(self) -> int:
        return int(self.v.size)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.v))

    def unit(self) -> CartanVector:
        """The direction of this vector."""
        norm = self.norm
        if norm == 0:
            raise NotRegular("Zero Cartan vector has no direction")
        return CartanVector(self.v / norm)

    def is_regular(self, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
        """Whether the entries are strictly decreasing."""
        return bool(np.all(np.diff(self.v) < -policy.regularity))

    def exp(self) -> np.ndarray:
        """exp(V) as a positive diagonal vector."""
        return np.exp(self.v)

    def angle(self, other: CartanVector) -> float:
        """Euclidean angle between the two directions."""
        a = self.v / self.norm
        b = other.v / other.norm
        return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))


@dataclass(frozen=True)
class Root:
    """The root v -> v_i - v_j."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ConfigurationError("A root needs distinct indices")

    @property
    def is_positive(self) -> bool:
        return self.i < self.j

    def __call__(self, v: CartanVector) -> float:
        return float(v.v[self.i] - v.v[self.j])


def positive_roots(n: int) -> tuple[Root, ...]:
    """Positive roots of the standard chamber."""
    return tuple(Root(i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def extreme_ray_array(n: int) -> np.ndarray:
    """Unit extreme rays of the closed standard chamber as rows."""
    rays = []
    for j in range(1, n):
        ray = np.array([(n - j) / n] * j + [-j / n] * (n - j))
        rays.append(ray / np.linalg.norm(ray))
    out = np.array(rays)
    out.setflags(write=False)
    return out


def extreme_rays(n: int) -> tuple[CartanVector, ...]:
    """Unit extreme rays of the closed standard chamber (fundamental coweights)."""
    return tuple(CartanVector(r) for r in extreme_ray_array(n))


def barycenter(n: int) -> CartanVector:
    """Unit barycenter direction of the standard chamber."""
    return CartanVector(extreme_ray_array(n).sum(axis=0)).unit()


def nilpotent_log(u: UnitUpper) -> np.ndarray:
    """log u as a strictly upper-triangular matrix.

    The series log(I + N) = N - N^2/2 + ... terminates after n - 1 terms.
    """
    return nilpotent_log_array(u.entries)


def nilpotent_log_array(u: np.ndarray) -> np.ndarray:
    n = u.shape[0]
    nil = np.triu(u, 1)
    result = np.zeros_like(nil)
    power = np.eye(n)
    for k in range(1, n):
        power = power @ nil
        result += ((-1) ** (k + 1) / k) * power
    return np.triu(result, 1)


def nilpotent_exp(x: np.ndarray) -> UnitUpper:
    """exp of a strictly upper-triangular matrix (finite series)."""
    return UnitUpper(nilpotent_exp_array(x))


def nilpotent_exp_array(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    nil = np.triu(x, 1)
    result = np.eye(n)
    power = np.eye(n)
    for k in range(1, n):
        power = power @ nil / k
        result += power
    return result


def d_N(u: UnitUpper) -> float:
    """Frobenius norm of log u."""
    return float(np.linalg.norm(nilpotent_log_array(u.entries)))


def d_N_array(u: np.ndarray) -> float:
    return float(np.linalg.norm(nilpotent_log_array(u)))


def conjugate_by_exp(v: CartanVector, t: float, u: UnitUpper) -> UnitUpper:
    """exp(-tV) u exp(tV).

    Conjugating by a diagonal scales the (i, j) entry by
    exp(-t (v_i - v_j)); the same scaling applies to every root component
    of log u.
    """
    scale = np.exp(-t * (v.v[:, None] - v.v[None, :]))
    return UnitUpper(np.triu(u.entries * scale, 1) + np.eye(u.n))


def kappa(v: CartanVector, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Smallest positive root value on V.

    Raises:
        NotRegular: If V is not strictly decreasing.
    """
    gaps = -np.diff(v.v)
    if float(gaps.min()) <= policy.regularity:
        raise NotRegular(
            "kappa needs a strictly decreasing Cartan vector",
            context=ErrorContext(operation="kappa", detail={"v": v.v.tolist()}),
        )
    # the minimal root over i < j is always a simple root
    return float(gaps.min())


def random_unipotent(
    rng: np.random.Generator, n: int, target_dN: float | None = None
) -> UnitUpper:
    """Random element of N.

    Entries of log u are uniform in [-1, 1]; with target_dN the log is
    rescaled to that Frobenius norm.
    """
    log = np.triu(rng.uniform(-1.0, 1.0, size=(n, n)), 1)
    if target_dN is not None:
        norm = float(np.linalg.norm(log))
        log = log * (target_dN / norm) if norm > 0 else log
    return nilpotent_exp(log)


def random_chamber_direction(rng: np.random.Generator, n: int) -> CartanVector:
    """Random unit direction in the open standard chamber."""
    weights = rng.uniform(0.05, 1.0, size=n - 1)
    return CartanVector(weights @ extreme_ray_array(n)).unit()


__all__ = [
    "CartanVector",
    "Root",
    "barycenter",
    "conjugate_by_exp",
    "d_N",
    "extreme_ray_array",
    "extreme_rays",
    "kappa",
    "nilpotent_exp",
    "nilpotent_log",
    "positive_roots",
    "random_chamber_direction",
    "random_unipotent",
]
