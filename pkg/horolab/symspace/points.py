"""Points of X = SL(n, R)/SO(n) in the SPD model.

A point [g] = g SO(n) is stored as p = g g^T. The metric is

    d([g], [h]) = 1/2 * sqrt(sum log^2 lambda_i(p^-1 q))
                = sqrt(sum log^2 sigma_i(g^-1 h)),

so d([e], [exp V]) = |V| and t -> [g exp(tV)] has unit speed for a unit
Cartan vector V. With this scale the Iwasawa A-coordinate paired with a
unit direction is exactly a Busemann function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from horolab.core.exceptions import (
    ConfigurationError,
    ErrorContext,
    MissingRepresentative,
    NumericalFailure,
)
from horolab.liecore.algebra import CartanVector
from horolab.liecore.groups import DEFAULT_POLICY, SpecialLinear


@dataclass(frozen=True, eq=False)
class Point:
    """A point of X.

    Attributes:
        p: SPD matrix with determinant 1.
        rep: Optional representative g with g g^T = p.
    """

    p: np.ndarray
    rep: SpecialLinear | None = None

    def __post_init__(self) -> None:
        p = np.asarray(self.p, dtype=float)
        tol = DEFAULT_POLICY.construction
        scale = max(1.0, float(np.max(np.abs(p))))
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise ConfigurationError(f"Point needs a square matrix, got {p.shape}")
        if float(np.max(np.abs(p - p.T))) > 10 * tol * scale:
            raise ConfigurationError("Point matrix must be symmetric")
        sym = (p + p.T) / 2
        # g g^T of a determinant one g is already SPD with det 1
        if self.rep is None:
            _check_spd_det_one(sym, tol)
        sym.setflags(write=False)
        object.__setattr__(self, "p", sym)

    @classmethod
    def from_group(cls, g: SpecialLinear | np.ndarray) -> Point:
        """The coset [g], keeping g as representative."""
        group = g if isinstance(g, SpecialLinear) else SpecialLinear(g)
        m = group.entries
        return cls(m @ m.T, group)

    @classmethod
    def from_spd(cls, p: np.ndarray) -> Point:
        """A point given only by its SPD matrix.

        Raises:
            ConfigurationError: If p is not symmetric positive definite with det 1.
        """
        return cls(np.asarray(p, dtype=float))

    @classmethod
    def base(cls, n: int) -> Point:
        """The base point [e]."""
        return cls.from_group(np.eye(n))

    @property
    def n(self) -> int:
        return int(self.p.shape[0])

    @property
    def g(self) -> np.ndarray:
        """The representative as an array.

        Raises:
            MissingRepresentative: If the point carries none.
        """
        if self.rep is None:
            raise MissingRepresentative(
                "Operation needs a group representative",
                context=ErrorContext(operation="Point.g"),
            )
        return self.rep.entries

    def with_rep(self) -> Point:
        """This point carrying the symmetric square root as representative."""
        if self.rep is not None:
            return self
        w, q = np.linalg.eigh(self.p)
        root = (q * np.sqrt(w)[None, :]) @ q.T
        return Point(self.p, SpecialLinear(root))


def _check_spd_det_one(p: np.ndarray, tol: float) -> None:
    """Raise ConfigurationError unless p is positive definite with det 1."""
    w = np.linalg.eigvalsh(p)
    if not np.all(np.isfinite(w)) or float(w[0]) <= 0.0:
        raise ConfigurationError(
            "Point matrix must be positive definite",
            context=ErrorContext(operation="Point", detail={"eigenvalues": w.tolist()}),
        )
    det = float(np.prod(w))
    if abs(det - 1.0) > tol * max(1.0, float(np.linalg.norm(p))) ** p.shape[0]:
        raise ConfigurationError(
            f"Point matrix must have determinant 1, got {det!r}",
            context=ErrorContext(operation="Point", detail={"det": det}),
        )


def _log_singular_values(m: np.ndarray, m_inv: np.ndarray) -> np.ndarray:
    """log sigma_i(m), using m^-1 for the small singular values."""
    s = np.linalg.svd(m, compute_uv=False)
    s_inv = np.linalg.svd(m_inv, compute_uv=False)
    small = -np.log(s_inv[::-1])
    return np.where(s >= 1.0, np.log(s), small)


def distance_arrays(g: np.ndarray, h: np.ndarray) -> float:
    """Distance between [g] and [h] from representatives."""
    m = np.linalg.solve(g, h)
    m_inv = np.linalg.solve(h, g)
    return float(np.linalg.norm(_log_singular_values(m, m_inv)))


def distance(x: Point, y: Point) -> float:
    """Riemannian distance between two points.

    Uses the representatives when both carry one; otherwise the
    generalized eigenvalues of (q, p).

    Raises:
        NumericalFailure: If the eigensolver fails.
    """
    try:
        if x.rep is not None and y.rep is not None:
            return distance_arrays(x.g, y.g)
        lam = scipy.linalg.eigh(y.p, x.p, eigvals_only=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericalFailure(
            f"Eigensolve failed in distance: {e}",
            context=ErrorContext(operation="distance"),
        ) from e
    if np.any(lam <= 0):
        raise NumericalFailure("Non-positive generalized eigenvalue in distance")
    return 0.5 * float(np.linalg.norm(np.log(lam)))


def geodesic(x: Point, v: CartanVector, t: float) -> Point:
    """The point [g exp(tV)] on the geodesic through x = [g].

    Raises:
        MissingRepresentative: If x has no representative.
    """
    return Point.from_group(x.g * np.exp(t * v.v)[None, :])


def geodesic_between_arrays(g: np.ndarray, h: np.ndarray, s: float) -> np.ndarray:
    """Representative of the point at fraction s from [g] to [h].

    With g^-1 h = U S W^T the geodesic is s -> [g U S^s U^T].
    """
    m = np.linalg.solve(g, h)
    u, sing, _ = np.linalg.svd(m)
    return g @ ((u * sing**s) @ u.T)


def geodesic_between(x: Point, y: Point, s: float) -> Point:
    """Point at fraction s in [0, 1] along the geodesic from x to y."""
    x, y = x.with_rep(), y.with_rep()
    if s == 0:
        return x
    return Point.from_group(SpecialLinear(geodesic_between_arrays(x.g, y.g, s)))


def random_point(rng: np.random.Generator, n: int, scale: float = 1.0) -> Point:
    """Random point [exp(S)] with S symmetric trace-zero of size ~scale."""
    s = rng.standard_normal((n, n))
    s = (s + s.T) / 2
    s -= np.trace(s) / n * np.eye(n)
    s *= scale / max(float(np.linalg.norm(s)), 1e-300) * rng.uniform(0.2, 1.0)
    return Point.from_group(scipy.linalg.expm(s))


def random_point_in_ball(rng: np.random.Generator, x: Point, radius: float) -> Point:
    """Random point [g exp(S)] with |S| < radius, hence within radius of x."""
    n = x.n
    s = rng.standard_normal((n, n))
    s = (s + s.T) / 2
    s -= np.trace(s) / n * np.eye(n)
    s *= radius * rng.uniform(0.0, 1.0) / max(float(np.linalg.norm(s)), 1e-300)
    return Point.from_group(x.g @ scipy.linalg.expm(s))


__all__ = [
    "Point",
    "distance",
    "geodesic",
    "geodesic_between",
    "random_point",
    "random_point_in_ball",
]
