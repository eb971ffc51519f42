"""Matrix group types for SL(n, R) and its Iwasawa decomposition.

Conventions:
    N is the unit upper-triangular group, A the positive diagonal group
    and K = SO(n). Every g factors uniquely as g = n a k. The factors come
    from the RQ factorization g = R Q, which is the QR factorization of
    g^-1 = Q^T R^-1 read backwards, with signs moved so that R has a
    positive diagonal. Then a = diag(R), n = R a^-1 and k = Q.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from horolab.core.config import NumericPolicy
from horolab.core.exceptions import ConfigurationError, ErrorContext, SingularInput

DEFAULT_POLICY = NumericPolicy()


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SpecialLinear:
    """An element g of SL(n, R).

    Attributes:
        entries: The n x n matrix, read-only.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        """Validate shape and determinant."""
        m = np.asarray(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise ConfigurationError(f"SpecialLinear needs a square matrix of size >= 2, got {m.shape}")
        det = np.linalg.det(m)
        if abs(det - 1.0) > DEFAULT_POLICY.construction * max(1.0, float(np.linalg.norm(m)) ** m.shape[0]):
            raise ConfigurationError(
                f"SpecialLinear determinant must be 1, got {det!r}",
                context=ErrorContext(operation="SpecialLinear"),
            )
        object.__setattr__(self, "entries", _frozen(m / det ** (1.0 / m.shape[0])))

    @property
    def n(self) -> int:
        """Matrix size."""
        return int(self.entries.shape[0])

    @classmethod
    def normalized(cls, matrix: np.ndarray) -> SpecialLinear:
        """Rescale a nonsingular matrix to determinant 1.

        Columns are scaled uniformly; a negative determinant is fixed by
        flipping the sign of the last column, which changes neither the
        flag of the columns nor the coset [g].
        """
        m = np.array(matrix, dtype=float, copy=True)
        det = np.linalg.det(m)
        if det == 0 or not np.isfinite(det):
            raise SingularInput("Cannot normalize a singular matrix")
        if det < 0:
            m[:, -1] = -m[:, -1]
            det = -det
        return cls(m / det ** (1.0 / m.shape[0]))

    def inverse(self) -> SpecialLinear:
        """Group inverse."""
        return SpecialLinear(np.linalg.inv(self.entries))

    def __matmul__(self, other: SpecialLinear) -> SpecialLinear:
        return SpecialLinear(self.entries @ other.entries)


@dataclass(frozen=True, eq=False)
class UnitUpper:
    """An element of N: unit upper-triangular."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        """Force exact zeros below and ones on the diagonal."""
        m = np.asarray(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ConfigurationError(f"UnitUpper needs a square matrix, got {m.shape}")
        tol = DEFAULT_POLICY.construction
        if np.max(np.abs(np.tril(m, -1)), initial=0.0) > tol or np.max(np.abs(np.diag(m) - 1.0)) > tol:
            raise ConfigurationError("UnitUpper must be unit upper-triangular")
        clean = np.triu(m, 1) + np.eye(m.shape[0])
        object.__setattr__(self, "entries", _frozen(clean))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def identity(cls, n: int) -> UnitUpper:
        return cls(np.eye(n))

    def inverse(self) -> UnitUpper:
        """Inverse, by back substitution."""
        inv = scipy.linalg.solve_triangular(self.entries, np.eye(self.n), unit_diagonal=True)
        return UnitUpper(inv)

    def as_group(self) -> SpecialLinear:
        return SpecialLinear(self.entries)


@dataclass(frozen=True, eq=False)
class PositiveDiagonal:
    """An element of A, stored by its diagonal."""

    diag: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.diag, dtype=float)
        if d.ndim != 1 or np.any(d <= 0):
            raise ConfigurationError("PositiveDiagonal needs positive entries")
        if abs(float(np.sum(np.log(d)))) > DEFAULT_POLICY.construction * max(1.0, d.size):
            raise ConfigurationError(f"PositiveDiagonal entries must multiply to 1, got {np.prod(d)!r}")
        object.__setattr__(self, "diag", _frozen(d))

    @property
    def log(self) -> np.ndarray:
        """log a as a trace-zero vector."""
        return np.log(self.diag)

    def matrix(self) -> np.ndarray:
        return np.diag(self.diag)


@dataclass(frozen=True, eq=False)
class Orthogonal:
    """An element of SO(n)."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        q = np.asarray(self.entries, dtype=float)
        tol = DEFAULT_POLICY.construction
        if np.max(np.abs(q @ q.T - np.eye(q.shape[0]))) > tol or np.linalg.det(q) < 0:
            raise ConfigurationError("Orthogonal must satisfy Q Q^T = I with det +1")
        object.__setattr__(self, "entries", _frozen(q))


@dataclass(frozen=True)
class IwasawaFactors:
    """The factors of g = n a k."""

    n: UnitUpper
    a: PositiveDiagonal
    k: Orthogonal

    def reconstruct(self) -> np.ndarray:
        """Multiply the factors back together."""
        return self.n.entries @ np.diag(self.a.diag) @ self.k.entries


def iwasawa_arrays(
    g: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Iwasawa factors of a raw matrix as (n, diag(a), k) arrays.

    This is the unchecked fast path used inside the geometry code; see
    iwasawa_nak for the validated version.

    Raises:
        SingularInput: If a pivot of the triangular factor underflows.
    """
    r, q = scipy.linalg.rq(np.asarray(g, dtype=float))
    d = np.diag(r)
    scale = float(np.max(np.abs(d)))
    if scale == 0 or float(np.min(np.abs(d))) <= np.finfo(float).tiny * 1e3 * scale:
        raise SingularInput(
            "Iwasawa factorization pivot underflow",
            context=ErrorContext(operation="iwasawa_nak", detail={"pivots": d.tolist()}),
        )
    signs = np.where(d < 0, -1.0, 1.0)
    r = r * signs
    q = signs[:, None] * q
    a = np.diag(r).copy()
    n = np.triu(r / a[None, :], 1) + np.eye(r.shape[0])
    return n, a, q


def iwasawa_nak(g: SpecialLinear, policy: NumericPolicy = DEFAULT_POLICY) -> IwasawaFactors:
    """Factor g = n a k with n unit upper, a positive diagonal, k in SO(n).

    Args:
        g: The group element.
        policy: Tolerances; a condition number above
            policy.condition_warning triggers a RuntimeWarning.

    Returns:
        The validated factors.

    Raises:
        SingularInput: If the factorization pivot underflows.
    """
    cond = float(np.linalg.cond(g.entries))
    if cond > policy.condition_warning:
        warnings.warn(
            f"iwasawa_nak input is ill-conditioned (cond={cond:.3g})",
            RuntimeWarning,
            stacklevel=2,
        )
    n, a, k = iwasawa_arrays(g.entries, policy)
    a = a / np.prod(a) ** (1.0 / a.size)
    return IwasawaFactors(UnitUpper(n), PositiveDiagonal(a), Orthogonal(k))


def random_special_linear(rng: np.random.Generator, n: int, scale: float = 1.0) -> SpecialLinear:
    """A random element exp-distributed around the identity.

    The element is k1 exp(D) k2 with Haar-like rotations and a diagonal D
    whose entries are standard normal times scale, so the distance to
    the base point is of order scale.
    """
    k1 = _random_rotation(rng, n)
    k2 = _random_rotation(rng, n)
    d = rng.standard_normal(n) * scale
    d -= d.mean()
    return SpecialLinear(k1 @ np.diag(np.exp(d)) @ k2)


def _random_rotation(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))[None, :]
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_rotation(rng: np.random.Generator, n: int) -> Orthogonal:
    """A Haar-distributed element of SO(n)."""
    return Orthogonal(_random_rotation(rng, n))


__all__ = [
    "IwasawaFactors",
    "Orthogonal",
    "PositiveDiagonal",
    "SpecialLinear",
    "UnitUpper",
    "iwasawa_arrays",
    "iwasawa_nak",
    "random_rotation",
    "random_special_linear",
]
