"""Chambers at infinity as complete flags, opposition and spanned flats.

A chamber is the flag of span-prefixes of a frame's columns. The
standard chamber c has the identity frame; its opposite c* has the
antidiagonal frame w0, so that e_n spans its first step. A chamber d is
opposite c exactly when d = u c* for a unique u in N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from horolab.core.config import NumericPolicy
from horolab.core.exceptions import ErrorContext, ExhaustedTries, NotInFlat, NotOpposite
from horolab.liecore.groups import DEFAULT_POLICY, SpecialLinear, UnitUpper
from horolab.symspace.boundary import BoundaryPoint, Flat, flat_coordinates
from horolab.utilities import debug_print


def longest_element(n: int) -> np.ndarray:
    """The antidiagonal permutation matrix w0."""
    return np.eye(n)[::-1]


def _column_normalized(frame: np.ndarray) -> np.ndarray:
    return frame / np.linalg.norm(frame, axis=0)[None, :]


@dataclass(frozen=True, eq=False)
class Chamber:
    """A chamber of the boundary, given by a frame.

    Attributes:
        frame: Frame whose column span-prefixes form the flag.
        unipotent: The u with this chamber equal to u c*, when known.
    """

    frame: SpecialLinear
    unipotent: UnitUpper | None = None

    @classmethod
    def of_frame(cls, frame: np.ndarray) -> Chamber:
        """Chamber of any nonsingular frame, rescaled to determinant 1."""
        return cls(SpecialLinear.normalized(frame))

    @classmethod
    def standard(cls, n: int) -> Chamber:
        """The standard chamber c."""
        return cls(SpecialLinear(np.eye(n)))

    @classmethod
    def anti_standard(cls, n: int) -> Chamber:
        """The chamber c* opposite c."""
        return cls(SpecialLinear.normalized(longest_element(n)), UnitUpper.identity(n))

    @classmethod
    def from_unipotent(cls, u: UnitUpper) -> Chamber:
        """The chamber u c*."""
        return cls(SpecialLinear.normalized(u.entries @ longest_element(u.n)), u)

    @property
    def n(self) -> int:
        return self.frame.n

    def orthonormal_frame(self) -> np.ndarray:
        """Orthonormal frame with the same flag."""
        q, _ = np.linalg.qr(self.frame.entries)
        return q

    def translate(self, g: np.ndarray) -> Chamber:
        """The chamber g d."""
        return Chamber.of_frame(np.asarray(g) @ self.frame.entries)

    def same_as(self, other: Chamber, tol: float = 1e-8) -> bool:
        """Whether both frames define the same flag."""
        qd, qe = self.orthonormal_frame(), other.orthonormal_frame()
        for k in range(1, self.n):
            head = qe[:, :k]
            residual = qd[:, :k] - head @ (head.T @ qd[:, :k])
            if float(np.linalg.norm(residual)) > tol:
                return False
        return True


def canonical_unipotent(d: Chamber, policy: NumericPolicy = DEFAULT_POLICY) -> UnitUpper:
    """The unique u in N with d = u c*.

    Writing d's frame as F = u w0 B with B upper-triangular gives
    w0 F = (w0 u w0) B, a unit-lower times upper product, so u is read
    off a pivot-free LU factorization of w0 F.

    Raises:
        NotOpposite: If a pivot of the column-normalized frame falls
            below the transversality tolerance.
    """
    if d.unipotent is not None:
        return d.unipotent
    n = d.n
    w0 = longest_element(n)
    upper = w0 @ _column_normalized(d.frame.entries)
    lower = np.eye(n)
    for k in range(n):
        pivot = upper[k, k]
        if abs(pivot) < policy.transversality:
            raise NotOpposite(
                "Chamber is not opposite the standard chamber",
                context=ErrorContext(
                    operation="canonical_unipotent", detail={"step": k, "pivot": float(pivot)}
                ),
            )
        if k == n - 1:
            break
        factors = upper[k + 1 :, k] / pivot
        lower[k + 1 :, k] = factors
        upper[k + 1 :, :] -= np.outer(factors, upper[k, :])
    return UnitUpper(w0 @ lower @ w0)


def transversality_minors(d: Chamber, e: Chamber) -> np.ndarray:
    """|det [Qd_k, Qe_(n-k)]| for k = 1 .. n-1.

    Qd_k is an orthonormal basis of d's k-th flag step. The determinant
    equals, up to sign, the minor pairing Qd_k against the orthogonal
    complement of Qe_(n-k).
    """
    qd, qe = d.orthonormal_frame(), e.orthonormal_frame()
    n = d.n
    return np.array(
        [abs(float(np.linalg.det(np.hstack([qd[:, :k], qe[:, : n - k]])))) for k in range(1, n)]
    )


def are_opposite(d: Chamber, e: Chamber, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """Whether every flag step of d is transversal to the complementary step of e."""
    return bool(np.all(transversality_minors(d, e) > policy.transversality))


def flat_spanned(d: Chamber, e: Chamber, policy: NumericPolicy = DEFAULT_POLICY) -> Flat:
    """The unique flat whose boundary contains the opposite chambers d and e.

    Column i of the frame spans the line d_i meet e_(n-i+1). The frame
    has d as its own flag and e as the flag of its reversed columns.

    Raises:
        NotOpposite: If d and e are not opposite.
    """
    if not are_opposite(d, e, policy):
        raise NotOpposite(
            "A flat is spanned only by opposite chambers",
            context=ErrorContext(
                operation="flat_spanned",
                detail={"minors": transversality_minors(d, e).tolist()},
            ),
        )
    qd, qe = d.orthonormal_frame(), e.orthonormal_frame()
    n = d.n
    columns = []
    for i in range(1, n + 1):
        stacked = np.hstack([qd[:, :i], -qe[:, : n - i + 1]])
        kernel = scipy.linalg.null_space(stacked)
        if kernel.shape[1] == 0:
            _, _, vt = np.linalg.svd(stacked)
            kernel = vt[-1:].T
        w = qd[:, :i] @ kernel[:i, 0]
        columns.append(w / np.linalg.norm(w))
    return Flat(SpecialLinear.normalized(np.column_stack(columns)))


def boundary_chambers(flat: Flat) -> list[Chamber]:
    """The n! chambers at infinity of a flat."""
    return [Chamber(SpecialLinear(frame)) for frame in flat.chamber_frames()]


def find_opposite_flat(
    c: Chamber,
    rng: np.random.Generator | int,
    max_tries: int = 100,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> Flat:
    """A flat all of whose boundary chambers are opposite c.

    Frames are drawn with standard normal entries; the first one whose
    n! chambers all pass are_opposite is returned.

    Raises:
        ExhaustedTries: If max_tries frames all fail.
    """
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    for attempt in range(max_tries):
        candidate = Flat(SpecialLinear.normalized(gen.standard_normal((c.n, c.n))))
        if all(are_opposite(c, d, policy) for d in boundary_chambers(candidate)):
            debug_print(f"find_opposite_flat: certified after {attempt + 1} tries")
            return candidate
    raise ExhaustedTries(
        f"No flat opposite the chamber after {max_tries} tries",
        context=ErrorContext(operation="find_opposite_flat", lemma="opposite-chamber"),
    )


def random_chamber(rng: np.random.Generator, n: int) -> Chamber:
    """A chamber with a standard normal frame."""
    return Chamber.of_frame(rng.standard_normal((n, n)))


def common_flat(
    first: BoundaryPoint, second: BoundaryPoint, policy: NumericPolicy = DEFAULT_POLICY
) -> Flat:
    """A flat whose boundary contains both points.

    The flat of the first point's frame is tried first; it contains every
    point of the first point's chamber. Otherwise the flat spanned by the
    two chambers is used when they are opposite.

    Raises:
        NotInFlat: If neither candidate contains both points.
    """
    own = Flat(first.frame)
    try:
        flat_coordinates(own, second)
        return own
    except NotInFlat:
        pass
    d, e = Chamber(first.frame), Chamber(second.frame)
    if are_opposite(d, e, policy):
        return flat_spanned(d, e, policy)
    raise NotInFlat(
        "No common flat found for the two boundary points",
        context=ErrorContext(operation="common_flat"),
    )


__all__ = [
    "Chamber",
    "are_opposite",
    "boundary_chambers",
    "canonical_unipotent",
    "common_flat",
    "find_opposite_flat",
    "flat_spanned",
    "longest_element",
    "random_chamber",
    "transversality_minors",
]
