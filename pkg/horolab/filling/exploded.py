"""The exploded simplex and its two cellular projections.

The simplex Delta of dimension d is cut into the cells

    (1 - eps) conv(b_delta0, ..., b_deltaj) + eps delta

for a face delta and a chain delta = delta0 < ... < deltaj of faces
ending at Delta. The central cell (j = 0, delta = Delta) is a copy of
Delta scaled by eps. On a cell, p1 keeps the delta part, which sends
the central cell onto Delta, and p2 keeps the barycentric-subdivision
part, which collapses the central cell to the barycenter.

Points are barycentric coordinates, vectors of length d + 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from horolab.core.exceptions import ConfigurationError, ErrorContext, GeometryError

Face = tuple[int, ...]

# Slack on the nonnegativity of cell coordinates
_CELL_TOL = 1e-10


def faces_of(vertices: Face) -> list[Face]:
    """Nonempty faces, smallest first."""
    return [
        face
        for size in range(1, len(vertices) + 1)
        for face in itertools.combinations(vertices, size)
    ]


def barycenter_of_face(face: Face, d: int) -> np.ndarray:
    b = np.zeros(d + 1)
    b[list(face)] = 1.0 / len(face)
    return b


def maximal_chains(start: Face, top: Face) -> list[tuple[Face, ...]]:
    """Chains start = f0 < f1 < ... < top that add one vertex at a time."""
    if start == top:
        return [(top,)]
    chains = []
    for vertex in top:
        if vertex in start:
            continue
        bigger = tuple(sorted(start + (vertex,)))
        chains.extend((start,) + rest for rest in maximal_chains(bigger, top))
    return chains


@dataclass(frozen=True)
class ExplodedCell:
    """The cell eps face + (1 - eps) conv(barycenters of chain)."""

    face: Face
    chain: tuple[Face, ...]

    @property
    def dimension(self) -> int:
        return len(self.face) - 1 + len(self.chain) - 1


@dataclass(frozen=True)
class CellCoordinates:
    """A point of a cell: weights on the face vertices and on the chain barycenters."""

    cell: ExplodedCell
    lam: np.ndarray
    mu: np.ndarray


@dataclass(frozen=True, eq=False)
class ExplodedComplex:
    """The exploded d-simplex for collar eps.

    Attributes:
        d: Dimension of the simplex.
        collar: The scale eps of the central copy.
        cells: Top-dimensional cells; they partition the simplex.
        lipschitz_p1: Largest Lipschitz constant of p1 over the cells.
        lipschitz_p2: Largest Lipschitz constant of p2 over the cells.
    """

    d: int
    collar: float
    cells: tuple[ExplodedCell, ...]
    lipschitz_p1: float
    lipschitz_p2: float

    @property
    def central(self) -> ExplodedCell:
        top = tuple(range(self.d + 1))
        return ExplodedCell(top, (top,))

    def _matrices(self, cell: ExplodedCell) -> tuple[np.ndarray, np.ndarray]:
        eye = np.eye(self.d + 1)
        v = eye[:, list(cell.face)]
        b = np.column_stack([barycenter_of_face(f, self.d) for f in cell.chain])
        return v, b

    def realize(self, coords: CellCoordinates) -> np.ndarray:
        """(1 - eps) sum mu_i b_i + eps sum lam_j v_j."""
        v, b = self._matrices(coords.cell)
        return (1.0 - self.collar) * (b @ coords.mu) + self.collar * (v @ coords.lam)

    def locate(self, q: np.ndarray) -> CellCoordinates:
        """Cell coordinates of a point of the simplex.

        Raises:
            GeometryError: If q is not in the simplex.
        """
        q = np.asarray(q, dtype=float)
        if q.shape != (self.d + 1,) or q.min() < -_CELL_TOL or abs(q.sum() - 1.0) > 1e-9:
            raise GeometryError(
                "Point is not in barycentric coordinates of the simplex",
                context=ErrorContext(operation="ExplodedComplex.locate", detail={"q": q.tolist()}),
            )
        for cell in self.cells:
            v, b = self._matrices(cell)
            nf, nc = v.shape[1], b.shape[1]
            system = np.zeros((self.d + 3, nf + nc))
            system[: self.d + 1, :nf] = self.collar * v
            system[: self.d + 1, nf:] = (1.0 - self.collar) * b
            system[self.d + 1, :nf] = 1.0
            system[self.d + 2, nf:] = 1.0
            rhs = np.concatenate([q, [1.0, 1.0]])
            sol, *_ = np.linalg.lstsq(system, rhs, rcond=None)
            if np.linalg.norm(system @ sol - rhs) > 1e-9 or sol.min() < -_CELL_TOL:
                continue
            lam = np.clip(sol[:nf], 0.0, None)
            mu = np.clip(sol[nf:], 0.0, None)
            return CellCoordinates(cell, lam / lam.sum(), mu / mu.sum())
        raise GeometryError(
            "No exploded cell contains the point",
            context=ErrorContext(operation="ExplodedComplex.locate", detail={"q": q.tolist()}),
        )

    def p1(self, q: np.ndarray) -> np.ndarray:
        """Projection onto the simplex; a point of the cell's face."""
        coords = self.locate(q)
        v, _ = self._matrices(coords.cell)
        return v @ coords.lam

    def p2(self, q: np.ndarray) -> np.ndarray:
        """Projection onto the barycentric subdivision; a point of the chain simplex."""
        coords = self.locate(q)
        _, b = self._matrices(coords.cell)
        return b @ coords.mu


def _cell_lipschitz(v: np.ndarray, b: np.ndarray, collar: float) -> tuple[float, float]:
    """Operator norms of p1 and p2 on one cell, in barycentric coordinates."""
    nf, nc = v.shape[1], b.shape[1]
    constraints = np.zeros((2, nf + nc))
    constraints[0, :nf] = 1.0
    constraints[1, nf:] = 1.0
    tangent = scipy.linalg.null_space(constraints)
    q_map = np.hstack([collar * v, (1.0 - collar) * b]) @ tangent
    if q_map.shape[1] == 0:
        return 0.0, 0.0
    inverse = np.linalg.pinv(q_map)
    p1 = np.hstack([v, np.zeros_like(b)]) @ tangent @ inverse
    p2 = np.hstack([np.zeros_like(v), b]) @ tangent @ inverse
    return float(np.linalg.norm(p1, 2)), float(np.linalg.norm(p2, 2))


@lru_cache(maxsize=None)
def build_exploded(d: int, collar: float = 1.0 / 3.0) -> ExplodedComplex:
    """The exploded d-simplex, d in {0, 1, 2}.

    Raises:
        ConfigurationError: For d outside {0, 1, 2} or a collar outside (0, 1).
    """
    if d not in (0, 1, 2):
        raise ConfigurationError(f"Exploded simplices are built for d in {{0, 1, 2}}, got {d}")
    if not 0.0 < collar < 1.0:
        raise ConfigurationError(f"Collar must lie in (0, 1), got {collar!r}")
    top = tuple(range(d + 1))
    cells = tuple(
        ExplodedCell(face, chain)
        for face in faces_of(top)[::-1]
        for chain in maximal_chains(face, top)
    )
    complex_ = ExplodedComplex(d, collar, cells, 0.0, 0.0)
    lip1 = lip2 = 0.0
    for cell in cells:
        v, b = complex_._matrices(cell)
        c1, c2 = _cell_lipschitz(v, b, collar)
        lip1, lip2 = max(lip1, c1), max(lip2, c2)
    return ExplodedComplex(d, collar, cells, lip1, lip2)


__all__ = [
    "CellCoordinates",
    "ExplodedCell",
    "ExplodedComplex",
    "Face",
    "barycenter_of_face",
    "build_exploded",
    "faces_of",
    "maximal_chains",
]
