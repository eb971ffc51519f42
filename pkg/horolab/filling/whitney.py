"""Lipschitz fillings of spheres in Z over a Whitney decomposition.

The domain is [-L, L] (m = 0) or the square [-L, L]^2 (m = 1), scaled
so that the boundary map is at most 1-Lipschitz. Dyadic cells are split
while they are larger than their distance to the boundary, down to a
minimum size, and the square is balanced and fan-triangulated from the
cell centers.

Every vertex v gets a label: the vertex of alpha closest to the
boundary point nearest v. A simplex whose vertices all lie at least
1/c from the boundary is large and mapped through Omega on the simplex
of its labels. The others are small: their boundary is mapped first
and coned off by geodesics in X, then retracted to Z. Edges on the
boundary of the domain follow alpha itself.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from horolab.core.config import Calibration, ExperimentGrid
from horolab.core.exceptions import ConfigurationError, ErrorContext, ResolutionExceeded
from horolab.core.records import SampleSummary
from horolab.filling.omega import OmegaData, simplex_grid
from horolab.horosphere.context import HorosphereContext
from horolab.horosphere.retraction import retract_to_Z
from horolab.symspace.busemann import busemann
from horolab.symspace.points import Point, distance, geodesic_between
from horolab.utilities import debug_print

Key = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class HorosphereSphere:
    """A piecewise geodesic m-sphere in Z.

    For m = 1 the loop is parametrized by s in [0, 1), vertex i sitting
    at s = i / k; between vertices it follows the geodesic of X retracted
    to Z.

    Raises:
        ConfigurationError: On a wrong point count or a point off Z.
    """

    dimension: int
    points: tuple[Point, ...]
    ctx: HorosphereContext

    def __post_init__(self) -> None:
        if self.dimension == 0 and len(self.points) != 2:
            raise ConfigurationError("A 0-sphere in Z is a pair of points")
        if self.dimension == 1 and len(self.points) < 3:
            raise ConfigurationError("A loop in Z needs at least 3 points")
        if self.dimension not in (0, 1):
            raise ConfigurationError(f"Sphere dimension must be 0 or 1, got {self.dimension}")
        for z in self.points:
            h = busemann(z, self.ctx.cfg)
            if abs(h) > self.ctx.policy.level_set:
                raise ConfigurationError(f"Sphere point off the horosphere (h = {h:.3g})")

    @property
    def degenerate(self) -> bool:
        return all(distance(self.points[0], z) < 1e-12 for z in self.points[1:])

    def at(self, s: float) -> Point:
        if self.dimension == 0:
            return self.points[0] if s < 0.5 else self.points[1]
        k = len(self.points)
        scaled = (s % 1.0) * k
        i = min(int(scaled), k - 1)
        f = scaled - i
        if f == 0.0:
            return self.points[i]
        mid = geodesic_between(self.points[i], self.points[(i + 1) % k], f)
        return retract_to_Z(mid, self.ctx)

    def lipschitz(self, resolution: int = 8) -> float:
        """Sampled Lipschitz constant on the unit circle, or half the gap for m = 0."""
        if self.dimension == 0:
            return distance(self.points[0], self.points[1]) / 2.0
        steps = resolution * len(self.points)
        values = [self.at(j / steps) for j in range(steps)]
        gap = 2.0 * math.pi / steps
        return max(
            distance(values[j], values[(j + 1) % steps]) / gap for j in range(steps)
        )


@dataclass(frozen=True)
class WhitneyCell:
    """Dyadic cell at a level, indexed by its integer position."""

    level: int
    index: Key

    def bounds(self, half_width: float) -> tuple[np.ndarray, float]:
        size = 2.0 * half_width / 2**self.level
        return -half_width + size * np.asarray(self.index, dtype=float), size

    def distance_to_boundary(self, half_width: float) -> float:
        low, size = self.bounds(half_width)
        return float(min(np.min(low + half_width), np.min(half_width - (low + size))))

    def children(self) -> list[WhitneyCell]:
        return [
            WhitneyCell(self.level + 1, tuple(2 * i + o for i, o in zip(self.index, offset)))
            for offset in itertools.product((0, 1), repeat=len(self.index))
        ]


def whitney_cells(
    half_width: float, dim: int, max_level: int, budget: int
) -> list[WhitneyCell]:
    """Leaves of the decomposition of the cube [-L, L]^dim.

    A cell is split while it is larger than its distance to the boundary
    and shallower than max_level.

    Raises:
        ResolutionExceeded: If the leaf count passes budget.
    """
    queue = [WhitneyCell(0, (0,) * dim)]
    leaves: list[WhitneyCell] = []
    while queue:
        cell = queue.pop()
        _, size = cell.bounds(half_width)
        if cell.level < max_level and size > cell.distance_to_boundary(half_width):
            queue.extend(cell.children())
        else:
            leaves.append(cell)
        if len(leaves) + len(queue) > budget:
            raise ResolutionExceeded(
                f"Whitney decomposition passes {budget} cells",
                context=ErrorContext(operation="whitney_fill", lemma="whitney-extension"),
            )
    if dim == 2:
        leaves = _balanced(leaves, budget)
    return sorted(leaves, key=lambda c: (c.level, c.index))


def _balanced(leaves: list[WhitneyCell], budget: int) -> list[WhitneyCell]:
    """Split leaves until edge neighbours differ by at most one level."""
    current = set(leaves)
    while True:
        top = max(c.level for c in current)
        # ancestors, per level, of every leaf at that level or finer
        finer: dict[int, set[Key]] = {level: set() for level in range(top + 1)}
        for cell in current:
            for level in range(cell.level + 1):
                shift = cell.level - level
                finer[level].add(tuple(k >> shift for k in cell.index))
        split = [cell for cell in current if _needs_split(cell, finer, top)]
        if not split:
            return list(current)
        for cell in split:
            current.remove(cell)
            current.update(cell.children())
        if len(current) > budget:
            raise ResolutionExceeded(
                f"Balanced Whitney decomposition passes {budget} cells",
                context=ErrorContext(operation="whitney_fill", lemma="whitney-extension"),
            )


def _needs_split(cell: WhitneyCell, finer: dict[int, set[Key]], top: int) -> bool:
    """Whether a neighbour across an edge is two or more levels finer."""
    fine = cell.level + 2
    if fine > top:
        return False
    i0, j0 = (4 * k for k in cell.index)
    for t in range(4):
        for probe in ((i0 - 1, j0 + t), (i0 + 4, j0 + t), (i0 + t, j0 - 1), (i0 + t, j0 + 4)):
            if probe in finer[fine]:
                return True
    return False


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Vertices on an integer lattice of spacing unit, and simplices."""

    half_width: float
    unit: float
    keys: tuple[Key, ...]
    simplices: tuple[tuple[int, ...], ...]
    whitney_constant: float

    def coordinates(self, i: int) -> np.ndarray:
        return -self.half_width + self.unit * np.asarray(self.keys[i], dtype=float)

    def boundary_distance(self, i: int) -> float:
        return float(self.half_width - np.max(np.abs(self.coordinates(i))))


def _whitney_constant(cells: list[WhitneyCell], half_width: float, dim: int) -> float:
    """Largest ratio between diam C and d(C, boundary), either way, over interior cells."""
    worst = 1.0
    for cell in cells:
        dist = cell.distance_to_boundary(half_width)
        if dist <= 0:
            continue
        diam = cell.bounds(half_width)[1] * math.sqrt(dim)
        worst = max(worst, diam / dist, dist / diam)
    return worst


def triangulate(cells: list[WhitneyCell], half_width: float, dim: int) -> Triangulation:
    """Intervals for dim 1; a fan from each cell center for dim 2."""
    top = max(c.level for c in cells) + 1
    unit = 2.0 * half_width / 2**top
    keys: dict[Key, int] = {}

    def vertex(key: Key) -> int:
        return keys.setdefault(key, len(keys))

    corners = set()
    for cell in cells:
        scale = 2 ** (top - cell.level)
        for offset in itertools.product((0, 1), repeat=dim):
            corners.add(tuple(scale * (k + o) for k, o in zip(cell.index, offset)))
    simplices = []
    for cell in cells:
        scale = 2 ** (top - cell.level)
        low = tuple(scale * k for k in cell.index)
        if dim == 1:
            simplices.append((vertex(low), vertex((low[0] + scale,))))
            continue
        i0, j0 = low
        ring = [(i0 + t, j0) for t in range(scale)]
        ring += [(i0 + scale, j0 + t) for t in range(scale)]
        ring += [(i0 + scale - t, j0 + scale) for t in range(scale)]
        ring += [(i0, j0 + scale - t) for t in range(scale)]
        perimeter = [vertex(p) for p in ring if p in corners]
        center = vertex((i0 + scale // 2, j0 + scale // 2))
        for a, b in zip(perimeter, perimeter[1:] + perimeter[:1]):
            simplices.append((center, a, b))
    ordered = tuple(k for k, _ in sorted(keys.items(), key=lambda item: item[1]))
    return Triangulation(
        half_width, unit, ordered, tuple(simplices), _whitney_constant(cells, half_width, dim)
    )


@dataclass(frozen=True, eq=False)
class FilledDisk:
    """A filling of a sphere in Z.

    Attributes:
        dimension: m; the disk has dimension m + 1.
        half_width: L of the domain [-L, L]^(m+1).
        vertices: Domain coordinates of the triangulation vertices.
        values: The filling at the vertices.
        simplices: Vertex indices of the intervals or triangles.
        lipschitz: Sampled Lipschitz constant, for the domain scaled to [-1, 1].
        length: Length of the sampled path (m = 0), 0 otherwise.
        records: Measured checks.
    """

    dimension: int
    half_width: float
    vertices: np.ndarray
    values: tuple[Point, ...]
    simplices: tuple[tuple[int, ...], ...]
    lipschitz: float
    length: float
    records: tuple[SampleSummary, ...] = field(default=())


def _boundary_param(x: np.ndarray, half_width: float) -> float:
    """Parameter in [0, 1) of the boundary point nearest x."""
    if x.size == 1:
        return 0.0 if x[0] <= 0 else 1.0
    b = x.copy()
    axis = int(np.argmax(np.abs(b)))
    b[axis] = half_width if b[axis] >= 0 else -half_width
    return (math.atan2(b[1], b[0]) / (2.0 * math.pi)) % 1.0


class _Filler:
    """Evaluation of the filling at domain points, with a memo by position."""

    def __init__(
        self,
        alpha: HorosphereSphere,
        tri: Triangulation,
        od: OmegaData,
        threshold: float,
    ) -> None:
        self.alpha = alpha
        self.tri = tri
        self.od = od
        self.ctx = alpha.ctx
        self.threshold = threshold
        self.memo: dict[tuple[float, ...], Point] = {}
        k = len(alpha.points)
        self.labels = []
        self.large = []
        for i in range(len(tri.keys)):
            s = _boundary_param(tri.coordinates(i), tri.half_width)
            self.labels.append(int(round(s * k)) % k if alpha.dimension == 1 else int(s))
            self.large.append(tri.boundary_distance(i) >= threshold)
        self.base = [self._vertex_value(i) for i in range(len(tri.keys))]

    def _on_boundary(self, i: int) -> bool:
        return self.tri.boundary_distance(i) <= 1e-12 * self.tri.half_width

    def _vertex_value(self, i: int) -> Point:
        if self._on_boundary(i):
            return self.alpha.at(_boundary_param(self.tri.coordinates(i), self.tri.half_width))
        if self.large[i]:
            return self.od.omega((self.labels[i],), [1.0])
        return self.alpha.points[self.labels[i]]

    def _labelled(self, vertices: tuple[int, ...], weights: np.ndarray) -> Point:
        """Omega on the simplex of the labels, weights summed per label."""
        totals: dict[int, float] = {}
        for v, w in zip(vertices, weights):
            totals[self.labels[v]] = totals.get(self.labels[v], 0.0) + float(w)
        face = tuple(sorted(totals))
        return self.od.omega(face, [totals[f] for f in face])

    def _boundary_edge(self, a: int, b: int) -> bool:
        xa, xb = self.tri.coordinates(a), self.tri.coordinates(b)
        half = self.tri.half_width
        return any(
            abs(abs(xa[i]) - half) <= 1e-12 * half
            and abs(abs(xb[i]) - half) <= 1e-12 * half
            and xa[i] * xb[i] > 0
            for i in range(xa.size)
        )

    def edge(self, a: int, b: int, f: float) -> Point:
        """The filling at fraction f from vertex a to vertex b."""
        if a > b:
            a, b, f = b, a, 1.0 - f
        if f <= 0.0:
            return self.base[a]
        if f >= 1.0:
            return self.base[b]
        x = (1.0 - f) * self.tri.coordinates(a) + f * self.tri.coordinates(b)
        key = tuple(np.round(x, 12))
        if key in self.memo:
            return self.memo[key]
        if x.size > 1 and self._boundary_edge(a, b):
            value = self.alpha.at(_boundary_param(x, self.tri.half_width))
        elif self.large[a] and self.large[b]:
            value = self._labelled((a, b), np.array([1.0 - f, f]))
        else:
            value = retract_to_Z(geodesic_between(self.base[a], self.base[b], f), self.ctx)
        self.memo[key] = value
        return value

    def triangle(self, simplex: tuple[int, ...], w: np.ndarray) -> Point:
        """The filling at barycentric coordinates w of a triangle."""
        support = [i for i in range(3) if w[i] > 1e-14]
        if len(support) == 1:
            return self.base[simplex[support[0]]]
        if len(support) == 2:
            i, j = support
            return self.edge(simplex[i], simplex[j], float(w[j] / (w[i] + w[j])))
        x = sum(wi * self.tri.coordinates(v) for wi, v in zip(w, simplex))
        key = tuple(np.round(x, 12))
        if key in self.memo:
            return self.memo[key]
        if all(self.large[v] for v in simplex):
            value = self._labelled(simplex, w)
        else:
            s = 3.0 * float(w.min())
            rim = (w - s / 3.0) / (1.0 - s) if s < 1.0 else np.full(3, 1.0 / 3.0)
            center = geodesic_between(
                geodesic_between(self.base[simplex[0]], self.base[simplex[1]], 0.5),
                self.base[simplex[2]],
                1.0 / 3.0,
            )
            outer = self.triangle(simplex, rim) if s < 1.0 else center
            value = retract_to_Z(geodesic_between(outer, center, s), self.ctx)
        self.memo[key] = value
        return value


def _sample_lipschitz(
    points: list[np.ndarray], values: list[Point], pairs: list[tuple[int, int]]
) -> float:
    worst = 0.0
    for i, j in pairs:
        step = float(np.linalg.norm(points[i] - points[j]))
        if step > 0:
            worst = max(worst, distance(values[i], values[j]) / step)
    return worst


def _constant_disk(alpha: HorosphereSphere) -> FilledDisk:
    dim = alpha.dimension + 1
    vertices = np.array([[0.0] * dim])
    return FilledDisk(alpha.dimension, 1.0, vertices, (alpha.points[0],), ((0,),), 0.0, 0.0)


def whitney_fill(
    alpha: HorosphereSphere,
    calibration: Calibration = Calibration(),
    grid: ExperimentGrid = ExperimentGrid(),
    *,
    od: OmegaData | None = None,
    seed: int = 0,
    checks: int = 64,
    progress: Callable[[str], None] | None = None,
) -> FilledDisk:
    """Fill alpha by a Lipschitz disk in Z.

    Raises:
        ConfigurationError: If m > k - 2.
        ResolutionExceeded: If the Whitney cell count passes the budget.
        CalibrationFailure: From the Omega construction.
    """
    ctx = alpha.ctx
    m = alpha.dimension
    if m > ctx.n - 3:
        raise ConfigurationError(
            f"Filling a {m}-sphere needs rank at least {m + 2}",
            context=ErrorContext(operation="whitney_fill", lemma="whitney-extension"),
        )
    if alpha.degenerate:
        return _constant_disk(alpha)
    if od is None:
        od = OmegaData(
            alpha.points, ctx, calibration, seed=seed, checks=checks,
            resolution=grid.cone_resolution,
        )
    lip_alpha = alpha.lipschitz()
    half_width = max(1.0, lip_alpha if m == 0 else math.pi * lip_alpha / 4.0)
    max_level = max(grid.whitney_depth, math.ceil(math.log2(2.0 * half_width)))
    cells = whitney_cells(half_width, m + 1, max_level, grid.whitney_budget)
    tri = triangulate(cells, half_width, m + 1)
    threshold = 1.0 / tri.whitney_constant
    debug_print(f"whitney_fill: {len(cells)} cells, c = {tri.whitney_constant:.3g}")
    if progress is not None:
        progress(f"{len(cells)} Whitney cells, {len(tri.simplices)} simplices")
    filler = _Filler(alpha, tri, od, threshold)

    points: list[np.ndarray] = []
    values: list[Point] = []
    pairs: list[tuple[int, int]] = []
    length = 0.0
    if m == 0:
        steps = grid.disk_resolution
        for a, b in sorted(tri.simplices, key=lambda s: tri.keys[s[0]]):
            start = len(points)
            for j in range(steps + 1):
                f = j / steps
                points.append((1 - f) * tri.coordinates(a) + f * tri.coordinates(b))
                values.append(filler.edge(a, b, f))
            pairs += [(start + j, start + j + 1) for j in range(steps)]
        length = sum(distance(values[i], values[j]) for i, j in pairs)
    else:
        steps = max(1, grid.disk_resolution // 8)
        for simplex in tri.simplices:
            index = {}
            for w in simplex_grid(3, steps):
                index[tuple(np.round(w * steps).astype(int))] = len(points)
                points.append(sum(wi * tri.coordinates(v) for wi, v in zip(w, simplex)))
                values.append(filler.triangle(simplex, w))
            for key, i in index.items():
                for a, b in itertools.permutations(range(3), 2):
                    moved = list(key)
                    moved[a] += 1
                    moved[b] -= 1
                    j = index.get(tuple(moved))
                    if j is not None and i < j:
                        pairs.append((i, j))

    lipschitz = _sample_lipschitz(points, values, pairs) * half_width
    heights = max(abs(busemann(x, ctx.cfg)) for x in values)
    residual = 0.0
    for x, value in zip(points, values):
        if float(half_width - np.max(np.abs(x))) <= 1e-12 * half_width:
            target = alpha.at(_boundary_param(x, half_width))
            residual = max(residual, distance(value, target))
    records = [
        SampleSummary.at_most("fill.height", heights, 1e-7, len(values)),
        SampleSummary.at_most("fill.boundary_residual", residual, 1e-9, len(values)),
        SampleSummary.at_most(
            "fill.lipschitz",
            lipschitz,
            calibration.fill_cap * (lip_alpha + 1.0),
            len(pairs),
            lip_alpha=lip_alpha,
            whitney_constant=tri.whitney_constant,
            cells=len(cells),
        ),
    ]
    vertices = np.array([tri.coordinates(i) for i in range(len(tri.keys))])
    return FilledDisk(
        m, half_width, vertices, tuple(filler.base), tri.simplices, lipschitz, length,
        tuple(records),
    )


__all__ = [
    "FilledDisk",
    "HorosphereSphere",
    "Triangulation",
    "WhitneyCell",
    "triangulate",
    "whitney_cells",
    "whitney_fill",
]
