"""Spheres cut out of the horosphere by flats, and distances inside Z.

A flat F through a point x of height r, opposite the standard chamber,
meets Z in a (k-1)-sphere: every ray from x inside F crosses Z once.
The sphere grows like r while fillings inside Z grow much faster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.csgraph

from horolab.chambers.flags import Chamber, find_opposite_flat
from horolab.chambers.regions import parabolic_rep, trace_zero_basis
from horolab.core.exceptions import ConfigurationError, ErrorContext
from horolab.horosphere.context import HorosphereContext
from horolab.horosphere.projection import i_u
from horolab.liecore.algebra import CartanVector, d_N_array, nilpotent_exp_array, nilpotent_log_array
from horolab.liecore.groups import SpecialLinear, iwasawa_arrays
from horolab.symspace.boundary import Flat
from horolab.symspace.busemann import busemann
from horolab.symspace.points import Point, distance, distance_arrays


@lru_cache(maxsize=16)
def stored_opposite_flat(n: int, seed: int = 0) -> Flat:
    """A fixed flat opposite the standard chamber."""
    return find_opposite_flat(Chamber.standard(n), seed)


def sphere_directions(n: int, samples: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Unit trace-zero directions covering the sphere, and neighbouring pairs.

    Rank 1 gives the two directions, rank 2 a circle of samples
    directions, rank 3 a Fibonacci sphere whose pairs join each direction
    to its three nearest.
    """
    basis = trace_zero_basis(n)
    k = n - 1
    if k == 1:
        return np.array([basis[:, 0], -basis[:, 0]]), [(0, 1)]
    if k == 2:
        angles = 2.0 * math.pi * np.arange(samples) / samples
        coords = np.column_stack([np.cos(angles), np.sin(angles)])
        return coords @ basis.T, [(j, (j + 1) % samples) for j in range(samples)]
    if k > 3:
        raise ConfigurationError(f"Flat spheres are sampled up to rank 3, got rank {k}")
    golden = math.pi * (3.0 - math.sqrt(5.0))
    z = 1.0 - 2.0 * (np.arange(samples) + 0.5) / samples
    radius = np.sqrt(1.0 - z * z)
    theta = golden * np.arange(samples)
    coords = np.column_stack([radius * np.cos(theta), radius * np.sin(theta), z])
    cosines = coords @ coords.T
    pairs = set()
    for j in range(samples):
        for i in np.argsort(-cosines[j])[1:4]:
            pairs.add((min(j, int(i)), max(j, int(i))))
    return coords @ basis.T, sorted(pairs)


@dataclass(frozen=True, eq=False)
class FlatCycle:
    """The sampled sphere F cap Z.

    Attributes:
        x: The center.
        height: h(x) = r.
        flat: The flat through x.
        directions: Unit directions in the coordinates of the flat, one per row.
        points: i_x of the boundary points of the directions.
        pairs: Neighbouring sample pairs.
        lipschitz: Largest d(points) / angle(directions) over the pairs.
    """

    x: Point
    height: float
    flat: Flat
    directions: np.ndarray
    points: tuple[Point, ...]
    pairs: tuple[tuple[int, int], ...]
    lipschitz: float

    def antipode(self, j: int) -> int:
        """Index of the sample closest to -direction j."""
        return int(np.argmin(self.directions @ self.directions[j]))


def flat_sphere_on_Z(
    x: Point, ctx: HorosphereContext, *, seed: int = 0, samples: int = 64
) -> FlatCycle:
    """The sphere cut out of Z by the flat p F_0 through x.

    With x_0 = [n_0 a_0] the Iwasawa point of the frame of F_0, the
    element p = p_x (n_0 a_0)^-1 of NA moves x_0 to x and keeps F_0
    opposite the standard chamber.

    Raises:
        ConfigurationError: If h(x) <= 1.
    """
    r = busemann(x, ctx.cfg)
    if not r > 1.0:
        raise ConfigurationError(
            f"flat_sphere_on_Z needs h(x) > 1, got {r:.6g}",
            context=ErrorContext(operation="flat_sphere_on_Z", lemma="flat-spheres"),
        )
    frame0 = stored_opposite_flat(x.n, seed).frame.entries
    n0, a0, _ = iwasawa_arrays(frame0)
    p = parabolic_rep(x) @ np.linalg.inv(n0 * a0[None, :])
    flat = Flat(SpecialLinear.normalized(p @ frame0))
    directions, pairs = sphere_directions(x.n, samples)
    points = tuple(
        i_u(x, flat.boundary_point(CartanVector(w)), ctx) for w in directions
    )
    worst = 0.0
    for i, j in pairs:
        angle = CartanVector(directions[i]).angle(CartanVector(directions[j]))
        worst = max(worst, distance(points[i], points[j]) / angle)
    return FlatCycle(x, r, flat, directions, points, tuple(pairs), worst)


def perpendicular_directions(tau: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the trace-zero vectors orthogonal to tau, as columns."""
    return scipy.linalg.null_space(np.vstack([np.ones_like(tau), tau]))


def mesh_distance(
    z1: Point,
    z2: Point,
    ctx: HorosphereContext,
    *,
    steps: int = 81,
    levels: int = 41,
) -> float:
    """Path distance inside Z between two points of an SL(3) horosphere.

    The mesh has nodes [n(l) exp(s w)], with n(l) interpolating log n
    between the endpoints and s running over levels of the direction w
    of A orthogonal to tau. Every node is on Z. Edges join grid
    neighbours, diagonals included, weighted by their ambient distance,
    and the result is the shortest path found by Dijkstra.

    Raises:
        ConfigurationError: If n != 3.
    """
    if ctx.n != 3:
        raise ConfigurationError(f"The horosphere mesh is built for SL(3), got n = {ctx.n}")
    w = perpendicular_directions(ctx.tau.v)[:, 0]
    ends = []
    for z in (z1, z2):
        p = parabolic_rep(z)
        a = np.diag(p).copy()
        ends.append((nilpotent_log_array(p / a[None, :]), float(np.dot(np.log(a), w))))
    (log1, s1), (log2, s2) = ends
    gap = d_N_array(nilpotent_exp_array(log2 - log1))
    reach = max(abs(s1), abs(s2)) + math.log1p(gap) + 2.0
    heights = np.unique(np.concatenate([np.linspace(-reach, reach, levels), [s1, s2]]))
    fractions = np.linspace(0.0, 1.0, steps)
    unipotents = [nilpotent_exp_array((1.0 - f) * log1 + f * log2) for f in fractions]
    reps = [[u * np.exp(s * w)[None, :] for s in heights] for u in unipotents]
    width = len(heights)

    def node(i: int, j: int) -> int:
        return i * width + j

    rows, cols, weights = [], [], []
    for i in range(steps):
        for j in range(width):
            for di, dj in ((0, 1), (1, 0), (1, 1), (1, -1)):
                a, b = i + di, j + dj
                if a >= steps or not 0 <= b < width:
                    continue
                rows.append(node(i, j))
                cols.append(node(a, b))
                weights.append(distance_arrays(reps[i][j], reps[a][b]))
    graph = scipy.sparse.csr_matrix(
        (weights, (rows, cols)), shape=(steps * width, steps * width)
    )
    source = node(0, int(np.searchsorted(heights, s1)))
    target = node(steps - 1, int(np.searchsorted(heights, s2)))
    result = scipy.sparse.csgraph.dijkstra(graph, directed=False, indices=source)
    return float(result[target])


__all__ = [
    "FlatCycle",
    "flat_sphere_on_Z",
    "mesh_distance",
    "perpendicular_directions",
    "sphere_directions",
    "stored_opposite_flat",
]
