"""The maps Omega_infty, F and Omega = I o W over a simplex of points of Z.

Faces are sorted tuples of vertex indices. Each face delta carries an
anchor x_delta and a map Omega_infty on delta into the shadow of the
anchor:

- a vertex z = [n a] gets x_z = [n a exp(sec(theta) tau_0)], at height 1,
  and the barycenter b_z of the chamber n c*;
- a higher face is built from its boundary: a start x_0 far enough
  along tau_0 that every boundary shadow sits in S_x0 is searched for
  below the enlarge time, and contract_in_shadow cones the boundary
  sphere off. Its new point becomes x_delta.

F cones the anchors over the barycentric subdivision, and
Omega(q) = i_F(p2 q)(Omega_infty(p1 q)) on the exploded simplex.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from horolab.chambers.flags import Chamber, flat_spanned, longest_element
from horolab.chambers.regions import WeylChamberRegion, distance_to_weyl_chamber, parabolic_rep
from horolab.chambers.shadows import random_chamber_in_shadow, rho, translate_along
from horolab.core.config import Calibration
from horolab.core.exceptions import CalibrationFailure, ConfigurationError, ErrorContext
from horolab.core.records import SampleSummary
from horolab.filling.exploded import Face, barycenter_of_face, build_exploded, faces_of
from horolab.filling.spheres import PiecewiseGeodesicSphere, ShadowCone, contract_in_shadow
from horolab.horosphere.context import HorosphereContext
from horolab.horosphere.product import YPoint
from horolab.horosphere.projection import project_to_Z
from horolab.liecore.groups import SpecialLinear
from horolab.symspace.boundary import BoundaryPoint
from horolab.symspace.busemann import busemann
from horolab.symspace.points import Point, distance, geodesic_between
from horolab.utilities import debug_print, make_rng

# Doublings of the enlarge time searched before a face build gives up
_ENLARGE_RETRIES = 3


@dataclass(frozen=True, eq=False)
class FaceData:
    """Construction data of one face.

    Attributes:
        face: Sorted vertex indices.
        anchor: The point x_delta.
        height: h(x_delta).
        apex: b_z for a vertex, the cone point u otherwise.
        cone: The cone of the boundary sphere, for faces of dimension >= 1.
    """

    face: Face
    anchor: Point
    height: float
    apex: BoundaryPoint
    cone: ShadowCone | None = None

    @property
    def dimension(self) -> int:
        return len(self.face) - 1


def simplex_grid(vertices: int, resolution: int) -> list[np.ndarray]:
    """Barycentric points with denominators resolution."""
    if vertices == 1:
        return [np.ones(1)]
    points = []
    for cuts in itertools.combinations(range(resolution + vertices - 1), vertices - 1):
        parts = np.diff([-1, *cuts, resolution + vertices - 1]) - 1
        points.append(parts / resolution)
    return points


class OmegaData:
    """Faces, anchors and the Omega maps over a vertex set of Z.

    Faces are built on first use, smallest first, so the same object can
    serve a filling whose label simplices are only known as it runs.

    Raises:
        ConfigurationError: If a vertex is off the horosphere.
    """

    def __init__(
        self,
        points: Sequence[Point],
        ctx: HorosphereContext,
        calibration: Calibration = Calibration(),
        *,
        seed: int = 0,
        checks: int = 64,
        resolution: int = 8,
    ) -> None:
        self.ctx = ctx
        self.omega_ctx = dataclasses.replace(ctx, rho=calibration.rho_star)
        self.calibration = calibration
        self.seed = seed
        self.checks = checks
        self.resolution = resolution
        self.points: list[Point] = []
        self.faces: dict[Face, FaceData] = {}
        self.records: list[SampleSummary] = []
        for z in points:
            self.add_point(z)

    @property
    def n(self) -> int:
        return self.ctx.n

    def add_point(self, z: Point) -> int:
        """Register a vertex and return its index."""
        h = busemann(z, self.ctx.cfg)
        if abs(h) > self.ctx.policy.level_set:
            raise ConfigurationError(
                f"Vertices must lie on the horosphere, got h = {h:.3g}",
                context=ErrorContext(operation="build_omega_infty", lemma="omega-infinity"),
            )
        self.points.append(z.with_rep())
        return len(self.points) - 1

    def face(self, face: Sequence[int]) -> FaceData:
        """Data of a face, building it and its subfaces when missing.

        Raises:
            ConfigurationError: If the face has more than k vertices.
            CalibrationFailure: If a property of the construction fails.
        """
        key = tuple(sorted(set(face)))
        if key in self.faces:
            return self.faces[key]
        if len(key) > self.n - 1:
            raise ConfigurationError(
                f"Faces have at most k = {self.n - 1} vertices, got {len(key)}",
                context=ErrorContext(operation="build_omega_infty", lemma="omega-infinity"),
            )
        for sub in faces_of(key)[:-1]:
            self.face(sub)
        data = self._build_vertex(key[0]) if len(key) == 1 else self._build_higher(key)
        self.faces[key] = data
        self._verify(data)
        return data

    def _build_vertex(self, i: int) -> FaceData:
        p = parabolic_rep(self.points[i])
        a = np.diag(p).copy()
        unipotent = p / a[None, :]
        # sec(theta) along tau_0, less the level-set residue of z
        t = (1.0 - busemann(self.points[i], self.ctx.cfg)) / math.cos(self.ctx.theta)
        anchor = Point.from_group(p * np.exp(t * self.ctx.tau0.v)[None, :])
        apex = BoundaryPoint(
            SpecialLinear.normalized(unipotent @ longest_element(self.n)), self.ctx.tau0
        )
        return FaceData((i,), anchor, busemann(anchor, self.ctx.cfg), apex)

    def boundary_sphere(self, face: Face) -> PiecewiseGeodesicSphere:
        """Omega_infty on the boundary of an edge or a triangle."""
        if len(face) == 2:
            return PiecewiseGeodesicSphere(0, tuple(self.faces[(i,)].apex for i in face))
        vertices: list[BoundaryPoint] = []
        flats = []
        for a, b in zip(face, face[1:] + face[:1]):
            edge = self.faces[tuple(sorted((a, b)))]
            assert edge.cone is not None
            start, end = self.faces[(a,)].apex, self.faces[(b,)].apex
            vertices += [start, edge.apex]
            flats += [
                flat_spanned(Chamber(start.frame), edge.cone.chamber, self.ctx.policy),
                flat_spanned(Chamber(end.frame), edge.cone.chamber, self.ctx.policy),
            ]
        return PiecewiseGeodesicSphere(1, tuple(vertices), tuple(flats))

    def _start_ok(self, x0: Point, face: Face) -> bool:
        policy = self.ctx.policy
        for sub in faces_of(face)[:-1]:
            region = WeylChamberRegion(self.faces[sub].anchor)
            if not distance_to_weyl_chamber(x0, region, policy) < 1.0:
                return False
            for lam in simplex_grid(len(sub), max(2, self.resolution // 2)):
                sigma = self.omega_infty(sub, lam)
                if not rho(x0, Chamber(sigma.frame), policy).rho < 1.0:
                    return False
        return True

    def _build_higher(self, face: Face) -> FaceData:
        """Anchor start x_0 on C_z0, then the cone of the boundary sphere.

        x_0 = [p exp(t tau_0)] at the first doubled t whose shadow holds
        every boundary shadow and which lies in every D_x_delta'. The
        enlarge time c_enlarge (r + 1), with r the reach of the boundary
        anchors, bounds the search; it is doubled on each retry.
        """
        policy = self.ctx.policy
        start = self.faces[face[:1]].anchor
        reach = max(distance(start, self.faces[sub].anchor) for sub in faces_of(face)[:-1])
        limit = self.calibration.c_enlarge * (reach + 1.0) * 2.0**_ENLARGE_RETRIES
        t = 1.0
        x0 = None
        while t <= limit:
            candidate = translate_along(start, self.ctx.tau0, t)
            if self._start_ok(candidate, face):
                x0 = candidate
                break
            t *= 2.0
        if x0 is None:
            raise CalibrationFailure(
                f"No anchor start found for face {face}",
                context=ErrorContext(
                    operation="build_omega_infty",
                    lemma="shadow-enlargement",
                    property_id="(2) boundary in Sigma_x0",
                    detail={"reach": reach, "t_max": limit},
                ),
            )
        debug_print(f"face {face}: start at t = {t:g} (reach {reach:.4g})")
        cone = contract_in_shadow(
            self.boundary_sphere(face),
            x0,
            self.ctx.tau0,
            seed=self.seed,
            checks=self.checks,
            resolution=self.resolution,
            policy=policy,
        )
        anchor = cone.x_new
        height = busemann(anchor, self.ctx.cfg)
        debug_print(f"face {face}: anchor height {height:.4g}")
        return FaceData(face, anchor, height, cone.apex, cone)

    def _fail(self, summary: SampleSummary, face: Face, property_id: str) -> None:
        self.records.append(summary)
        if not summary.passed:
            raise CalibrationFailure(
                f"Omega_infty property {property_id} failed on face {face}",
                context=ErrorContext(
                    operation="build_omega_infty",
                    lemma="omega-infinity",
                    property_id=property_id,
                    detail={"measured": summary.measured, "bound": summary.bound},
                ),
            )

    def _verify(self, data: FaceData) -> None:
        """Record properties (1)-(4) of the face, raising on the first failure."""
        policy = self.ctx.policy
        face = data.face
        tag = "-".join(map(str, face))
        vertices = [self.points[i] for i in face]
        diam = max((distance(p, q) for p, q in itertools.combinations(vertices, 2)), default=0.0)
        near = min(distance(data.anchor, z) for z in vertices)
        self._fail(
            SampleSummary.at_most(
                f"omega_infty.p1.{tag}", near / (diam + 1.0), self.calibration.omega_cap, 1
            ),
            face,
            "(1)",
        )
        grid = simplex_grid(len(face), self.resolution)
        worst = max(
            rho(data.anchor, Chamber(self.omega_infty(face, lam).frame), policy).rho
            for lam in grid
        )
        self._fail(
            SampleSummary.at_most(f"omega_infty.p2.{tag}", worst, 1.0, len(grid)), face, "(2)"
        )
        drop = 0.0
        gap = 0.0
        for sub in faces_of(face)[:-1]:
            other = self.faces[sub]
            drop = max(drop, other.height - data.height)
            gap = max(
                gap, distance_to_weyl_chamber(data.anchor, WeylChamberRegion(other.anchor), policy)
            )
        self._fail(
            SampleSummary.at_most(f"omega_infty.p3.height.{tag}", drop, policy.level_set, 1),
            face,
            "(3)",
        )
        self._fail(SampleSummary.at_most(f"omega_infty.p3.dx.{tag}", gap, 1.0, 1), face, "(3)")
        self._fail(
            SampleSummary.at_most(
                f"omega_infty.p4.{tag}", 1.0 - data.height, policy.level_set, 1
            ),
            face,
            "(4)",
        )

    def omega_infty(self, face: Sequence[int], lam: Sequence[float]) -> BoundaryPoint:
        """Omega_infty at barycentric coordinates lam of a face.

        The face is coned radially from its barycenter: the point at
        fraction s = (m + 1) min(lam) lies on the geodesic from the image
        of the boundary point toward the cone apex.
        """
        key = tuple(face)
        weights = np.asarray(lam, dtype=float)
        support = weights > 1e-14
        if not support.all():
            key = tuple(i for i, keep in zip(key, support) if keep)
            weights = weights[support]
        weights = weights / weights.sum()
        data = self.face(key)
        if data.cone is None:
            return data.apex
        m = len(key)
        s = m * float(weights.min())
        if s >= 1.0 - 1e-12:
            return data.apex
        rim = (weights - s / m) / (1.0 - s)
        return data.cone.toward_apex(self.omega_infty(key, rim), s)

    def coned(self, chain: Sequence[Face], mu: Sequence[float]) -> Point:
        """F on the simplex of the barycentric subdivision spanned by chain.

        F is the iterated geodesic cone: the point with weights mu lies at
        fraction mu_top on the geodesic from F of the lower chain to the
        top anchor.
        """
        weights = np.asarray(mu, dtype=float)
        chain = list(chain)
        while len(chain) > 1 and weights[-1] <= 0:
            chain, weights = chain[:-1], weights[:-1]
        top = self.face(chain[-1]).anchor
        rest = float(weights[:-1].sum())
        if len(chain) == 1 or rest <= 0:
            return top
        lower = self.coned(chain[:-1], weights[:-1] / rest)
        return geodesic_between(lower, top, float(weights[-1]) / float(weights.sum()))

    def omega(self, face: Sequence[int], q: Sequence[float]) -> Point:
        """Omega at barycentric coordinates q of a face.

        Raises:
            MembershipViolation: If W(q) leaves Y(rho_star).
        """
        key = tuple(face)
        self.face(key)
        exploded = build_exploded(len(key) - 1, self.calibration.exploded_collar)
        coords = exploded.locate(np.asarray(q, dtype=float))
        sub = tuple(key[i] for i in coords.cell.face)
        sigma = self.omega_infty(sub, coords.lam)
        chain = [tuple(key[i] for i in f) for f in coords.cell.chain]
        x = self.coned(chain, coords.mu)
        YPoint(sigma, x, self.omega_ctx)
        return project_to_Z(x, sigma, self.omega_ctx).z

    def vertex_check(self, i: int) -> SampleSummary:
        """d(Omega(<z>), z) against omega_cap."""
        gap = distance(self.omega((i,), [1.0]), self.points[i])
        return SampleSummary.at_most(f"omega.vertex.{i}", gap, self.calibration.omega_cap, 1)


@dataclass(frozen=True, eq=False)
class ConingMap:
    """F over the barycentric subdivision of one face, with its sampled records."""

    od: OmegaData
    face: Face
    records: tuple[SampleSummary, ...]

    def __call__(self, chain: Sequence[Face], mu: Sequence[float]) -> Point:
        return self.od.coned(chain, mu)


def subdivision_chains(face: Face) -> list[tuple[Face, ...]]:
    """Top simplices of the barycentric subdivision: complete flags of faces."""
    chains = []
    for order in itertools.permutations(face):
        chains.append(tuple(tuple(sorted(order[: i + 1])) for i in range(len(face))))
    return chains


def build_F(
    od: OmegaData, face: Sequence[int] | None = None, grid: int = 20, samples: int = 4
) -> ConingMap:
    """F on the barycentric subdivision of a face, with its properties sampled.

    Records, per simplex of the subdivision, the Lipschitz ratio of F on
    neighbouring grid points against omega_cap (diam + 1), and checks on
    the grid that chambers of S_x_delta0 stay in S_F(y)(rho_star).

    Raises:
        CalibrationFailure: If the shadow inclusion fails at a grid point.
    """
    key = tuple(sorted(face)) if face is not None else tuple(range(len(od.points)))
    od.face(key)
    d = len(key) - 1
    local = {v: i for i, v in enumerate(key)}
    vertices = [od.points[i] for i in key]
    diam = max((distance(p, q) for p, q in itertools.combinations(vertices, 2)), default=0.0)
    rng = make_rng([od.seed, 11, *key])
    records = []
    for number, chain in enumerate(subdivision_chains(key)):
        centers = np.column_stack(
            [barycenter_of_face(tuple(local[v] for v in f), d) for f in chain]
        )
        points = simplex_grid(len(chain), grid)
        values = {tuple(np.round(mu * grid).astype(int)): od.coned(chain, mu) for mu in points}
        lip = 0.0
        for index, x in values.items():
            for i, j in itertools.permutations(range(len(chain)), 2):
                moved = list(index)
                moved[i] += 1
                moved[j] -= 1
                other = values.get(tuple(moved))
                if moved[j] < 0 or other is None:
                    continue
                step = centers @ (np.asarray(moved) - np.asarray(index)) / grid
                lip = max(lip, distance(x, other) / float(np.linalg.norm(step)))
        records.append(
            SampleSummary.at_most(
                f"F.lipschitz.{number}", lip, od.calibration.omega_cap * (diam + 1.0), len(values)
            )
        )
        bottom = od.face(chain[0]).anchor
        worst = 0.0
        for x in values.values():
            for _ in range(samples):
                e = random_chamber_in_shadow(rng, bottom, 1.0)
                worst = max(worst, rho(x, e, od.ctx.policy).rho)
        summary = SampleSummary.at_most(
            f"F.shadow.{number}", worst, od.calibration.rho_star, len(values) * samples
        )
        records.append(summary)
        if not summary.passed:
            raise CalibrationFailure(
                "F leaves the shadow of its lowest anchor",
                context=ErrorContext(
                    operation="build_F",
                    lemma="omega",
                    property_id="(3)",
                    detail={"measured": worst, "chain": [list(f) for f in chain]},
                ),
            )
    return ConingMap(od, key, tuple(records))


def build_omega_infty(
    points: Sequence[Point],
    ctx: HorosphereContext,
    calibration: Calibration = Calibration(),
    *,
    seed: int = 0,
    checks: int = 64,
    resolution: int = 8,
) -> OmegaData:
    """Omega_infty and the anchors on every face of the simplex on points.

    Raises:
        ConfigurationError: If there are more than k points or one is off Z.
        CalibrationFailure: With the failing property id.
    """
    od = OmegaData(
        points, ctx, calibration, seed=seed, checks=checks, resolution=resolution
    )
    od.face(tuple(range(len(od.points))))
    return od


def omega(od: OmegaData, q: Sequence[float], face: Sequence[int] | None = None) -> Point:
    """Omega at barycentric coordinates q, over all vertices unless a face is given."""
    key = tuple(face) if face is not None else tuple(range(len(od.points)))
    return od.omega(key, q)


__all__ = [
    "ConingMap",
    "FaceData",
    "OmegaData",
    "build_F",
    "build_omega_infty",
    "omega",
    "simplex_grid",
    "subdivision_chains",
]
