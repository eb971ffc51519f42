"""Unit tests for flat spheres on Z and path distances inside Z."""

from __future__ import annotations

import numpy as np
import pytest

from horolab.core.config import RunConfig
from horolab.core.exceptions import ConfigurationError
from horolab.experiments.suites import point_at_height
from horolab.filling.divergence import (
    flat_sphere_on_Z,
    mesh_distance,
    perpendicular_directions,
    sphere_directions,
    stored_opposite_flat,
)
from horolab.horosphere.context import HorosphereContext
from horolab.horosphere.retraction import retract_to_Z
from horolab.liecore.algebra import CartanVector
from horolab.symspace.busemann import busemann
from horolab.symspace.points import Point, distance, random_point


class TestSphereDirections:
    """Tests for sphere_directions."""

    def test_rank_one(self) -> None:
        directions, pairs = sphere_directions(2, 10)
        assert directions.shape == (2, 2)
        assert directions[0] == pytest.approx(-directions[1])
        assert pairs == [(0, 1)]

    @pytest.mark.parametrize(("n", "samples"), [(3, 12), (4, 30)])
    def test_unit_trace_zero(self, n: int, samples: int) -> None:
        directions, pairs = sphere_directions(n, samples)
        assert directions.shape == (samples, n)
        assert np.linalg.norm(directions, axis=1) == pytest.approx(np.ones(samples))
        assert directions.sum(axis=1) == pytest.approx(np.zeros(samples), abs=1e-12)
        assert all(i < j for i, j in pairs)

    def test_circle_pairs(self) -> None:
        _, pairs = sphere_directions(3, 6)
        assert pairs == [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]

    def test_rank_four(self) -> None:
        with pytest.raises(ConfigurationError):
            sphere_directions(5, 10)


class TestPerpendicularDirections:
    """Tests for perpendicular_directions."""

    def test_sl3(self, tau3: CartanVector) -> None:
        basis = perpendicular_directions(tau3.v)
        assert basis.shape == (3, 1)
        assert float(basis[:, 0] @ tau3.v) == pytest.approx(0.0, abs=1e-12)
        assert float(basis[:, 0].sum()) == pytest.approx(0.0, abs=1e-12)


class TestFlatSphere:
    """Tests for flat_sphere_on_Z."""

    def test_needs_height(self, ctx3: HorosphereContext) -> None:
        with pytest.raises(ConfigurationError):
            flat_sphere_on_Z(Point.base(3), ctx3)

    def test_stored_flat_is_cached(self) -> None:
        assert stored_opposite_flat(3) is stored_opposite_flat(3)

    def test_points_on_Z(self, ctx3: HorosphereContext, rng: np.random.Generator) -> None:
        x = point_at_height(rng, ctx3, 3.0)
        cycle = flat_sphere_on_Z(x, ctx3, samples=8)
        assert cycle.height == pytest.approx(3.0)
        assert len(cycle.points) == 8
        for z in cycle.points:
            assert busemann(z, ctx3.cfg) == pytest.approx(0.0, abs=1e-7)
        assert cycle.lipschitz > 0
        assert cycle.antipode(0) == 4


class TestMeshDistance:
    """Tests for mesh_distance."""

    def test_same_point(self, ctx3: HorosphereContext) -> None:
        z = Point.base(3)
        assert mesh_distance(z, z, ctx3, steps=5, levels=5) == pytest.approx(0.0, abs=1e-9)

    def test_at_least_ambient(self, ctx3: HorosphereContext, rng: np.random.Generator) -> None:
        z1 = retract_to_Z(random_point(rng, 3, 1.0), ctx3)
        z2 = retract_to_Z(random_point(rng, 3, 1.0), ctx3)
        assert mesh_distance(z1, z2, ctx3, steps=11, levels=9) >= distance(z1, z2) - 1e-9

    def test_sl3_only(self, rank1_config: RunConfig) -> None:
        ctx = HorosphereContext.from_run(rank1_config)
        with pytest.raises(ConfigurationError):
            mesh_distance(Point.base(2), Point.base(2), ctx)
