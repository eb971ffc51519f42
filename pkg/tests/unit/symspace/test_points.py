"""Unit tests for points, distances and geodesics."""

from __future__ import annotations

import math

import numpy as np
import pytest

from horolab.core.exceptions import ConfigurationError, MissingRepresentative
from horolab.liecore.algebra import CartanVector, random_chamber_direction
from horolab.liecore.groups import SpecialLinear
from horolab.symspace.points import (
    Point,
    distance,
    geodesic,
    geodesic_between,
    random_point,
    random_point_in_ball,
)


class TestPoint:
    """Tests for Point construction."""

    def test_from_group_keeps_rep(self) -> None:
        g = SpecialLinear(np.diag([2.0, 0.5]))
        x = Point.from_group(g)
        assert np.allclose(x.p, np.diag([4.0, 0.25]))
        assert x.g is g.entries

    def test_spd_without_rep(self) -> None:
        x = Point.from_spd(np.eye(3))
        with pytest.raises(MissingRepresentative):
            _ = x.g

    def test_with_rep_is_square_root(self) -> None:
        p = np.array([[2.0, 1.0], [1.0, 1.0]])
        x = Point.from_spd(p).with_rep()
        assert np.allclose(x.g @ x.g.T, p)

    def test_rejects_asymmetric(self) -> None:
        with pytest.raises(ConfigurationError, match="symmetric"):
            Point(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_wrong_determinant(self) -> None:
        with pytest.raises(ConfigurationError, match="determinant 1"):
            Point.from_spd(np.diag([2.0, 2.0, 2.0]))

    def test_rejects_indefinite(self) -> None:
        """det(diag(-1, -1, 1)) is 1 but the matrix is not a point."""
        with pytest.raises(ConfigurationError, match="positive definite"):
            Point.from_spd(np.diag([-1.0, -1.0, 1.0]))

    def test_accepts_far_spd(self) -> None:
        p = np.diag([math.exp(6.0), 1.0, math.exp(-6.0)])
        assert Point.from_spd(p).n == 3

    def test_from_group_passes_checks(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 4, 3.0)
        assert Point.from_spd(x.p).n == 4


class TestDistance:
    """Tests for distance."""

    def test_diagonal_example(self) -> None:
        """[diag(e^2, 1, e^-2)] is sqrt(8) from the base point."""
        x = Point.from_group(np.diag([math.e**2, 1.0, math.e**-2]))
        assert distance(Point.base(3), x) == pytest.approx(math.sqrt(8.0), abs=1e-12)

    def test_rep_and_spd_agree(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 2.0)
        y = random_point(rng, 3, 2.0)
        assert distance(x, y) == pytest.approx(distance(Point.from_spd(x.p), y), rel=1e-9)

    def test_symmetric_and_triangle(self, rng: np.random.Generator) -> None:
        for _ in range(10):
            x, y, z = (random_point(rng, 4, 1.5) for _ in range(3))
            assert distance(x, y) == pytest.approx(distance(y, x), rel=1e-9)
            assert distance(x, z) <= distance(x, y) + distance(y, z) + 1e-9

    def test_zero_on_diagonal(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3)
        assert distance(x, x) == pytest.approx(0.0, abs=1e-9)


class TestGeodesics:
    """Tests for geodesic and geodesic_between."""

    def test_unit_speed(self, rng: np.random.Generator) -> None:
        v = random_chamber_direction(rng, 3)
        x = random_point(rng, 3)
        for t in (0.5, 2.0, 7.0):
            assert distance(x, geodesic(x, v, t)) == pytest.approx(t, rel=1e-9)

    def test_between_endpoints(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 2.0)
        y = random_point(rng, 3, 2.0)
        assert distance(geodesic_between(x, y, 1.0), y) == pytest.approx(0.0, abs=1e-8)
        assert geodesic_between(x, y, 0.0) is x

    def test_between_is_proportional(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 2.0)
        y = random_point(rng, 3, 2.0)
        d = distance(x, y)
        mid = geodesic_between(x, y, 0.25)
        assert distance(x, mid) == pytest.approx(0.25 * d, rel=1e-8)
        assert distance(mid, y) == pytest.approx(0.75 * d, rel=1e-8)

    def test_geodesic_needs_rep(self) -> None:
        with pytest.raises(MissingRepresentative):
            geodesic(Point.from_spd(np.eye(2)), CartanVector(np.array([1.0, -1.0])), 1.0)


class TestSampling:
    """Tests for the random point helpers."""

    def test_ball_radius(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 3.0)
        for _ in range(20):
            assert distance(x, random_point_in_ball(rng, x, 0.5)) <= 0.5 + 1e-9

    def test_seeded(self) -> None:
        a = random_point(np.random.default_rng(3), 3)
        b = random_point(np.random.default_rng(3), 3)
        assert np.array_equal(a.p, b.p)
