"""Unit tests for boundary points, flats and rays."""

from __future__ import annotations

import math

import numpy as np
import pytest

from horolab.core.exceptions import NotInFlat, NotRegularDirection
from horolab.liecore.algebra import CartanVector, random_unipotent
from horolab.liecore.groups import SpecialLinear
from horolab.symspace.boundary import (
    BoundaryPoint,
    Flat,
    cone_distance,
    cone_exp,
    flat_coordinates,
    ray_to_boundary,
    same_boundary_point,
    tits_angle_in_flat,
    visual_angle,
)
from horolab.symspace.points import Point, distance, random_point

W1 = np.array([1.0, 0.0, -1.0])
W2 = np.array([1.0, -1.0, 0.0])


class TestBoundaryPoint:
    """Tests for the canonical form of boundary points."""

    def test_sorts_direction(self) -> None:
        sigma = BoundaryPoint(SpecialLinear(np.eye(3)), CartanVector(W2))
        assert sigma.direction.v == pytest.approx(W1 / math.sqrt(2))
        assert np.linalg.det(sigma.frame.entries) == pytest.approx(1.0)

    def test_zero_direction(self) -> None:
        with pytest.raises(NotRegularDirection):
            BoundaryPoint(SpecialLinear(np.eye(2)), CartanVector(np.zeros(2)))

    def test_regularity(self) -> None:
        eye = SpecialLinear(np.eye(3))
        assert BoundaryPoint(eye, CartanVector(W1)).is_regular()
        assert not BoundaryPoint(eye, CartanVector(np.array([1.0, 1.0, -2.0]))).is_regular()

    def test_barycenter_of(self) -> None:
        sigma = BoundaryPoint.barycenter_of(np.eye(4))
        assert sigma.is_regular()


class TestRays:
    """Tests for ray_to_boundary and cone_exp."""

    def test_unit_speed(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 2.0)
        sigma = BoundaryPoint(SpecialLinear(np.eye(3)), CartanVector(W1))
        ray = ray_to_boundary(x, sigma)
        assert distance(ray(0.0), x) == pytest.approx(0.0, abs=1e-9)
        assert distance(x, ray(3.0)) == pytest.approx(3.0, rel=1e-9)

    def test_singular_target_allowed_unless_required(self) -> None:
        sigma = BoundaryPoint(SpecialLinear(np.eye(3)), CartanVector(np.array([1.0, 1.0, -2.0])))
        ray_to_boundary(Point.base(3), sigma)
        with pytest.raises(NotRegularDirection):
            ray_to_boundary(Point.base(3), sigma, require_regular=True)

    def test_cone_exp_is_ray(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3)
        sigma = BoundaryPoint.barycenter_of(np.eye(3))
        assert distance(cone_exp(x, sigma, 2.0), ray_to_boundary(x, sigma)(2.0)) == pytest.approx(
            0.0, abs=1e-9
        )

    def test_cone_distance(self) -> None:
        assert cone_distance(1.0, 1.0, math.pi / 2) == pytest.approx(math.sqrt(2.0))
        assert cone_distance(2.0, 2.0, 0.0) == 0.0


class TestFlats:
    """Tests for flats and angles at infinity."""

    def test_coordinates_recover_direction(self) -> None:
        flat = Flat.standard(3)
        sigma = flat.boundary_point(CartanVector(W2))
        assert flat_coordinates(flat, sigma).v == pytest.approx(W2 / math.sqrt(2), abs=1e-9)

    def test_not_in_flat(self) -> None:
        c, s = math.cos(0.6), math.sin(0.6)
        rotated = BoundaryPoint(SpecialLinear(np.array([[c, -s], [s, c]])), CartanVector(np.array([1.0, -1.0])))
        with pytest.raises(NotInFlat):
            flat_coordinates(Flat.standard(2), rotated)

    def test_tits_angle(self) -> None:
        flat = Flat.standard(3)
        first = flat.boundary_point(CartanVector(W1))
        second = flat.boundary_point(CartanVector(W2))
        assert tits_angle_in_flat(flat, first, second) == pytest.approx(math.pi / 3, abs=1e-9)

    def test_visual_angle_at_flat_point(self) -> None:
        """At a point of the flat the visual angle is the Tits angle."""
        flat = Flat.standard(3)
        first = flat.boundary_point(CartanVector(W1))
        second = flat.boundary_point(CartanVector(W2))
        assert visual_angle(flat.base_point(), first, second) == pytest.approx(math.pi / 3, abs=1e-9)

    def test_chamber_frames(self) -> None:
        assert len(Flat.standard(3).chamber_frames()) == 6

    def test_point_in_flat(self) -> None:
        x = Flat.standard(3).point(CartanVector(W1))
        assert distance(Point.base(3), x) == pytest.approx(math.sqrt(2.0))


class TestSameBoundaryPoint:
    """Tests for equality by ray divergence."""

    def test_unipotent_frame_same_point(self, rng: np.random.Generator) -> None:
        v = CartanVector(W1)
        u = random_unipotent(rng, 3)
        first = BoundaryPoint(SpecialLinear(np.eye(3)), v)
        second = BoundaryPoint(u.as_group(), v)
        assert same_boundary_point(first, second)

    def test_different_directions(self) -> None:
        eye = SpecialLinear(np.eye(3))
        first = BoundaryPoint(eye, CartanVector(W1))
        second = BoundaryPoint(eye, CartanVector(np.array([2.0, -1.0, -1.0])))
        assert not same_boundary_point(first, second)
