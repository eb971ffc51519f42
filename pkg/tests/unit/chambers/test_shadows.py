"""Unit tests for shadows, contraction and enlargement."""

from __future__ import annotations

import math

import numpy as np
import pytest

from horolab.chambers.flags import Chamber, are_opposite
from horolab.chambers.regions import (
    WeylChamberRegion,
    distance_to_flat,
    distance_to_weyl_chamber,
    parabolic_rep,
)
from horolab.chambers.shadows import (
    chamber_with_housing,
    contract,
    enlarge,
    housing_unipotent,
    opposite_chamber_for_shadow,
    random_chamber_in_shadow,
    random_point_in_dx,
    rho,
    translate_along,
    verify_dx_shadows,
)
from horolab.core.config import Calibration
from horolab.core.exceptions import NotRegular
from horolab.liecore.algebra import CartanVector, d_N, kappa, random_unipotent
from horolab.symspace.boundary import Flat
from horolab.symspace.points import Point, distance, random_point


class TestRho:
    """Tests for rho and the housing unipotent."""

    def test_base_point(self, rng: np.random.Generator) -> None:
        """At [e] the housing unipotent is the canonical unipotent."""
        u = random_unipotent(rng, 3)
        query = rho(Point.base(3), Chamber.from_unipotent(u))
        assert query.rho == pytest.approx(d_N(u), rel=1e-12)

    def test_housing_at_identity(self, rng: np.random.Generator) -> None:
        u = random_unipotent(rng, 3).entries
        assert np.allclose(housing_unipotent(np.eye(3), u), u)

    def test_parabolic_equivariance(self, rng: np.random.Generator) -> None:
        """rho_[p y](p d) = rho_y(d) for p in NA."""
        p = parabolic_rep(random_point(rng, 3, 2.0))
        d = random_chamber_in_shadow(rng, Point.base(3), 2.0)
        moved = rho(Point.from_group(p), d.translate(p)).rho
        assert moved == pytest.approx(rho(Point.base(3), d).rho, rel=1e-8)

    def test_chamber_with_housing(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 2.0)
        q = random_unipotent(rng, 3)
        d = chamber_with_housing(x, q.entries)
        assert np.allclose(rho(x, d).q.entries, q.entries, atol=1e-9)

    def test_random_in_shadow(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 2.0)
        for _ in range(10):
            assert rho(x, random_chamber_in_shadow(rng, x, 0.8)).in_shadow(0.8)
        on_sphere = random_chamber_in_shadow(rng, x, 0.8, on_sphere=True)
        assert rho(x, on_sphere).rho == pytest.approx(0.8, rel=1e-9)


class TestContract:
    """Tests for contract and translate_along."""

    def test_matches_translated_point(self, rng: np.random.Generator, tau3: CartanVector) -> None:
        x = random_point(rng, 3, 2.0)
        d = random_chamber_in_shadow(rng, x, 1.5)
        expected = rho(translate_along(x, tau3, 1.7), d).rho
        assert contract(x, tau3, 1.7, d) == pytest.approx(expected, rel=1e-8)

    def test_exponential_rate(self, rng: np.random.Generator, tau3: CartanVector) -> None:
        x = random_point(rng, 3, 2.0)
        d = random_chamber_in_shadow(rng, x, 1.5)
        start = rho(x, d).rho
        for t in (0.5, 2.0, 5.0):
            assert contract(x, tau3, t, d) <= math.exp(-t * kappa(tau3)) * start + 1e-12

    def test_singular_direction(self, rng: np.random.Generator) -> None:
        d = random_chamber_in_shadow(rng, Point.base(3), 1.0)
        with pytest.raises(NotRegular):
            contract(Point.base(3), CartanVector(np.array([1.0, 1.0, -2.0])), 1.0, d)

    def test_translate_is_unit_speed(self, rng: np.random.Generator, tau3: CartanVector) -> None:
        x = random_point(rng, 3)
        assert distance(x, translate_along(x, tau3, 2.5)) == pytest.approx(2.5, rel=1e-9)


class TestRegions:
    """Tests for distances to flats and Weyl chambers."""

    def test_point_of_flat(self) -> None:
        flat = Flat.standard(3)
        x = flat.point(np.array([0.7, 0.1, -0.8]))
        assert distance_to_flat(x, flat) == pytest.approx(0.0, abs=1e-5)

    def test_point_of_weyl_chamber(self, rng: np.random.Generator) -> None:
        region = WeylChamberRegion(random_point(rng, 3, 2.0))
        y = region.point(np.array([2.0, 0.5, -2.5]))
        assert distance_to_weyl_chamber(y, region) == pytest.approx(0.0, abs=1e-5)
        assert region.contains_in_neighborhood(y)

    def test_distance_to_flat_is_lower_bound(self, rng: np.random.Generator) -> None:
        """The flat distance never exceeds the distance to a point of the flat."""
        flat = Flat.standard(3)
        x = random_point(rng, 3, 2.0)
        assert distance_to_flat(x, flat) <= distance(x, Point.base(3)) + 1e-9

    def test_points_in_dx(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 1.0)
        region = WeylChamberRegion(x)
        y = random_point_in_dx(rng, x)
        assert distance_to_weyl_chamber(y, region) < 1.0


class TestVerifiers:
    """Tests for the sampled shadow constructions."""

    def test_dx_shadows_summary(self, rng: np.random.Generator) -> None:
        summary = verify_dx_shadows(Point.base(3), 8, rng, rho_star=1e6)
        assert summary.name == "dx_shadows.max_rho"
        assert summary.count == 8
        assert summary.passed

    def test_enlarge(self, rng: np.random.Generator, tau3: CartanVector) -> None:
        x = Point.base(3)
        x_new = enlarge(x, tau3, 1.0, rng, Calibration(c_enlarge=6.0), checks=8)
        assert distance(x, x_new) == pytest.approx(12.0, rel=1e-9)

    @pytest.mark.slow
    def test_opposite_chamber_for_shadow(self, tau3: CartanVector) -> None:
        x = Point.base(3)
        x_new, d = opposite_chamber_for_shadow(x, tau3, seed=3, checks=16)
        e = random_chamber_in_shadow(np.random.default_rng(99), x, 0.5)
        assert are_opposite(e, d)
        assert distance(x, x_new) > 0
