"""Property-based tests for the metric, the Busemann function and the retraction."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horolab.horosphere.retraction import retract_array
from horolab.liecore.algebra import CartanVector, d_N, random_unipotent
from horolab.liecore.groups import UnitUpper, iwasawa_nak, random_special_linear
from horolab.symspace.busemann import BusemannConfig, busemann, busemann_array
from horolab.symspace.points import Point, distance, random_point

seeds = st.integers(min_value=0, max_value=2**32 - 1)
sizes = st.sampled_from([2, 3, 4])
scales = st.floats(min_value=0.1, max_value=4.0)

TAU3 = np.array([1.0, 0.0, -1.0]) / np.sqrt(2.0)


class TestMetricProperties:
    """Properties of d and d_N."""

    @settings(max_examples=50, deadline=None)
    @given(seeds, sizes)
    def test_d_N_inverse(self, seed: int, n: int) -> None:
        """d_N(u^-1) equals d_N(u)."""
        u = random_unipotent(np.random.default_rng(seed), n)
        inverse = UnitUpper(np.linalg.inv(u.entries))
        assert d_N(inverse) == pytest.approx(d_N(u), rel=1e-9, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(seeds, sizes, scales)
    def test_symmetry(self, seed: int, n: int, scale: float) -> None:
        """d(x, y) equals d(y, x)."""
        rng = np.random.default_rng(seed)
        x, y = random_point(rng, n, scale), random_point(rng, n, scale)
        assert distance(x, y) == pytest.approx(distance(y, x), rel=1e-8, abs=1e-10)

    @settings(max_examples=50, deadline=None)
    @given(seeds, sizes, scales)
    def test_triangle_inequality(self, seed: int, n: int, scale: float) -> None:
        """d(x, z) <= d(x, y) + d(y, z)."""
        rng = np.random.default_rng(seed)
        x, y, z = (random_point(rng, n, scale) for _ in range(3))
        assert distance(x, z) <= distance(x, y) + distance(y, z) + 1e-9


class TestBusemannProperties:
    """Properties of h."""

    @settings(max_examples=50, deadline=None)
    @given(seeds, scales)
    def test_one_lipschitz(self, seed: int, scale: float) -> None:
        """|h(x) - h(y)| <= d(x, y)."""
        cfg = BusemannConfig(CartanVector(TAU3))
        rng = np.random.default_rng(seed)
        x, y = random_point(rng, 3, scale), random_point(rng, 3, scale)
        assert abs(busemann(x, cfg) - busemann(y, cfg)) <= distance(x, y) + 1e-9

    @settings(max_examples=50, deadline=None)
    @given(seeds, st.floats(min_value=-5.0, max_value=5.0))
    def test_unit_rate_along_tau(self, seed: int, t: float) -> None:
        """h([g exp(t V_tau)]) - h([g]) equals t when g lies in N."""
        u = random_unipotent(np.random.default_rng(seed), 3).entries
        moved = u * np.exp(t * TAU3)[None, :]
        assert busemann_array(moved, TAU3) - busemann_array(u, TAU3) == pytest.approx(t, abs=1e-9)


class TestFactorizationProperties:
    """Properties of the Iwasawa factorization and the retraction."""

    @settings(max_examples=50, deadline=None)
    @given(seeds, sizes)
    def test_iwasawa_reconstruction(self, seed: int, n: int) -> None:
        """n a k multiplies back to g."""
        g = random_special_linear(np.random.default_rng(seed), n)
        back = iwasawa_nak(g).reconstruct()
        error = np.linalg.norm(back - g.entries) / np.linalg.norm(g.entries)
        assert error < 1e-10

    @settings(max_examples=50, deadline=None)
    @given(seeds, scales)
    def test_retraction_idempotent(self, seed: int, scale: float) -> None:
        """Retracting twice moves nothing the second time."""
        x = random_point(np.random.default_rng(seed), 3, scale)
        once, _ = retract_array(x.g, TAU3)
        twice, height = retract_array(once, TAU3)
        assert height == pytest.approx(0.0, abs=1e-9)
        assert distance(Point.from_group(once), Point.from_group(twice)) < 1e-7
