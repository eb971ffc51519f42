"""Unit tests for the Busemann function."""

from __future__ import annotations

import numpy as np
import pytest

from horolab.core.config import RunConfig
from horolab.core.exceptions import ConfigurationError, NotRegular
from horolab.liecore.algebra import CartanVector, random_unipotent
from horolab.symspace.busemann import BusemannConfig, busemann, busemann_limit
from horolab.symspace.points import Point, distance, random_point


@pytest.fixture
def cfg(tau3: CartanVector) -> BusemannConfig:
    return BusemannConfig(tau3)


class TestBusemannConfig:
    """Tests for BusemannConfig."""

    def test_normalizes(self) -> None:
        cfg = BusemannConfig(CartanVector(np.array([2.0, 0.0, -2.0])))
        assert cfg.tau_direction.norm == pytest.approx(1.0)

    def test_rejects_singular(self) -> None:
        with pytest.raises(NotRegular):
            BusemannConfig(CartanVector(np.array([1.0, 1.0, -2.0])))

    def test_from_run(self) -> None:
        cfg = BusemannConfig.from_run(RunConfig(n=4))
        assert cfg.n == 4


class TestBusemann:
    """Tests for busemann and busemann_limit."""

    def test_base_point_is_zero(self, cfg: BusemannConfig) -> None:
        assert busemann(Point.base(3), cfg) == pytest.approx(0.0, abs=1e-14)

    def test_central_ray(self, cfg: BusemannConfig, tau3: CartanVector) -> None:
        """h([exp(t tau)]) = t."""
        for t in (-3.0, 0.5, 4.0):
            x = Point.from_group(np.diag(np.exp(t * tau3.v)))
            assert busemann(x, cfg) == pytest.approx(t, abs=1e-12)

    def test_n_invariant(self, cfg: BusemannConfig, rng: np.random.Generator) -> None:
        """Left translation by N preserves h."""
        x = random_point(rng, 3, 2.0)
        u = random_unipotent(rng, 3)
        y = Point.from_group(u.entries @ x.g)
        assert busemann(y, cfg) == pytest.approx(busemann(x, cfg), abs=1e-10)

    def test_one_lipschitz(self, cfg: BusemannConfig, rng: np.random.Generator) -> None:
        for _ in range(20):
            x = random_point(rng, 3, 2.0)
            y = random_point(rng, 3, 2.0)
            assert abs(busemann(x, cfg) - busemann(y, cfg)) <= distance(x, y) + 1e-9

    def test_limit_agrees(self, cfg: BusemannConfig, rng: np.random.Generator) -> None:
        """The ray limit matches the Iwasawa formula."""
        for _ in range(5):
            x = random_point(rng, 3, 1.5)
            assert busemann_limit(x, cfg) == pytest.approx(busemann(x, cfg), abs=1e-3)

    def test_size_mismatch(self, cfg: BusemannConfig) -> None:
        with pytest.raises(ConfigurationError):
            busemann(Point.base(4), cfg)
