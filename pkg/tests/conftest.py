"""Shared pytest fixtures for horolab tests."""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pytest

from horolab.core.config import ExperimentGrid, RunConfig, SampleCounts
from horolab.core.exceptions import ErrorContext
from horolab.horosphere.context import HorosphereContext
from horolab.liecore.algebra import CartanVector
from horolab.symspace.points import Point

SMALL_SAMPLES = SampleCounts(
    iwasawa=20,
    busemann=5,
    lipschitz_pairs=40,
    compare=16,
    dil=3,
    dxshadows=16,
    largeshadows=4,
    pushing=8,
    opposition=64,
    shadow_checks=8,
    omega_edges=2,
    omega_triangles=1,
    property_grid=4,
)

SMALL_GRID = ExperimentGrid(
    rank1_ambient=(2.0, 4.0, 6.0, 8.0),
    rank2_ambient=(2.0, 4.0),
    divergence_radii=(2.0, 4.0),
    pushing_heights=(1.0, 2.0),
    enlarge_radii=(1.0, 2.0),
    fill_lipschitz=(1.0, 2.0),
    cycle_samples=8,
    cone_resolution=3,
    disk_resolution=5,
    whitney_depth=3,
    whitney_budget=512,
    mesh_levels=9,
    mesh_steps=11,
)


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    return tmp_path / "out"


@pytest.fixture
def small_config(out_dir: Path) -> RunConfig:
    """An SL(3) run with small sample counts writing into tmp_path."""
    return RunConfig(n=3, seed=7, samples=SMALL_SAMPLES, grid=SMALL_GRID, out_dir=str(out_dir))


@pytest.fixture
def rank1_config(out_dir: Path) -> RunConfig:
    """An SL(2) run with small sample counts."""
    return RunConfig(n=2, seed=7, samples=SMALL_SAMPLES, grid=SMALL_GRID, out_dir=str(out_dir))


@pytest.fixture
def grid_config(out_dir: Path) -> Callable[..., RunConfig]:
    """Factory of seed 7 runs over SMALL_GRID with some grid fields replaced."""

    def make(n: int = 3, samples: SampleCounts = SMALL_SAMPLES, **grid: Any) -> RunConfig:
        return RunConfig(
            n=n, seed=7, samples=samples, grid=replace(SMALL_GRID, **grid), out_dir=str(out_dir)
        )

    return make


@pytest.fixture
def ctx3(small_config: RunConfig) -> HorosphereContext:
    return HorosphereContext.from_run(small_config)


@pytest.fixture
def tau3() -> CartanVector:
    """The unit barycenter direction of SL(3)."""
    return CartanVector(np.array([1.0, 0.0, -1.0]) / np.sqrt(2.0))


@pytest.fixture
def base3() -> Point:
    return Point.base(3)


@pytest.fixture
def sample_error_context() -> ErrorContext:
    """An ErrorContext naming a lemma and a property."""
    return ErrorContext(
        operation="verify_dx_shadows",
        lemma="dx-shadows",
        property_id="rho-bound",
        detail={"rho": 5.2},
    )
