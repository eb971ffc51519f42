"""Unit tests for the exploded simplex."""

from __future__ import annotations

import numpy as np
import pytest

from horolab.core.exceptions import ConfigurationError, GeometryError
from horolab.filling.exploded import (
    barycenter_of_face,
    build_exploded,
    faces_of,
    maximal_chains,
)


class TestFaces:
    """Tests for faces_of and maximal_chains."""

    def test_faces_smallest_first(self) -> None:
        faces = faces_of((0, 1, 2))
        assert len(faces) == 7
        assert faces[0] == (0,)
        assert faces[-1] == (0, 1, 2)

    def test_chains_from_vertex(self) -> None:
        chains = maximal_chains((0,), (0, 1, 2))
        assert chains == [((0,), (0, 1), (0, 1, 2)), ((0,), (0, 2), (0, 1, 2))]

    def test_chain_of_top(self) -> None:
        assert maximal_chains((0, 1), (0, 1)) == [((0, 1),)]

    def test_barycenter(self) -> None:
        assert barycenter_of_face((0, 2), 2) == pytest.approx([0.5, 0.0, 0.5])


class TestBuildExploded:
    """Tests for build_exploded."""

    @pytest.mark.parametrize(("d", "cells"), [(0, 1), (1, 3), (2, 10)])
    def test_cell_count(self, d: int, cells: int) -> None:
        assert len(build_exploded(d).cells) == cells

    def test_cells_are_top_dimensional(self) -> None:
        assert all(cell.dimension == 2 for cell in build_exploded(2).cells)

    @pytest.mark.parametrize("d", [-1, 3])
    def test_rejects_dimension(self, d: int) -> None:
        with pytest.raises(ConfigurationError):
            build_exploded(d)

    @pytest.mark.parametrize("collar", [0.0, 1.0])
    def test_rejects_collar(self, collar: float) -> None:
        with pytest.raises(ConfigurationError):
            build_exploded(1, collar)

    def test_p1_scales_central_cell(self) -> None:
        """p1 stretches the central copy by 1 / eps."""
        assert build_exploded(2, 0.25).lipschitz_p1 >= 4.0 - 1e-9


class TestProjections:
    """Tests for locate, realize, p1 and p2."""

    def test_barycenter(self) -> None:
        ex = build_exploded(2)
        b = np.full(3, 1.0 / 3.0)
        assert ex.locate(b).cell == ex.central
        assert ex.p1(b) == pytest.approx(b)
        assert ex.p2(b) == pytest.approx(b)

    def test_vertex_is_fixed(self) -> None:
        ex = build_exploded(2)
        e0 = np.array([1.0, 0.0, 0.0])
        assert ex.p1(e0) == pytest.approx(e0)
        assert ex.p2(e0) == pytest.approx(e0)

    def test_central_cell_onto_simplex(self) -> None:
        ex = build_exploded(2, 1.0 / 3.0)
        corner = (1.0 / 3.0) * np.array([1.0, 0.0, 0.0]) + (2.0 / 3.0) * np.full(3, 1.0 / 3.0)
        assert ex.p1(corner) == pytest.approx([1.0, 0.0, 0.0], abs=1e-9)
        assert ex.p2(corner) == pytest.approx(np.full(3, 1.0 / 3.0), abs=1e-9)

    def test_realize_inverts_locate(self, rng: np.random.Generator) -> None:
        ex = build_exploded(2)
        for _ in range(20):
            q = rng.dirichlet(np.ones(3))
            assert ex.realize(ex.locate(q)) == pytest.approx(q, abs=1e-9)

    def test_edge_point_maps_into_edge(self) -> None:
        """Points of a face stay in that face under both projections."""
        ex = build_exploded(2)
        q = np.array([0.8, 0.2, 0.0])
        assert ex.p1(q)[2] == pytest.approx(0.0, abs=1e-9)
        assert ex.p2(q)[2] == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("q", [[0.5, 0.6, -0.1], [0.2, 0.2, 0.2], [1.0, 0.0]])
    def test_outside_simplex(self, q: list[float]) -> None:
        with pytest.raises(GeometryError):
            build_exploded(2).locate(np.asarray(q))
