"""Unit tests for the JSON documents of spheres, disks and records."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from horolab.core.exceptions import ConfigurationError, SchemaViolation
from horolab.core.records import SampleSummary
from horolab.filling.schemas import DiskDocument, validate
from horolab.filling.serialization import (
    disk_to_json,
    dumps,
    plain,
    point_from_json,
    point_to_json,
    record_to_json,
    sphere_from_json,
    sphere_to_json,
)
from horolab.filling.whitney import FilledDisk, HorosphereSphere
from horolab.horosphere.context import HorosphereContext
from horolab.horosphere.retraction import retract_to_Z
from horolab.symspace.points import Point, distance, random_point


@pytest.fixture
def pair(ctx3: HorosphereContext, rng: np.random.Generator) -> HorosphereSphere:
    points = tuple(retract_to_Z(random_point(rng, 3, 1.0), ctx3) for _ in range(2))
    return HorosphereSphere(0, points, ctx3)


class TestDumps:
    """Tests for plain and dumps."""

    def test_plain_numpy(self) -> None:
        value = plain({"a": np.float64(1.5), "b": np.arange(2), 3: np.bool_(True)})
        assert value == {"a": 1.5, "b": [0, 1], "3": True}
        assert type(value["b"][0]) is int

    def test_sorted_and_terminated(self) -> None:
        text = dumps({"b": 1, "a": 2})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')

    def test_deterministic(self) -> None:
        doc = {"x": [0.1, 1.0 / 3.0], "y": {"z": 2}}
        assert dumps(doc) == dumps(json.loads(dumps(doc)))

    def test_rejects_nan(self) -> None:
        with pytest.raises(ValueError):
            dumps({"x": math.nan})


class TestPoints:
    """Tests for point_to_json and point_from_json."""

    def test_round_trip(self, rng: np.random.Generator) -> None:
        x = random_point(rng, 3, 2.0)
        y = point_from_json(point_to_json(x), 3, "$")
        assert distance(x, y) == pytest.approx(0.0, abs=1e-12)

    def test_rescales(self) -> None:
        """Any nonsingular representative is accepted and rescaled."""
        x = point_from_json([[2.0, 0.0], [0.0, 2.0]], 2, "$")
        assert distance(x, Point.base(2)) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize(
        "rows",
        [
            [[1.0, 0.0], [0.0, 1.0]],
            [[1.0, 0.0, 0.0], [0.0, math.inf, 0.0], [0.0, 0.0, 1.0]],
            [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        ],
    )
    def test_rejects(self, rows: list[list[float]]) -> None:
        with pytest.raises(SchemaViolation) as info:
            point_from_json(rows, 3, "$.points[0]")
        assert info.value.path == "$.points[0]"


class TestRecords:
    """Tests for record_to_json."""

    def test_infinite_measured_is_null(self) -> None:
        record = SampleSummary.at_most("x", math.inf, 1.0, 3, ratio=math.inf, cells=4)
        doc = record_to_json(record)
        assert doc["measured"] is None
        assert doc["pass"] is False
        assert doc["detail"] == {"cells": 4}


class TestSpheres:
    """Tests for sphere documents."""

    def test_round_trip(self, pair: HorosphereSphere, ctx3: HorosphereContext) -> None:
        doc = json.loads(dumps(sphere_to_json(pair)))
        back = sphere_from_json(doc, ctx3)
        assert back.dimension == 0
        for a, b in zip(pair.points, back.points):
            assert distance(a, b) == pytest.approx(0.0, abs=1e-10)

    def test_wrong_n(self, pair: HorosphereSphere, ctx3: HorosphereContext) -> None:
        doc = json.loads(dumps(sphere_to_json(pair)))
        doc["n"] = 4
        with pytest.raises(ConfigurationError):
            sphere_from_json(doc, ctx3)

    def test_wrong_tau(self, pair: HorosphereSphere, ctx3: HorosphereContext) -> None:
        doc = json.loads(dumps(sphere_to_json(pair)))
        doc["tau"] = [2.0, -0.5, -1.5]
        with pytest.raises(ConfigurationError):
            sphere_from_json(doc, ctx3)

    def test_tau_optional(self, pair: HorosphereSphere, ctx3: HorosphereContext) -> None:
        doc = json.loads(dumps(sphere_to_json(pair)))
        del doc["tau"]
        assert sphere_from_json(doc, ctx3).dimension == 0

    def test_point_off_Z(self, ctx3: HorosphereContext) -> None:
        far = np.diag(np.exp(2.0 * ctx3.tau.v)).tolist()
        doc = {"schema": "horolab.sphere/1", "n": 3, "dimension": 0, "points": [far, far]}
        with pytest.raises(ConfigurationError):
            sphere_from_json(doc, ctx3)

    def test_malformed(self, ctx3: HorosphereContext) -> None:
        with pytest.raises(SchemaViolation):
            sphere_from_json({"schema": "horolab.sphere/1", "n": 3}, ctx3)


class TestDisks:
    """Tests for disk_to_json."""

    def test_matches_schema(self, pair: HorosphereSphere) -> None:
        disk = FilledDisk(
            0,
            1.0,
            np.array([[-1.0], [1.0]]),
            pair.points,
            ((0, 1),),
            2.0,
            3.0,
            (SampleSummary.at_most("fill.height", 0.0, 1e-7, 2),),
        )
        doc = json.loads(dumps(disk_to_json(disk, 3)))
        validate(doc, DiskDocument)
        assert doc["simplices"] == [[0, 1]]
