"""Unit tests for SampleSummary."""

from __future__ import annotations

from horolab.core.records import SampleSummary


class TestSampleSummary:
    """Tests for SampleSummary.at_most."""

    def test_passes_at_bound(self) -> None:
        summary = SampleSummary.at_most("x", 1.0, 1.0, 10)
        assert summary.passed
        assert summary.count == 10

    def test_fails_above_bound(self) -> None:
        assert not SampleSummary.at_most("x", 1.5, 1.0, 10).passed

    def test_nan_fails(self) -> None:
        """A NaN measurement never passes."""
        assert not SampleSummary.at_most("x", float("nan"), 1.0, 1).passed

    def test_detail(self) -> None:
        summary = SampleSummary.at_most("x", 0.1, 1.0, 3, slope=0.5)
        assert summary.detail == {"slope": 0.5}
