"""Unit tests for horolab utilities module."""

from __future__ import annotations

import numpy as np
import pytest

from horolab.experiments.reports import SuiteReport
from horolab.utilities import (
    HOROLAB_DEBUG_VAR,
    bootstrap_slope,
    debug_print,
    digest,
    explain,
    fit_exponent,
    fit_line,
    is_debug_enabled,
    make_rng,
    spawn_rngs,
)


class TestIsDebugEnabled:
    """Tests for is_debug_enabled function."""

    def test_disabled_by_default(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Debug is off when the variable is unset."""
        monkeypatch.delenv(HOROLAB_DEBUG_VAR, raising=False)
        assert is_debug_enabled() is False

    @pytest.mark.parametrize("value", ["1", "true", "TRUE", "yes", "on"])
    def test_enabled(self, monkeypatch: pytest.MonkeyPatch, value: str) -> None:
        """Truthy values turn debug on."""
        monkeypatch.setenv(HOROLAB_DEBUG_VAR, value)
        assert is_debug_enabled() is True

    @pytest.mark.parametrize("value", ["", "0", "false", "off"])
    def test_disabled(self, monkeypatch: pytest.MonkeyPatch, value: str) -> None:
        """Other values leave debug off."""
        monkeypatch.setenv(HOROLAB_DEBUG_VAR, value)
        assert is_debug_enabled() is False


class TestDebugPrint:
    """Tests for debug_print function."""

    def test_prints_when_enabled(
        self, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Output goes to stderr with the prefix."""
        monkeypatch.setenv(HOROLAB_DEBUG_VAR, "1")
        debug_print("faces", 3)
        captured = capsys.readouterr()
        assert captured.err == "[horolab] faces 3\n"
        assert captured.out == ""

    def test_silent_when_disabled(
        self, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Nothing is printed without the variable."""
        monkeypatch.delenv(HOROLAB_DEBUG_VAR, raising=False)
        debug_print("faces")
        assert capsys.readouterr().err == ""


class TestSeeding:
    """Tests for make_rng and spawn_rngs."""

    def test_make_rng_reproducible(self) -> None:
        """The same seed tuple gives the same stream."""
        assert make_rng([7, 101]).random() == make_rng([7, 101]).random()
        assert make_rng([7, 101]).random() != make_rng([7, 102]).random()

    def test_spawn_rngs(self) -> None:
        """Children depend only on (seed, index)."""
        first = [g.random() for g in spawn_rngs(5, 3)]
        second = [g.random() for g in spawn_rngs(5, 3)]
        assert first == second
        assert len(set(first)) == 3


class TestDigest:
    """Tests for digest function."""

    def test_stable(self) -> None:
        """Equal inputs give equal digests."""
        assert digest("dil", 3, (1.0, 2.0)) == digest("dil", 3, (1.0, 2.0))
        assert len(digest("dil")) == 16

    def test_sensitive(self) -> None:
        """Any change in the inputs changes the digest."""
        assert digest("dil", 3) != digest("dil", 4)

    def test_arrays(self) -> None:
        """Arrays are hashed by value."""
        assert digest(np.arange(3.0)) == digest(np.array([0.0, 1.0, 2.0]))


class TestFits:
    """Tests for the regression helpers."""

    def test_fit_line(self) -> None:
        """An exact line is recovered."""
        slope, intercept = fit_line([0.0, 1.0, 2.0], [1.0, 3.0, 5.0])
        assert slope == pytest.approx(2.0)
        assert intercept == pytest.approx(1.0)

    def test_fit_exponent(self) -> None:
        """y = x^2 has exponent 2."""
        xs = [1.0, 2.0, 4.0, 8.0]
        assert fit_exponent(xs, [x**2 for x in xs]) == pytest.approx(2.0)

    def test_bootstrap_slope_exact(self) -> None:
        """Noise-free data gives a degenerate interval."""
        xs = np.linspace(0.0, 1.0, 10)
        slope, low, high = bootstrap_slope(xs, 3.0 * xs, np.random.default_rng(0))
        assert slope == pytest.approx(3.0)
        assert low == pytest.approx(3.0)
        assert high == pytest.approx(3.0)

    def test_bootstrap_slope_interval(self) -> None:
        """The interval contains the fitted slope."""
        rng = np.random.default_rng(1)
        xs = np.linspace(0.0, 4.0, 40)
        ys = 0.5 * xs + rng.normal(0.0, 0.1, size=xs.size)
        slope, low, high = bootstrap_slope(xs, ys, rng)
        assert low <= slope <= high

    def test_bootstrap_single_x(self) -> None:
        """A single distinct x falls back to the point estimate."""
        slope, low, high = bootstrap_slope([1.0, 2.0], [1.0, 2.0], np.random.default_rng(0), rounds=0)
        assert slope == low == high == pytest.approx(1.0)


class TestExplain:
    """Tests for explain function."""

    @pytest.fixture
    def report(self) -> SuiteReport:
        report = SuiteReport("dil", n=3, seed=5, tau=(1.0, 0.0, -1.0))
        report.add("dil.ok", 0.5, 1.0)
        report.add("dil.bad", 2.0, 1.0)
        report.fit("dil.slope", 1.25)
        return report

    def test_summary(self, report: SuiteReport) -> None:
        """Header lines name the suite and counts."""
        text = explain(report)
        assert "Suite: dil" in text
        assert "n: 3  seed: 5" in text
        assert "Checks: 2  failed: 1" in text

    def test_failures_only(self, report: SuiteReport) -> None:
        """Without verbose only failures are listed."""
        text = explain(report)
        assert "[FAIL] dil.bad" in text
        assert "dil.ok" not in text
        assert "dil.slope = 1.25" in text

    def test_verbose(self, report: SuiteReport) -> None:
        """Verbose lists every check."""
        text = explain(report, verbose=True)
        assert "[ok] dil.ok" in text
        assert "[FAIL] dil.bad" in text
