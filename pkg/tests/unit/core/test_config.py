"""Unit tests for run configuration."""

from __future__ import annotations

import math
from dataclasses import replace
from pathlib import Path

import pytest

from horolab.core.config import (
    OUT_VAR,
    SEED_VAR,
    Calibration,
    NumericPolicy,
    RunConfig,
    SampleCounts,
    apply_environment,
    barycenter_entries,
    config_from_mapping,
    load_config,
    validate_tau,
)
from horolab.core.exceptions import ConfigurationError, NotRegular


class TestBarycenterEntries:
    """Tests for barycenter_entries."""

    def test_rank_one(self) -> None:
        """The SL(2) barycenter is (1, -1)/sqrt(2)."""
        b = barycenter_entries(2)
        assert b[0] == pytest.approx(1 / math.sqrt(2))
        assert b[1] == pytest.approx(-1 / math.sqrt(2))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_unit_trace_zero_decreasing(self, n: int) -> None:
        """Barycenters are unit, trace-zero and strictly decreasing."""
        b = barycenter_entries(n)
        assert math.fsum(v * v for v in b) == pytest.approx(1.0)
        assert math.fsum(b) == pytest.approx(0.0, abs=1e-12)
        assert all(b[i] > b[i + 1] for i in range(n - 1))


class TestValidateTau:
    """Tests for validate_tau."""

    def test_normalizes(self) -> None:
        """tau is rescaled to a unit vector."""
        tau = validate_tau((2.0, 0.0, -2.0), 3, NumericPolicy())
        assert tau[0] == pytest.approx(1 / math.sqrt(2))

    def test_wrong_length(self) -> None:
        """A tau of the wrong size is rejected."""
        with pytest.raises(ConfigurationError, match="3 entries"):
            validate_tau((1.0, -1.0), 3, NumericPolicy())

    def test_non_decreasing_is_not_regular(self) -> None:
        """Ties in tau raise NotRegular."""
        with pytest.raises(NotRegular):
            validate_tau((1.0, 1.0, -2.0), 3, NumericPolicy())

    def test_nonzero_trace(self) -> None:
        """A tau with nonzero trace is rejected."""
        with pytest.raises(ConfigurationError, match="trace-zero"):
            validate_tau((2.0, 1.0, 0.0), 3, NumericPolicy())

    def test_zero(self) -> None:
        with pytest.raises(NotRegular):
            validate_tau((0.0, 0.0), 2, NumericPolicy())


class TestRunConfig:
    """Tests for RunConfig validation."""

    def test_defaults(self) -> None:
        """The default run is SL(3) at the barycenter with seed 0."""
        config = RunConfig()
        assert config.n == 3
        assert config.seed == 0
        assert config.tau_entries == pytest.approx(barycenter_entries(3))

    def test_n_below_two(self) -> None:
        with pytest.raises(ConfigurationError, match="n must be at least 2"):
            RunConfig(n=1)

    def test_negative_seed(self) -> None:
        with pytest.raises(ConfigurationError, match="seed"):
            RunConfig(seed=-1)

    def test_replace_keeps_tau(self) -> None:
        """dataclasses.replace revalidates an already unit tau."""
        config = RunConfig(n=3, tau=(3.0, 1.0, -4.0))
        again = replace(config, seed=5)
        assert again.tau_entries == pytest.approx(config.tau_entries)

    def test_sample_count_below_one(self) -> None:
        with pytest.raises(ConfigurationError, match="at least 1"):
            SampleCounts(iwasawa=0)

    def test_calibration_must_be_positive(self) -> None:
        with pytest.raises(ConfigurationError, match="c_compare"):
            Calibration(c_compare=0.0)

    def test_collar_below_one(self) -> None:
        with pytest.raises(ConfigurationError, match="exploded_collar"):
            Calibration(exploded_collar=1.0)

    def test_c_pushing_may_be_unset(self) -> None:
        assert Calibration().c_pushing is None


class TestConfigFromMapping:
    """Tests for config_from_mapping."""

    def test_sections(self) -> None:
        """Tables map onto the section dataclasses; lists become tuples."""
        config = config_from_mapping(
            {
                "n": 4,
                "seed": 3,
                "samples": {"iwasawa": 10},
                "tolerances": {"level_set": 1e-7},
                "calibration": {"rho_star": 2.5},
                "experiments": {"divergence_radii": [1.0, 2.0]},
            }
        )
        assert config.n == 4
        assert config.samples.iwasawa == 10
        assert config.policy.level_set == 1e-7
        assert config.calibration.rho_star == 2.5
        assert config.grid.divergence_radii == (1.0, 2.0)

    def test_unknown_top_level_key(self) -> None:
        with pytest.raises(ConfigurationError, match="Unknown configuration keys: colour"):
            config_from_mapping({"colour": "blue"})

    def test_unknown_section_key(self) -> None:
        with pytest.raises(ConfigurationError, match=r"Unknown keys in \[samples\]"):
            config_from_mapping({"samples": {"everything": 1}})


class TestEnvironment:
    """Tests for the HOROLAB_SEED and HOROLAB_OUT overrides."""

    def test_seed_and_out(self) -> None:
        config = apply_environment(RunConfig(), {SEED_VAR: "0x10", OUT_VAR: "/tmp/x"})
        assert config.seed == 16
        assert config.out_dir == "/tmp/x"

    def test_empty_values_ignored(self) -> None:
        config = RunConfig(seed=4)
        assert apply_environment(config, {SEED_VAR: ""}) is config

    def test_bad_seed(self) -> None:
        with pytest.raises(ConfigurationError, match=SEED_VAR):
            apply_environment(RunConfig(), {SEED_VAR: "seven"})


class TestLoadConfig:
    """Tests for load_config."""

    def test_defaults_without_file(self) -> None:
        assert load_config(None, environ={}).n == 3

    def test_reads_toml(self, tmp_path: Path) -> None:
        path = tmp_path / "horolab.toml"
        path.write_text('n = 2\nseed = 9\nout_dir = "res"\n[samples]\ndil = 4\n')
        config = load_config(path, environ={})
        assert (config.n, config.seed, config.out_dir) == (2, 9, "res")
        assert config.samples.dil == 4

    def test_environment_wins(self, tmp_path: Path) -> None:
        path = tmp_path / "horolab.toml"
        path.write_text("seed = 9\n")
        assert load_config(path, environ={SEED_VAR: "11"}).seed == 11

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigurationError, match="Cannot read configuration"):
            load_config(tmp_path / "absent.toml", environ={})

    def test_malformed_file(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.toml"
        path.write_text("n = = 3\n")
        with pytest.raises(ConfigurationError, match="Malformed configuration"):
            load_config(path, environ={})
