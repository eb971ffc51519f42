"""End-to-end tests of the horolab command line."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from horolab.cli import app
from horolab.cli.app import CommandRunner, Horolab, main
from horolab.core.config import OUT_VAR, SEED_VAR
from horolab.experiments.reports import SuiteReport, write_report


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.delenv(SEED_VAR, raising=False)
    monkeypatch.delenv(OUT_VAR, raising=False)
    monkeypatch.chdir(tmp_path)


def write_config(tmp_path: Path, extra: str = "") -> Path:
    path = tmp_path / "run.toml"
    path.write_text(
        f'n = 3\nseed = 7\nout_dir = "{(tmp_path / "out").as_posix()}"\n'
        f"{extra}\n[samples]\niwasawa = 20\n",
        encoding="utf-8",
    )
    return path


class TestMain:
    """Tests for exit codes and outputs of main."""

    def test_no_command_prints_help(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main([]) == 0
        assert "usage: horolab" in capsys.readouterr().out

    def test_verify_iwasawa(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        config = write_config(tmp_path)
        assert main(["--config", str(config), "verify", "--suite", "iwasawa"]) == 0
        assert (tmp_path / "out" / "iwasawa.csv").is_file()
        doc = json.loads((tmp_path / "out" / "iwasawa.json").read_text(encoding="utf-8"))
        assert doc["suite"] == "iwasawa"
        assert doc["seed"] == 7
        assert "Suite: iwasawa" in capsys.readouterr().out

    def test_config_after_command(self, tmp_path: Path) -> None:
        config = write_config(tmp_path)
        assert main(["verify", "--suite", "iwasawa", "--config", str(config)]) == 0
        assert (tmp_path / "out" / "iwasawa.json").is_file()

    def test_failing_check_exits_one(self, tmp_path: Path) -> None:
        config = write_config(tmp_path, "[tolerances]\nreconstruction = 1e-300\n")
        assert main(["--config", str(config), "verify", "--suite", "iwasawa"]) == 1

    def test_seed_from_environment(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        config = write_config(tmp_path)
        monkeypatch.setenv(SEED_VAR, "11")
        assert main(["--config", str(config), "verify", "--suite", "iwasawa"]) == 0
        doc = json.loads((tmp_path / "out" / "iwasawa.json").read_text(encoding="utf-8"))
        assert doc["seed"] == 11

    def test_unknown_suite(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        config = write_config(tmp_path)
        assert main(["--config", str(config), "verify", "--suite", "nope"]) == 2
        assert capsys.readouterr().err.startswith("horolab: error:")

    @pytest.mark.parametrize(
        "error",
        [
            ValueError("Out of range float values are not JSON compliant"),
            np.linalg.LinAlgError("Singular matrix"),
        ],
    )
    def test_numerical_error_exits_three(
        self,
        tmp_path: Path,
        monkeypatch: pytest.MonkeyPatch,
        capsys: pytest.CaptureFixture[str],
        error: Exception,
    ) -> None:
        def fail(*args: object, **kwargs: object) -> SuiteReport:
            raise error

        monkeypatch.setattr(app, "run_suite", fail)
        config = write_config(tmp_path)
        assert main(["--config", str(config), "verify", "--suite", "iwasawa"]) == 3
        err = capsys.readouterr().err
        assert err.startswith("horolab: numerical error:")
        assert str(error) in err

    def test_missing_config(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["--config", "missing.toml", "verify", "--suite", "iwasawa"]) == 2
        assert "missing.toml" in capsys.readouterr().err

    def test_unknown_config_key(self, tmp_path: Path) -> None:
        config = write_config(tmp_path, "colour = 1\n")
        assert main(["--config", str(config), "verify", "--suite", "iwasawa"]) == 2

    def test_fill_needs_paths(self, tmp_path: Path) -> None:
        config = write_config(tmp_path)
        assert main(["--config", str(config), "fill", "--input", "a.json"]) == 2

    def test_fill_malformed_sphere(self, tmp_path: Path) -> None:
        config = write_config(tmp_path)
        sphere = tmp_path / "sphere.json"
        sphere.write_text('{"schema": "horolab.sphere/1", "n": 3}', encoding="utf-8")
        args = ["--config", str(config), "fill", "--input", str(sphere), "--output", "disk.json"]
        assert main(args) == 4
        assert not (tmp_path / "disk.json").exists()

    def test_explain_failing_report(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        report = SuiteReport("dil", n=2, seed=5, tau=(0.5**0.5, -(0.5**0.5)))
        report.add("dil.exact", 2.0, 1.0)
        _, json_path = write_report(report, tmp_path / "reports")
        assert main(["explain", "--report", str(json_path)]) == 0
        out = capsys.readouterr().out
        assert "failed: 1" in out
        assert "dil.exact" in out

    def test_explain_not_json(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("not json", encoding="utf-8")
        assert main(["explain", "--report", str(path)]) == 4


class TestCommandRunner:
    """Tests for CommandRunner dispatch."""

    def test_dispatch(self) -> None:
        class Echo:
            def __init__(self, prefix: str = ">") -> None:
                self.prefix = prefix

            def say_it(self, word: str) -> str:
                return f"{self.prefix}{word}"

        runner = CommandRunner(Echo, prog="echo")
        assert runner.run(["say-it", "--word", "hi"]) == ">hi"
        assert runner.run(["--prefix", "#", "say-it", "--word", "hi"]) == "#hi"

    def test_config_is_lazy(self) -> None:
        app = Horolab(config="missing.toml")
        assert app.config_path == "missing.toml"
        assert app._config is None
