"""Unit tests for reading signatures and docstrings into commands."""

from __future__ import annotations

import inspect
from typing import List, Literal, Optional

import pytest

from horolab.cli.introspection import (
    MISSING,
    extract_command,
    parse_google_docstring,
    resolve_parameter,
)
from horolab.core.exceptions import ConfigurationError


class TestParseGoogleDocstring:
    """Tests for parse_google_docstring."""

    def test_empty(self) -> None:
        assert parse_google_docstring(None) == (None, {})
        assert parse_google_docstring("") == (None, {})

    def test_summary_only(self) -> None:
        assert parse_google_docstring("Run a suite.") == ("Run a suite.", {})

    def test_args(self) -> None:
        doc = """Run a suite.

        Args:
            suite: Suite name.
            calibrate (bool): Fit constants
                before running.

        Returns:
            value: not a parameter.
        """
        summary, params = parse_google_docstring(inspect.cleandoc(doc))
        assert summary == "Run a suite."
        assert params == {"suite": "Suite name.", "calibrate": "Fit constants before running."}

    def test_arguments_header(self) -> None:
        summary, params = parse_google_docstring("Do.\n\nArguments:\n    x: The x.")
        assert params == {"x": "The x."}


class TestResolveParameter:
    """Tests for resolve_parameter."""

    def test_bool_is_flag(self) -> None:
        info = resolve_parameter("sweep", bool, False)
        assert info.is_flag
        assert not info.required

    def test_bool_without_default(self) -> None:
        assert resolve_parameter("sweep", bool, MISSING).default is False

    def test_literal(self) -> None:
        info = resolve_parameter("mode", Literal["rank1", "rank2_paths"], MISSING)
        assert info.choices == ("rank1", "rank2_paths")
        assert info.converter is str
        assert info.required

    def test_optional(self) -> None:
        info = resolve_parameter("config", Optional[str], None)
        assert info.converter is str
        assert info.default is None

    @pytest.mark.parametrize("annotation", [int, float, str])
    def test_scalars(self, annotation: type) -> None:
        assert resolve_parameter("x", annotation, 1).converter is annotation

    def test_unannotated(self) -> None:
        assert resolve_parameter("x", None, MISSING).converter is str

    def test_unsupported(self) -> None:
        with pytest.raises(ConfigurationError):
            resolve_parameter("xs", List[int], MISSING)


class Sample:
    def run(self, first_value: int, mode: Literal["a", "b"] = "a", *args: int, **kw: int) -> None:
        """Run it.

        Args:
            first_value: A number.
            mode: The mode.
        """

class TestExtractCommand:
    """Tests for extract_command."""

    def test_method(self) -> None:
        info = extract_command(Sample.run)
        assert info.name == "run"
        assert info.summary == "Run it."
        assert [p.name for p in info.parameters] == ["first_value", "mode"]
        first, mode = info.parameters
        assert first.required
        assert first.converter is int
        assert first.description == "A number."
        assert mode.default == "a"

    def test_kebab_name(self) -> None:
        def fill_sweep() -> None:
            pass

        assert extract_command(fill_sweep).name == "fill-sweep"

    def test_explicit_name(self) -> None:
        assert extract_command(Sample.run, name="go").name == "go"

    def test_no_signature(self) -> None:
        with pytest.raises(ConfigurationError):
            extract_command(42)  # type: ignore[arg-type]
