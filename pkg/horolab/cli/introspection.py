"""Signature and docstring reading for the command line builder.

Commands are plain methods; their parameters become options and the
Args section of their Google-style docstrings becomes the help text.
"""

from __future__ import annotations

import inspect
import re
import types
from dataclasses import dataclass, field
from typing import Any, Callable, Literal, Union, get_args, get_origin, get_type_hints

from horolab.core.exceptions import ConfigurationError


class _Missing:
    """Sentinel for parameters without a default."""

    def __repr__(self) -> str:
        return "MISSING"


MISSING: Any = _Missing()


@dataclass
class ParameterInfo:
    """One command parameter.

    Attributes:
        name: Parameter name, also the argparse dest.
        converter: Callable turning the option text into a value.
        default: Default value, or MISSING.
        is_flag: Whether the parameter is a bool switch.
        choices: Allowed values of a Literal annotation.
        description: Help text from the docstring.
    """

    name: str
    converter: Callable[[str], Any] | None = None
    default: Any = MISSING
    is_flag: bool = False
    choices: tuple[Any, ...] | None = None
    description: str | None = None

    @property
    def required(self) -> bool:
        return self.default is MISSING


@dataclass
class CommandInfo:
    """A command read from a function or method."""

    name: str
    summary: str | None = None
    parameters: list[ParameterInfo] = field(default_factory=list)


_SECTION = re.compile(r"^\s*(Args|Arguments|Returns|Raises|Yields|Examples?|Attributes|Notes?):\s*$")
_PARAM = re.compile(r"^(\s*)(\w+)(?:\s*\([^)]+\))?\s*:\s*(.*)$")


def parse_google_docstring(docstring: str | None) -> tuple[str | None, dict[str, str]]:
    """Split a Google-style docstring into its summary and Args entries.

    Args:
        docstring: The cleaned docstring, or None.

    Returns:
        (summary, params), where params maps names to one-line descriptions.
    """
    if not docstring:
        return None, {}
    lines = docstring.split("\n")
    summary = next((line.strip() for line in lines if line.strip()), None)

    params: dict[str, str] = {}
    in_args = False
    current: str | None = None
    base_indent: int | None = None
    for line in lines:
        header = _SECTION.match(line)
        if header:
            in_args = header.group(1) in ("Args", "Arguments")
            current = None
            base_indent = None
            continue
        if not in_args or not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        match = _PARAM.match(line)
        if match and (base_indent is None or indent == base_indent):
            base_indent = indent
            current = match.group(2)
            params[current] = match.group(3).strip()
        elif current is not None and base_indent is not None and indent > base_indent:
            params[current] = f"{params[current]} {line.strip()}".strip()
    return summary, params


def _strip_optional(annotation: Any) -> Any:
    """T for Optional[T] or T | None; the annotation otherwise."""
    union_type = getattr(types, "UnionType", None)
    if get_origin(annotation) is Union or (
        union_type is not None and isinstance(annotation, union_type)
    ):
        args = [a for a in get_args(annotation) if a is not type(None)]
        if len(args) == 1:
            return args[0]
    return annotation


def resolve_parameter(name: str, annotation: Any, default: Any) -> ParameterInfo:
    """Build ParameterInfo from an annotation and default.

    Raises:
        ConfigurationError: If the annotation has no command line form.
    """
    inner = _strip_optional(annotation)
    if inner is bool:
        return ParameterInfo(name, None, False if default is MISSING else default, is_flag=True)
    if get_origin(inner) is Literal:
        values = get_args(inner)
        return ParameterInfo(name, type(values[0]), default, choices=values)
    if inner in (str, int, float) or inner is None:
        return ParameterInfo(name, inner or str, default)
    raise ConfigurationError(f"Parameter {name!r} has unsupported annotation {annotation!r}")


def extract_command(func: Callable[..., Any], name: str | None = None) -> CommandInfo:
    """Read the parameters and help text of a function or method.

    self and cls are skipped, and so are *args and **kwargs.

    Raises:
        ConfigurationError: If the signature cannot be read.
    """
    try:
        sig = inspect.signature(func)
    except (ValueError, TypeError) as e:
        raise ConfigurationError(f"Cannot get signature for {func!r}: {e}") from e
    try:
        hints = get_type_hints(func)
    except Exception:
        hints = getattr(func, "__annotations__", {})

    summary, descriptions = parse_google_docstring(inspect.getdoc(func))
    info = CommandInfo(name or func.__name__.replace("_", "-"), summary)
    for pname, param in sig.parameters.items():
        if pname in ("self", "cls") or param.kind in (
            inspect.Parameter.VAR_POSITIONAL,
            inspect.Parameter.VAR_KEYWORD,
        ):
            continue
        annotation = hints.get(pname)
        default = MISSING if param.default is inspect.Parameter.empty else param.default
        resolved = resolve_parameter(pname, annotation, default)
        resolved.description = descriptions.get(pname)
        info.parameters.append(resolved)
    return info


__all__ = [
    "MISSING",
    "CommandInfo",
    "ParameterInfo",
    "extract_command",
    "parse_google_docstring",
    "resolve_parameter",
]
