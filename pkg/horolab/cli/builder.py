"""Argparse construction for class-based command lines.

The __init__ parameters of a command class become global options and
each public method becomes a subcommand. Global options are accepted on
either side of the subcommand name:

    horolab --config run.toml verify --suite dil
    horolab verify --suite dil --config run.toml
"""

from __future__ import annotations

import argparse
import inspect
from dataclasses import dataclass, field
from typing import Any, Callable

from horolab.cli.introspection import CommandInfo, ParameterInfo, extract_command


@dataclass
class ArgumentConfig:
    """argparse settings for one option."""

    name: str
    flags: list[str]
    kwargs: dict[str, Any] = field(default_factory=dict)


@dataclass
class ParserConfig:
    """Everything needed to build the parser of a command class.

    Attributes:
        prog: Program name.
        description: Parser description.
        arguments: Global options, from __init__.
        subcommands: Subcommand name to (summary, options).
    """

    prog: str | None = None
    description: str | None = None
    arguments: list[ArgumentConfig] = field(default_factory=list)
    subcommands: dict[str, tuple[str | None, list[ArgumentConfig]]] = field(
        default_factory=dict
    )


def param_to_flag(name: str) -> str:
    """snake_case parameter to a --kebab-case flag."""
    return "--" + name.replace("_", "-")


def build_argument_config(param: ParameterInfo) -> ArgumentConfig:
    kwargs: dict[str, Any] = {"dest": param.name}
    help_text = param.description or ""
    if param.is_flag:
        kwargs["action"] = "store_true"
    else:
        kwargs["type"] = param.converter
        if param.choices is not None:
            kwargs["choices"] = list(param.choices)
        if param.required:
            kwargs["required"] = True
        else:
            kwargs["default"] = param.default
            if param.default is not None:
                help_text = f"{help_text} (default: {param.default})".strip()
    if help_text:
        kwargs["help"] = help_text
    return ArgumentConfig(param.name, [param_to_flag(param.name)], kwargs)


def is_public_method(name: str, member: Any) -> bool:
    return not name.startswith("_") and inspect.isfunction(member)


def extract_methods(cls: type) -> dict[str, Callable[..., Any]]:
    """Public methods of cls, in definition order."""
    return {
        name: member
        for name, member in vars(cls).items()
        if is_public_method(name, member)
    }


def build_command_config(cls: type, *, prog: str | None = None) -> ParserConfig:
    """Read a command class into a ParserConfig.

    The description is the first paragraph of the class docstring.
    """
    doc = inspect.getdoc(cls)
    config = ParserConfig(prog=prog, description=doc.split("\n\n")[0] if doc else None)
    if cls.__init__ is not object.__init__:
        init = extract_command(cls.__init__)
        config.arguments = [build_argument_config(p) for p in init.parameters]
    for method in extract_methods(cls).values():
        info: CommandInfo = extract_command(method)
        config.subcommands[info.name] = (
            info.summary,
            [build_argument_config(p) for p in info.parameters],
        )
    return config


class ParserBuilder:
    """Builds an ArgumentParser from a ParserConfig.

    Example:
        builder = ParserBuilder(build_command_config(Horolab, prog="horolab"))
        namespace = builder.parser.parse_args(["verify", "--suite", "dil"])
    """

    def __init__(self, config: ParserConfig) -> None:
        self._config = config
        self._parser: argparse.ArgumentParser | None = None

    @property
    def config(self) -> ParserConfig:
        return self._config

    @property
    def parser(self) -> argparse.ArgumentParser:
        """The parser, built on first use."""
        if self._parser is None:
            self._parser = self.build()
        return self._parser

    def build(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog=self._config.prog, description=self._config.description
        )
        for arg in self._config.arguments:
            parser.add_argument(*arg.flags, **arg.kwargs)

        if self._config.subcommands:
            sub = parser.add_subparsers(dest="command", metavar="COMMAND")
            for name, (summary, arguments) in self._config.subcommands.items():
                subparser = sub.add_parser(name, help=summary, description=summary)
                for arg in arguments:
                    subparser.add_argument(*arg.flags, **arg.kwargs)
                # globals again, suppressed so they do not reset the main parser's values
                for arg in self._config.arguments:
                    kwargs = {**arg.kwargs, "default": argparse.SUPPRESS}
                    kwargs.pop("required", None)
                    subparser.add_argument(*arg.flags, **kwargs)
        return parser


def split_namespace(
    config: ParserConfig, namespace: argparse.Namespace
) -> tuple[str | None, dict[str, Any], dict[str, Any]]:
    """Split parsed values into (command, __init__ kwargs, method kwargs)."""
    values = vars(namespace)
    command = values.get("command")
    init_kwargs = {a.name: values[a.name] for a in config.arguments if a.name in values}
    method_kwargs: dict[str, Any] = {}
    if command is not None:
        _, arguments = config.subcommands[command]
        method_kwargs = {a.name: values[a.name] for a in arguments if a.name in values}
    return command, init_kwargs, method_kwargs


__all__ = [
    "ArgumentConfig",
    "ParserBuilder",
    "ParserConfig",
    "build_argument_config",
    "build_command_config",
    "extract_methods",
    "is_public_method",
    "param_to_flag",
    "split_namespace",
]
