"""Signature-driven command line for horolab."""

from horolab.cli.app import (
    CommandRunner,
    Horolab,
    main,
)
from horolab.cli.builder import (
    ArgumentConfig,
    ParserBuilder,
    ParserConfig,
    build_argument_config,
    build_command_config,
    extract_methods,
    is_public_method,
    param_to_flag,
    split_namespace,
)
from horolab.cli.introspection import (
    MISSING,
    CommandInfo,
    ParameterInfo,
    extract_command,
    parse_google_docstring,
    resolve_parameter,
)

__all__ = [
    "MISSING",
    "ArgumentConfig",
    "CommandInfo",
    "CommandRunner",
    "Horolab",
    "ParameterInfo",
    "ParserBuilder",
    "ParserConfig",
    "build_argument_config",
    "build_command_config",
    "extract_command",
    "extract_methods",
    "is_public_method",
    "main",
    "param_to_flag",
    "parse_google_docstring",
    "resolve_parameter",
    "split_namespace",
]
