"""Run reports printed by every command.

Reports are JSON with sorted keys and a two space indent. Floats are written as strings
with 17 significant digits so the same run gives the same bytes on every platform.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from fractions import Fraction
from pathlib import Path
from typing import IO, Any

import click
from fastjsonschema import compile as compile_json_schema

from magicdistill.config import MAGICDISTILL_CHECK_REPORT_SPEC
from magicdistill.distill.protocols import format_number
from magicdistill.engine.codefile import text_digest

EXIT_CODES: dict[str, int] = {
    "PARSE_ERROR": 2,
    "INVALID_INPUT": 2,
    "ALL_BRANCHES_ZERO": 3,
    "THEOREM_VIOLATION": 4,
    "NO_THRESHOLD": 5,
    "UNDEFINED_RESULT": 6,
    "USAGE": 2,
    "INTERNAL": 70,
}

REPORT_JSON_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema",
    "$ref": "#/definitions/report",
    "definitions": {
        "report": {
            "type": "object",
            "properties": {
                "command": {"$ref": "#/definitions/command"},
                "inputs": {
                    "type": "object",
                    "additionalProperties": {"$ref": "#/definitions/input"},
                },
                "exhaustive": {"type": "boolean"},
                "branches": {
                    "type": "array",
                    "items": {"$ref": "#/definitions/branch"},
                },
                "result": {"type": "object"},
            },
            "required": ["command", "inputs", "result"],
            "additionalProperties": False,
        },
        "command": {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "args": {
                    "type": "object",
                    "additionalProperties": {"type": ["string", "null", "boolean"]},
                },
            },
            "required": ["name", "args"],
        },
        "input": {
            "type": "object",
            "properties": {
                "path": {"type": ["string", "null"]},
                "digest": {"$ref": "#/definitions/digest"},
            },
            "required": ["digest"],
        },
        "branch": {
            "type": "object",
            "properties": {
                "index": {"type": "integer"},
                "branch_id": {"type": "string"},
                "form": {"enum": ["zero", "A1", "A2", "B", None]},
                "scale_log2": {"type": "string"},
                "code_digest": {"$ref": "#/definitions/digest"},
            },
            "required": ["index", "branch_id", "form"],
        },
        "digest": {"type": "string", "pattern": "^sha256:[0-9a-f]{64}$"},
    },
}

_COMPILED_REPORT_VALIDATOR = compile_json_schema(REPORT_JSON_SCHEMA)


class CliError(click.ClickException):
    """A failure reported as a single ``error[CODE]: message`` line"""

    def __init__(self, code: str, message: str) -> None:
        if code not in EXIT_CODES:
            msg = f"Unknown error code {code!r}"
            raise ValueError(msg)
        super().__init__(" ".join(message.split()))
        self.code = code
        self.exit_code = EXIT_CODES[code]

    def format_message(self) -> str:
        return f"error[{self.code}]: {self.message}"

    def show(self, file: IO[Any] | None = None) -> None:
        click.echo(self.format_message(), file=file, err=file is None)


def plain(value: Any) -> Any:
    """Turn a report payload into JSON values, floats becoming fixed-width strings"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Mapping):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    # numpy scalars
    if hasattr(value, "item"):
        return plain(value.item())
    msg = f"Cannot put {type(value).__name__} into a report"
    raise TypeError(msg)


def command_echo(ctx: click.Context) -> dict[str, Any]:
    args = {
        name: value if value is None or isinstance(value, bool) else str(value)
        for name, value in sorted(ctx.params.items())
    }
    return {"name": ctx.info_name or "", "args": args}


def read_input(path: str) -> tuple[str, dict[str, str]]:
    """The text of an input file and its report entry"""
    try:
        data = Path(path).read_bytes()
    except OSError as error:
        msg = f"Cannot read {path}: {error.strerror or error}"
        raise CliError("INVALID_INPUT", msg) from error
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as error:
        msg = f"{path} is not UTF-8 text"
        raise CliError("INVALID_INPUT", msg) from error
    return text, {"path": path, "digest": text_digest(data)}


def render_report(report: Mapping[str, Any]) -> str:
    data = plain(report)
    if MAGICDISTILL_CHECK_REPORT_SPEC.current:
        validate_report(data)
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=True)


def validate_report(value: Any) -> dict[str, Any]:
    """Validate a rendered report - see :data:`REPORT_JSON_SCHEMA`"""
    _COMPILED_REPORT_VALIDATOR(value)
    return value


def emit_report(report: Mapping[str, Any]) -> None:
    click.echo(render_report(report))

