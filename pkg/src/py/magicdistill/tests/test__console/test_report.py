import json
from fractions import Fraction

import click
import numpy as np
import pytest
from fastjsonschema import JsonSchemaException

from magicdistill._console.report import (
    EXIT_CODES,
    CliError,
    command_echo,
    plain,
    read_input,
    render_report,
    validate_report,
)
from magicdistill.config import MAGICDISTILL_CHECK_REPORT_SPEC

DIGEST = "sha256:" + "0" * 64


def _report(**extra):
    report = {
        "command": {"name": "normalize", "args": {"cap": None}},
        "inputs": {"program": {"path": "p.txt", "digest": DIGEST}},
        "result": {},
    }
    report.update(extra)
    return report


def test_exit_codes():
    assert EXIT_CODES["PARSE_ERROR"] == EXIT_CODES["INVALID_INPUT"] == 2
    assert EXIT_CODES["ALL_BRANCHES_ZERO"] == 3
    assert EXIT_CODES["THEOREM_VIOLATION"] == 4
    assert EXIT_CODES["NO_THRESHOLD"] == 5
    assert EXIT_CODES["UNDEFINED_RESULT"] == 6
    assert EXIT_CODES["USAGE"] == 2
    assert EXIT_CODES["INTERNAL"] == 70


def test_cli_error_is_one_line():
    error = CliError("NO_THRESHOLD", "no sign\nchange   here")
    assert error.exit_code == 5
    assert error.format_message() == "error[NO_THRESHOLD]: no sign change here"


def test_cli_error_needs_a_known_code():
    with pytest.raises(ValueError, match="Unknown error code 'OOPS'"):
        CliError("OOPS", "message")


def test_plain():
    value = {
        "f": 0.1,
        "k": Fraction(-1, 2),
        "n": np.int64(3),
        "x": np.float64(0.25),
        "v": (1.0, None, True),
        1: "one",
    }
    assert plain(value) == {
        "f": "0.10000000000000001",
        "k": "-1/2",
        "n": 3,
        "x": "0.25",
        "v": ["1", None, True],
        "1": "one",
    }
    with pytest.raises(TypeError, match="Cannot put object"):
        plain(object())


def test_command_echo():
    @click.command()
    @click.option("--count", type=int, default=3)
    @click.option("--flag", is_flag=True)
    @click.option("--name", default=None)
    def command(count, flag, name):
        pass

    ctx = command.make_context("command", ["--flag"])
    assert command_echo(ctx) == {
        "name": "command",
        "args": {"count": "3", "flag": True, "name": None},
    }


def test_read_input(tmp_path):
    path = tmp_path / "p.txt"
    path.write_bytes(b"qubits: 1 0\n")
    text, entry = read_input(str(path))
    assert text == "qubits: 1 0\n"
    assert entry["path"] == str(path)
    assert entry["digest"].startswith("sha256:")


def test_read_input_rejects_binary(tmp_path):
    path = tmp_path / "p.bin"
    path.write_bytes(b"\xff\xfe")
    with pytest.raises(CliError, match="is not UTF-8 text"):
        read_input(str(path))


def test_render_is_sorted_and_stable():
    with MAGICDISTILL_CHECK_REPORT_SPEC.override(True):
        text = render_report(_report(exhaustive=True, branches=[]))
    assert text == render_report(_report(branches=[], exhaustive=True))
    assert list(json.loads(text)) == sorted(json.loads(text))
    assert text.startswith('{\n  "branches": []')


@pytest.mark.parametrize(
    "report",
    [
        _report(extra=1),
        _report(inputs={"program": {"path": "p", "digest": "md5:abc"}}),
        _report(branches=[{"index": 0, "branch_id": "-|j=", "form": "C"}]),
        {"command": {"name": "x", "args": {}}, "inputs": {}},
    ],
)
def test_invalid_reports(report):
    with pytest.raises(JsonSchemaException):
        validate_report(plain(report))


def test_valid_branch_rows():
    branch = {"index": 0, "branch_id": "-|j=", "form": None, "scale_log2": "-1/2"}
    assert validate_report(plain(_report(branches=[branch])))
