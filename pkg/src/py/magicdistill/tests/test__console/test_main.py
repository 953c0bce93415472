import pytest

from magicdistill._console import distillation, run
from magicdistill.testing import assert_magicdistill_did_log

from tests.tooling import programs


@pytest.fixture
def program_file(tmp_path):
    path = tmp_path / "program.txt"
    path.write_text(programs.MEASURE_X)
    return str(path)


def _error_lines(capsys):
    return [line for line in capsys.readouterr().err.splitlines() if line]


def test_classify_without_target(capsys, program_file):
    assert run(["classify", program_file, "--f", "0.9"]) == 2
    (line,) = _error_lines(capsys)
    assert line.startswith("error[USAGE]: ")
    assert "--target" in line


def test_sweep_without_protocol(capsys):
    assert run(["sweep"]) == 2
    (line,) = _error_lines(capsys)
    assert line.startswith("error[USAGE]: ")
    assert "NAME|CODEFILE" in line


def test_bad_parameter_is_a_usage_error(capsys, program_file):
    assert run(["classify", program_file, "--target", "0,0,1", "--f", "high"]) == 2
    (line,) = _error_lines(capsys)
    assert line.startswith("error[USAGE]: ")


def test_unknown_command(capsys):
    assert run(["distill"]) == 2
    assert _error_lines(capsys)[0].startswith("error[USAGE]: ")


def test_command_errors_keep_their_code(capsys):
    assert run(["threshold", "parity2", "--bracket", "0.9,0.99"]) == 5
    (line,) = _error_lines(capsys)
    assert line.startswith("error[NO_THRESHOLD]: ")


def test_unexpected_runtime_error(capsys, monkeypatch):
    def broken_sweep(*args, **kwargs):
        msg = "worker pool stopped"
        raise RuntimeError(msg)

    monkeypatch.setattr(distillation, "sweep", broken_sweep)
    with assert_magicdistill_did_log(
        "failed unexpectedly", error_type=RuntimeError, match_error="worker pool"
    ):
        assert run(["sweep", "parity2", "--grid", "0.5:1:3"]) == 70
    (line,) = _error_lines(capsys)
    assert line == "error[INTERNAL]: RuntimeError: worker pool stopped"


def test_success_and_help(capsys):
    assert run(["threshold", "parity2"]) == 0
    assert '"threshold"' in capsys.readouterr().out
    assert run(["--help"]) == 0
    assert "sweep" in capsys.readouterr().out
