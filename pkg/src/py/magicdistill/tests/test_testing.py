import logging

import pytest

from magicdistill import testing
from magicdistill.logging import ROOT_LOGGER
from magicdistill.program.expand import expand_branches
from magicdistill.program.parser import parse_program

from tests.tooling import programs

EXPAND_LOGGER = logging.getLogger("magicdistill.program.expand")


def _log_failed_decode(error_type=ValueError, error="syndrome 0b101", message="decode"):
    try:
        raise error_type(error)
    except error_type:
        EXPAND_LOGGER.exception(message)


def test_errors_raised_inside_the_block_propagate():
    with pytest.raises(RuntimeError, match="not a projector"):
        with testing.assert_magicdistill_did_log():
            msg = "not a projector"
            raise RuntimeError(msg)


def test_records_from_module_loggers_are_seen():
    with testing.assert_magicdistill_did_log(match_message=r"Expanded \d+ branches"):
        expand_branches(parse_program(programs.MEASURE_X))


def test_level_filters_records():
    program = parse_program(programs.STEANE_MEASURE)
    with pytest.raises(testing.LogAssertionError):
        with testing.assert_magicdistill_did_log("Expanded", level=logging.WARNING):
            expand_branches(program, cap=64)

    with testing.assert_magicdistill_did_log(
        "stopped at the cap", level=logging.WARNING
    ):
        expand_branches(program, cap=4)


def test_logged_exception_matches():
    with testing.assert_magicdistill_did_log(
        match_message="decode", error_type=ValueError, match_error="0b101"
    ):
        _log_failed_decode()


@pytest.mark.parametrize(
    "logged",
    [
        {"error_type": KeyError},
        {"error": "syndrome 0b111"},
        {"message": "encode"},
    ],
    ids=["error-type", "error-text", "message"],
)
def test_logged_exception_mismatch(logged):
    with pytest.raises(AssertionError, match="Could not find a log record matching"):
        with testing.assert_magicdistill_did_log(
            match_message="decode", error_type=ValueError, match_error="0b101"
        ):
            _log_failed_decode(**logged)


def test_failure_message_names_every_criterion():
    with pytest.raises(testing.LogAssertionError) as info:
        with testing.assert_magicdistill_did_log(
            match_message="decode", error_type=ValueError, match_error="0b101"
        ):
            pass
    report = str(info.value)
    for part in ("decode", "ValueError", "0b101"):
        assert part in report


def test_assert_magicdistill_did_not_log():
    with testing.assert_magicdistill_did_not_log("stopped at the cap"):
        expand_branches(parse_program(programs.STEANE_MEASURE), cap=64)

    with pytest.raises(AssertionError, match="Did find a log record matching"):
        with testing.assert_magicdistill_did_not_log("stopped at the cap"):
            expand_branches(parse_program(programs.STEANE_MEASURE), cap=8)


def test_list_logged_exceptions_pops_matching_records():
    with testing.capture_magicdistill_logs() as records:
        ROOT_LOGGER.info("plain record")
        _log_failed_decode()
        _log_failed_decode(error_type=KeyError, error="missing axis")

        found = testing.list_logged_exceptions(records, "0b101", ValueError)
        assert [str(e) for e in found] == ["syndrome 0b101"]
        assert [r.getMessage() for r in records][-2:] == ["plain record", "decode"]

        kept = testing.list_logged_exceptions(
            records, types=KeyError, del_log_records=False
        )
        assert len(kept) == 1
        assert any(r.exc_info and r.exc_info[0] is KeyError for r in records)


def test_nested_captures_drop_their_own_records():
    with testing.capture_magicdistill_logs() as outer:
        EXPAND_LOGGER.info("outer")
        with testing.capture_magicdistill_logs() as inner:
            EXPAND_LOGGER.info("inner")
            assert inner[-1].getMessage() == "inner"
        assert outer[-1].getMessage() == "outer"
