from magicdistill.testing.logs import (
    LogAssertionError,
    assert_magicdistill_did_log,
    assert_magicdistill_did_not_log,
    capture_magicdistill_logs,
    list_logged_exceptions,
)

__all__ = [
    "assert_magicdistill_did_log",
    "assert_magicdistill_did_not_log",
    "capture_magicdistill_logs",
    "list_logged_exceptions",
    "LogAssertionError",
]
