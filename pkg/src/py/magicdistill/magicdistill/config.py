"""
Configuration options for magicdistill. Each one is read from the environment variable
of the same name and, where mutable, can also be changed at runtime.
"""

from __future__ import annotations

from magicdistill._option import Option

TRUE_VALUES = {"true", "1"}
FALSE_VALUES = {"false", "0"}


def boolean(value: str | bool | int) -> bool:
    if isinstance(value, bool):
        return value
    elif isinstance(value, int):
        return bool(value)
    elif not isinstance(value, str):
        msg = f"Expected str or bool, got {type(value).__name__}"
        raise TypeError(msg)

    if value.lower() in TRUE_VALUES:
        return True
    elif value.lower() in FALSE_VALUES:
        return False
    else:
        msg = (
            f"Invalid boolean value {value!r} - expected "
            f"one of {sorted(TRUE_VALUES | FALSE_VALUES)}"
        )
        raise ValueError(msg)


def positive_int(value: str | int) -> int:
    if isinstance(value, bool):
        msg = f"Expected an integer, got {value!r}"
        raise TypeError(msg)
    number = int(value)
    if number < 1:
        msg = f"Expected a positive integer, got {number}"
        raise ValueError(msg)
    return number


MAGICDISTILL_DEBUG_MODE = Option(
    "MAGICDISTILL_DEBUG_MODE", default=False, validator=boolean, mutable=True
)
"""Get extra logs and consistency checks at the cost of performance.

This will enable the following:

- :data:`MAGICDISTILL_CHECK_REPORT_SPEC`
- :data:`MAGICDISTILL_CHECK_INVARIANTS`
"""

MAGICDISTILL_CHECK_REPORT_SPEC = Option(
    "MAGICDISTILL_CHECK_REPORT_SPEC", parent=MAGICDISTILL_DEBUG_MODE, validator=boolean
)
"""Validate every run report against the report JSON schema before it is printed"""

MAGICDISTILL_CHECK_INVARIANTS = Option(
    "MAGICDISTILL_CHECK_INVARIANTS", parent=MAGICDISTILL_DEBUG_MODE, validator=boolean
)
"""Re-check normalized branches against their dense matrices when they are small"""

MAGICDISTILL_THREADS = Option("MAGICDISTILL_THREADS", default=1, validator=positive_int)
"""Worker threads used to evaluate verification trials and sweep points"""

MAGICDISTILL_BRANCH_CAP = Option(
    "MAGICDISTILL_BRANCH_CAP", default=2**20, validator=positive_int
)
"""Default number of branches enumerated before an expansion is marked incomplete"""

MAGICDISTILL_DENSE_MAX_QUBITS = Option(
    "MAGICDISTILL_DENSE_MAX_QUBITS", default=10, mutable=False, validator=positive_int
)
"""Largest register the dense density-matrix paths will build"""

MAGICDISTILL_SEGMENT_SIZE = Option(
    "MAGICDISTILL_SEGMENT_SIZE", default=14, validator=positive_int
)
"""Generators enumerated per vectorized block of a stabilizer group sum

Blocks hold ``2**MAGICDISTILL_SEGMENT_SIZE`` group elements at a time.
"""
