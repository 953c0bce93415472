"""Text format for stabilizer codes.

.. code-block:: text

    # two-qubit parity check
    n: 2
    gen: +ZZ
    Xl: +XX
    Zl: +ZI
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from magicdistill.core.pauli import PauliOperator
from magicdistill.core.stabilizer import StabilizerCode
from magicdistill.program.types import ProgramParseError

_KEYS = ("n", "gen", "Xl", "Zl", "name")


def load_code(path: str | Path) -> StabilizerCode:
    path = Path(path)
    return parse_code(path.read_text(), name=path.stem)


def parse_code(text: str, name: str = "") -> StabilizerCode:
    """Read a code, checking its generators and logical operators

    Raises :class:`~magicdistill.program.types.ProgramParseError` for malformed text
    and :class:`~magicdistill.core.stabilizer.CodeValidationError` for an invalid code.
    """
    n: int | None = None
    generators: list[PauliOperator] = []
    logicals: dict[str, PauliOperator] = {}
    last = 0
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last = number
        key, colon, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not colon or key not in _KEYS:
            msg = f"Expected one of {', '.join(k + ':' for k in _KEYS)}, got {line!r}"
            raise ProgramParseError(msg, number, line)
        if key == "name":
            name = value
            continue
        if key == "n":
            if n is not None:
                msg = "Qubit count given twice"
                raise ProgramParseError(msg, number, line)
            if not value.isdigit() or int(value) < 1:
                msg = f"Qubit count must be a positive integer, got {value!r}"
                raise ProgramParseError(msg, number, line)
            n = int(value)
            continue
        if n is None:
            msg = "The 'n:' header must come first"
            raise ProgramParseError(msg, number, line)
        try:
            pauli = PauliOperator.from_label(value)
        except ValueError as error:
            raise ProgramParseError(str(error), number, line) from error
        if pauli.n != n:
            msg = f"{pauli.label()} acts on {pauli.n} qubits, expected {n}"
            raise ProgramParseError(msg, number, line)
        if key == "gen":
            generators.append(pauli)
        elif key in logicals:
            msg = f"Logical operator {key!r} given twice"
            raise ProgramParseError(msg, number, line)
        else:
            logicals[key] = pauli
    if n is None:
        msg = "Missing 'n:' header"
        raise ProgramParseError(msg, max(last, 1))
    for key in ("Xl", "Zl"):
        if key not in logicals:
            msg = f"Missing logical operator {key!r}"
            raise ProgramParseError(msg, max(last, 1))
    return StabilizerCode(n, tuple(generators), logicals["Xl"], logicals["Zl"], name)


def format_code(code: StabilizerCode) -> str:
    lines = [f"n: {code.n}"]
    lines.extend(f"gen: {g.label()}" for g in code.generators)
    lines.append(f"Xl: {code.logical_x.label()}")
    lines.append(f"Zl: {code.logical_z.label()}")
    return "\n".join(lines) + "\n"


def code_digest(code: StabilizerCode) -> str:
    return text_digest(format_code(code))


def text_digest(text: str | bytes) -> str:
    data = text.encode() if isinstance(text, str) else text
    return f"sha256:{hashlib.sha256(data).hexdigest()}"
