"""Text format for reduction programs.

.. code-block:: text

    # two-qubit parity check
    qubits: 2 0
    output: 0
    unitary CNOT 0 1
    measure IZ keep +1 as check
    case check {+1: unitary H 0; -1: unitary S 0}
    choice 1/2{unitary X 0} 1/2{}
    scale 1/2

Gate targets and the output qubit are 0-based. Instructions nested in ``choice`` and
``case`` braces are separated by ``;``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from magicdistill.core.pauli import NonHermitianError, PauliOperator, stabilizer
from magicdistill.core.tableau import Gate, UnknownGateError
from magicdistill.program.types import (
    FeedforwardCase,
    Instruction,
    Measure,
    Outcome,
    ProgramError,
    ProgramParseError,
    RandomChoice,
    ReductionProgram,
    Scale,
    Unitary,
    check_sequence,
)

_HEADER = re.compile(r"^qubits:\s*(?P<n>\d+)\s+(?P<m>\d+)$")
_OUTPUT = re.compile(r"^output:\s*(?P<k>\d+)$")
_MEASURE = re.compile(
    r"^measure\s+(?P<pauli>\S+)\s+keep\s+(?P<keep>\+1|-1|both)(?:\s+as\s+(?P<label>\w+))?$"
)
_CHOICE_OPTION = re.compile(r"\s*(?P<weight>[0-9./]+)\s*\{")
_CASE = re.compile(r"^case\s+(?P<label>\w+)\s*\{(?P<body>.*)\}$")
_CASE_PIECE = re.compile(r"^(?P<outcome>[+-]1)\s*:\s*(?P<rest>.*)$")
_KEEP: dict[str, frozenset[Outcome]] = {
    "+1": frozenset({1}),
    "-1": frozenset({-1}),
    "both": frozenset({1, -1}),
}


def load_program(path: str | Path) -> ReductionProgram:
    return parse_program(Path(path).read_text())


def parse_program(text: str) -> ReductionProgram:
    lines = [(number, _strip(line)) for number, line in enumerate(text.splitlines(), 1)]
    lines = [(number, line) for number, line in lines if line]
    if not lines:
        msg = "Empty program, expected a 'qubits: <n> <m>' header"
        raise ProgramParseError(msg, 1)
    number, header = lines[0]
    match = _HEADER.match(header)
    if match is None:
        msg = f"Expected a 'qubits: <n> <m>' header, got {header!r}"
        raise ProgramParseError(msg, number, header)
    n_resource, n_ancilla = int(match.group("n")), int(match.group("m"))
    registers = (number, header)
    output = 0
    body = lines[1:]
    if body and body[0][1].startswith("output:"):
        number, line = body[0]
        match = _OUTPUT.match(line)
        if match is None:
            msg = f"Expected 'output: <qubit>', got {line!r}"
            raise ProgramParseError(msg, number, line)
        output = int(match.group("k"))
        if n_resource > 0:
            registers = (number, line)
        body = body[1:]
    n = n_resource + n_ancilla
    parser = _Parser(n)
    instructions: list[Instruction] = []
    known: set[str] = set()
    used: set[str] = set()
    for number, line in body:
        parser.line, parser.text = number, line
        instruction = parser.instruction(line)
        try:
            known = check_sequence((instruction,), n, known, used)
        except ProgramError as error:
            raise parser.fail(str(error)) from error
        instructions.append(instruction)
    try:
        return ReductionProgram(n_resource, n_ancilla, tuple(instructions), output)
    except ProgramError as error:
        raise ProgramParseError(str(error), *registers) from error


class _Parser:
    def __init__(self, n: int) -> None:
        self.n = n
        self.line = 0
        self.text = ""
        self.measurements = 0
        self.choices = 0
        self.known: set[str] = set()

    def fail(self, message: str) -> ProgramParseError:
        return ProgramParseError(message, self.line, self.text)

    def sequence(self, text: str) -> tuple[Instruction, ...]:
        return tuple(self.instruction(piece) for piece in _split(text, ";") if piece)

    def instruction(self, text: str) -> Instruction:
        text = text.strip()
        keyword = text.split(maxsplit=1)[0] if text else ""
        try:
            if keyword == "unitary":
                return self.unitary(text)
            if keyword == "measure":
                return self.measure(text)
            if keyword == "choice":
                return self.choice(text)
            if keyword == "case":
                return self.case(text)
            if keyword == "scale":
                return self.scale(text)
        except (ProgramError, ValueError) as error:
            if isinstance(error, ProgramParseError):
                raise
            raise self.fail(str(error)) from error
        msg = f"Unknown instruction {keyword!r}"
        raise self.fail(msg)

    def unitary(self, text: str) -> Unitary:
        parts = text.split()
        if len(parts) < 3:  # noqa: PLR2004
            msg = f"Expected 'unitary <gate> <targets>', got {text!r}"
            raise self.fail(msg)
        try:
            targets = tuple(int(t) for t in parts[2:])
        except ValueError:
            msg = f"Gate targets must be integers, got {parts[2:]}"
            raise self.fail(msg) from None
        try:
            return Unitary(Gate(parts[1], targets, self.n))
        except UnknownGateError as error:
            raise self.fail(str(error)) from error

    def measure(self, text: str) -> Measure:
        match = _MEASURE.match(text)
        if match is None:
            msg = f"Expected 'measure <pauli> keep <+1|-1|both> [as <label>]', got {text!r}"
            raise self.fail(msg)
        try:
            pauli = stabilizer(match.group("pauli"))
        except NonHermitianError as error:
            raise self.fail(str(error)) from error
        if pauli.n != self.n:
            msg = f"Measured operator {pauli.label()} must act on {self.n} qubits"
            raise self.fail(msg)
        label = match.group("label") or f"m{self.measurements}"
        self.measurements += 1
        if label in self.known:
            msg = f"Measurement label {label!r} is used twice"
            raise self.fail(msg)
        self.known.add(label)
        return Measure(pauli, _KEEP[match.group("keep")], label)

    def choice(self, text: str) -> RandomChoice:
        rest = text[len("choice") :]
        options: list[tuple[Fraction, tuple[Instruction, ...]]] = []
        label = f"c{self.choices}"
        self.choices += 1
        while rest.strip():
            match = _CHOICE_OPTION.match(rest)
            if match is None:
                msg = f"Expected '<weight>{{...}}' in choice, got {rest.strip()!r}"
                raise self.fail(msg)
            try:
                weight = Fraction(match.group("weight"))
            except (ValueError, ZeroDivisionError):
                msg = f"Invalid choice weight {match.group('weight')!r}"
                raise self.fail(msg) from None
            end = _closing_brace(rest, match.end() - 1)
            if end is None:
                msg = "Unbalanced braces in choice"
                raise self.fail(msg)
            options.append((weight, self.sequence(rest[match.end() : end])))
            rest = rest[end + 1 :]
        return RandomChoice(tuple(options), label)

    def case(self, text: str) -> FeedforwardCase:
        match = _CASE.match(text)
        if match is None:
            msg = f"Expected 'case <label> {{+1: ...; -1: ...}}', got {text!r}"
            raise self.fail(msg)
        label = match.group("label")
        if label not in self.known:
            msg = f"Feedforward on {label!r} before it is measured"
            raise self.fail(msg)
        blocks: dict[Outcome, list[str]] = {}
        current: list[str] | None = None
        for piece in _split(match.group("body"), ";"):
            if not piece:
                continue
            outcome = _CASE_PIECE.match(piece)
            if outcome is not None:
                value: Outcome = 1 if outcome.group("outcome") == "+1" else -1
                if value in blocks:
                    msg = f"Outcome {value:+d} appears twice in case {label!r}"
                    raise self.fail(msg)
                current = blocks[value] = []
                piece = outcome.group("rest").strip()
            elif current is None:
                msg = f"Case body must start with '+1:' or '-1:', got {piece!r}"
                raise self.fail(msg)
            if piece:
                current.append(piece)
        cases = tuple(
            (value, self.sequence(";".join(pieces))) for value, pieces in blocks.items()
        )
        return FeedforwardCase(label, cases)

    def scale(self, text: str) -> Scale:
        parts = text.split()
        if len(parts) != 2:  # noqa: PLR2004
            msg = f"Expected 'scale <k>', got {text!r}"
            raise self.fail(msg)
        try:
            factor = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            msg = f"Invalid scale factor {parts[1]!r}"
            raise self.fail(msg) from None
        return Scale(factor)


def format_program(program: ReductionProgram) -> str:
    """The text form of a program, parsed back by :func:`parse_program`"""
    lines = [f"qubits: {program.n_resource} {program.n_ancilla}"]
    if program.output_qubit:
        lines.append(f"output: {program.output_qubit}")
    lines.extend(format_instruction(i) for i in program.instructions)
    return "\n".join(lines) + "\n"


def format_instruction(instruction: Instruction) -> str:
    if isinstance(instruction, Unitary):
        factor = instruction.factor
        if not isinstance(factor, Gate):
            msg = "Only named gates have a text form"
            raise ValueError(msg)
        return f"unitary {factor.name} {' '.join(map(str, factor.targets))}"
    if isinstance(instruction, Measure):
        keep = {1: "+1", -1: "-1"}
        outcomes = instruction.outcomes
        kept = "both" if len(outcomes) > 1 else keep[outcomes[0]]
        label = f" as {instruction.label}" if instruction.label else ""
        return f"measure {_pauli_text(instruction.pauli)} keep {kept}{label}"
    if isinstance(instruction, RandomChoice):
        options = " ".join(
            f"{weight}{{{_sequence_text(sequence)}}}"
            for weight, sequence in instruction.options
        )
        return f"choice {options}"
    if isinstance(instruction, FeedforwardCase):
        cases = "; ".join(
            f"{outcome:+d}: {_sequence_text(sequence)}".rstrip()
            for outcome, sequence in instruction.cases
        )
        return f"case {instruction.label} {{{cases}}}"
    return f"scale {instruction.factor}"


def _sequence_text(sequence: tuple[Instruction, ...]) -> str:
    return "; ".join(format_instruction(i) for i in sequence)


def _pauli_text(p: PauliOperator) -> str:
    label = p.label()
    return label[1:] if label.startswith("+") and not label.startswith("+i") else label


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _split(text: str, separator: str) -> list[str]:
    pieces, depth, start = [], 0, 0
    for index, char in enumerate(text):
        if char == "{":
            depth += 1
        elif char == "}":
            depth -= 1
        elif char == separator and depth == 0:
            pieces.append(text[start:index].strip())
            start = index + 1
    pieces.append(text[start:].strip())
    return pieces


def _closing_brace(text: str, opening: int) -> int | None:
    depth = 0
    for index in range(opening, len(text)):
        if text[index] == "{":
            depth += 1
        elif text[index] == "}":
            depth -= 1
            if depth == 0:
                return index
    return None
