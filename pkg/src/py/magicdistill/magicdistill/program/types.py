from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Union

import numpy as np
from typing_extensions import TypeAlias

from magicdistill.core.dense import (
    ComplexMatrix,
    factor_matrix,
    projector_matrix,
    projector_product,
)
from magicdistill.core.pauli import PauliOperator
from magicdistill.core.tableau import CliffordFactor, CliffordTableau, Gate

Outcome = Literal[1, -1]


class ProgramError(ValueError):
    """A program refers to qubits, labels or weights that do not exist"""


class ProgramParseError(ValueError):
    """Program or code text could not be parsed"""

    def __init__(self, message: str, line: int, text: str = "") -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.text = text


@dataclass(frozen=True)
class Unitary:
    factor: Gate | CliffordTableau

    def __str__(self) -> str:
        return f"unitary {self.factor}"


@dataclass(frozen=True)
class Measure:
    """Measure a Hermitian Pauli and continue only on the kept outcomes"""

    pauli: PauliOperator
    keep: frozenset[Outcome] = frozenset({1, -1})
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "keep", frozenset(self.keep))
        if not self.keep or not self.keep <= {1, -1}:
            msg = f"Kept outcomes must be a nonempty subset of {{+1, -1}}, got {set(self.keep)}"
            raise ProgramError(msg)
        if not self.pauli.is_hermitian:
            msg = f"Measured operator {self.pauli.label()} is not Hermitian"
            raise ProgramError(msg)

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        """Kept outcomes, ``+1`` first"""
        return tuple(o for o in (1, -1) if o in self.keep)  # type: ignore[misc]

    def __str__(self) -> str:
        keep = "both" if self.keep == {1, -1} else f"{next(iter(self.keep)):+d}"
        return f"measure {self.pauli.label()} keep {keep} as {self.label}"


@dataclass(frozen=True)
class RandomChoice:
    """Run one of several instruction sequences with the given probabilities"""

    options: tuple[tuple[Fraction, tuple[Instruction, ...]], ...]
    label: str = ""

    def __post_init__(self) -> None:
        options = tuple((Fraction(w), tuple(seq)) for w, seq in self.options)
        object.__setattr__(self, "options", options)
        if not options:
            msg = "A random choice needs at least one option"
            raise ProgramError(msg)
        if any(w <= 0 for w, _ in options):
            msg = f"Choice weights must be positive, got {[str(w) for w, _ in options]}"
            raise ProgramError(msg)
        if sum(w for w, _ in options) != 1:
            msg = f"Choice weights must sum to 1, got {[str(w) for w, _ in options]}"
            raise ProgramError(msg)


@dataclass(frozen=True)
class FeedforwardCase:
    """Run the sequence selected by a recorded measurement outcome"""

    label: str
    cases: tuple[tuple[Outcome, tuple[Instruction, ...]], ...]

    def __post_init__(self) -> None:
        cases = tuple((outcome, tuple(seq)) for outcome, seq in self.cases)
        object.__setattr__(self, "cases", cases)
        outcomes = [outcome for outcome, _ in cases]
        if len(set(outcomes)) != len(outcomes) or not set(outcomes) <= {1, -1}:
            msg = f"Case outcomes must be distinct values of +1 and -1, got {outcomes}"
            raise ProgramError(msg)

    def branch(self, outcome: Outcome) -> tuple[Instruction, ...]:
        for case, sequence in self.cases:
            if case == outcome:
                return sequence
        return ()


@dataclass(frozen=True)
class Scale:
    """Multiply the Kraus operator by ``factor``"""

    factor: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "factor", Fraction(self.factor))
        if not 0 < self.factor <= 1:
            msg = f"Scale factors must lie in (0, 1], got {self.factor}"
            raise ProgramError(msg)


Instruction: TypeAlias = Union[Unitary, Measure, RandomChoice, FeedforwardCase, Scale]


@dataclass(frozen=True)
class ReductionProgram:
    """An ``n_resource``-to-1 Clifford reduction with ``n_ancilla`` qubits in ``|0>``"""

    n_resource: int
    n_ancilla: int
    instructions: tuple[Instruction, ...]
    output_qubit: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if self.n_resource < 1 or self.n_ancilla < 0:
            msg = f"Invalid register sizes {self.n_resource} and {self.n_ancilla}"
            raise ProgramError(msg)
        if not 0 <= self.output_qubit < self.n_resource:
            msg = f"Output qubit {self.output_qubit} is not a resource qubit"
            raise ProgramError(msg)
        check_sequence(self.instructions, self.n_total, set(), set())

    @property
    def n_total(self) -> int:
        return self.n_resource + self.n_ancilla


def check_sequence(
    sequence: Iterable[Instruction], n: int, known: set[str], used: set[str]
) -> set[str]:
    """Labels recorded on every path through ``sequence``

    ``known`` holds the labels recorded before it and ``used`` collects every label
    seen so far.
    """
    known = set(known)
    for instruction in sequence:
        if isinstance(instruction, Unitary):
            if instruction.factor.n != n:
                msg = f"{instruction} does not act on {n} qubits"
                raise ProgramError(msg)
        elif isinstance(instruction, Measure):
            if instruction.pauli.n != n:
                msg = f"{instruction} does not act on {n} qubits"
                raise ProgramError(msg)
            if instruction.label and instruction.label in used:
                msg = f"Measurement label {instruction.label!r} is used twice"
                raise ProgramError(msg)
            used.add(instruction.label)
            known.add(instruction.label)
        elif isinstance(instruction, RandomChoice):
            recorded = [
                check_sequence(seq, n, known, used) for _, seq in instruction.options
            ]
            known = set.intersection(*recorded)
        elif isinstance(instruction, FeedforwardCase):
            if instruction.label not in known:
                msg = f"Feedforward on {instruction.label!r} before it is measured"
                raise ProgramError(msg)
            recorded = [
                check_sequence(instruction.branch(o), n, known, used) for o in (1, -1)
            ]
            known = set.intersection(*recorded)
    return known


@dataclass(frozen=True)
class BranchId:
    """Decisions taken along a branch and the basis string of the traced qubits"""

    decisions: tuple[tuple[str, str], ...]
    j: tuple[int, ...]

    def __str__(self) -> str:
        decisions = ",".join(f"{label}={value}" for label, value in self.decisions)
        return f"{decisions or '-'}|j={''.join(map(str, self.j))}"


BranchStep: TypeAlias = Union[CliffordFactor, PauliOperator]


@dataclass(frozen=True)
class BranchKraus:
    """One Kraus operator of a program

    ``steps`` are listed in the order they act, so the operator is
    ``sqrt(weight) * 2**scale_log2 * steps[-1] ... steps[0]``. A
    :class:`~magicdistill.core.pauli.PauliOperator` step ``s`` is the projector
    ``(1 + s) / 2``.
    """

    index: int
    branch_id: BranchId
    n_resource: int
    n_ancilla: int
    steps: tuple[BranchStep, ...]
    weight: Fraction = Fraction(1)
    scale_log2: Fraction = Fraction(0)

    @property
    def n(self) -> int:
        return self.n_resource + self.n_ancilla

    @property
    def cliffords(self) -> list[CliffordFactor]:
        return [s for s in self.steps if not isinstance(s, PauliOperator)]

    @property
    def projectors(self) -> list[PauliOperator]:
        return [s for s in self.steps if isinstance(s, PauliOperator)]


@dataclass(frozen=True)
class BranchExpansion:
    branches: tuple[BranchKraus, ...]
    exhaustive: bool
    cap: int


@dataclass(frozen=True)
class ZeroBranch:
    """A branch whose Kraus operator vanishes"""

    projector: PauliOperator


@dataclass(frozen=True)
class CanonicalKraus:
    """A branch rewritten as ``k C P``

    ``P`` is the product of ``(1 + g) / 2`` over the commuting generators in
    ``stab_projector`` and ``C`` is the product of ``factors`` (listed in the order they
    act) whose tableau is ``clifford``. The scalar is
    ``sqrt(weight) * 2**scale_log2 * i**phase``.
    """

    n: int
    scale_log2: Fraction
    clifford: CliffordTableau
    stab_projector: tuple[PauliOperator, ...]
    factors: tuple[CliffordFactor, ...] = field(default=(), compare=False)
    weight: Fraction = Fraction(1)
    phase: int = 0


def branch_matrix(branch: BranchKraus) -> ComplexMatrix:
    result = np.eye(1 << branch.n, dtype=complex)
    for step in branch.steps:
        if isinstance(step, PauliOperator):
            matrix = projector_matrix(step)
        else:
            matrix = factor_matrix(step)
        result = matrix @ result
    return _scalar(branch.weight, branch.scale_log2, 0) * result


def canonical_matrix(canon: CanonicalKraus) -> ComplexMatrix:
    clifford = np.eye(1 << canon.n, dtype=complex)
    for factor in canon.factors:
        clifford = factor_matrix(factor) @ clifford
    projector = projector_product(canon.stab_projector, canon.n)
    return _scalar(canon.weight, canon.scale_log2, canon.phase) * (clifford @ projector)


def _scalar(weight: Fraction, scale_log2: Fraction, phase: int) -> complex:
    return complex(np.sqrt(float(weight)) * 2 ** float(scale_log2) * 1j**phase)
