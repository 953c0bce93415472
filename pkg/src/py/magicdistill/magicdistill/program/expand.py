"""Enumerate the Kraus operators of a program.

Decision paths are walked depth first: kept measurement outcomes in the order ``+1``
then ``-1`` and random-choice options in the order written. Every path is then
combined with each computational-basis string ``j`` of the qubits that are traced out,
in lexicographic order.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger

from magicdistill.config import MAGICDISTILL_BRANCH_CAP
from magicdistill.core.pauli import PauliOperator
from magicdistill.core.tableau import Gate
from magicdistill.program.types import (
    BranchExpansion,
    BranchId,
    BranchKraus,
    BranchStep,
    FeedforwardCase,
    Instruction,
    Measure,
    RandomChoice,
    ReductionProgram,
    Scale,
    Unitary,
)

logger = getLogger(__name__)


@dataclass(frozen=True)
class DecisionPath:
    decisions: tuple[tuple[str, str], ...] = ()
    steps: tuple[BranchStep, ...] = ()
    weight: Fraction = Fraction(1)
    outcomes: tuple[tuple[str, int], ...] = field(default=(), compare=False)

    def recorded(self, label: str) -> int:
        for name, value in self.outcomes:
            if name == label:
                return value
        msg = f"No outcome recorded for {label!r}"
        raise KeyError(msg)


def decision_paths(program: ReductionProgram) -> Iterator[DecisionPath]:
    yield from _walk(program.instructions, DecisionPath(), _choice_labels(program))


def _choice_labels(program: ReductionProgram) -> dict[int, str]:
    # unlabeled choices are named by their position in the program text
    labels: dict[int, str] = {}

    def visit(sequence: Sequence[Instruction]) -> None:
        for instruction in sequence:
            if isinstance(instruction, RandomChoice):
                labels[id(instruction)] = instruction.label or f"c{len(labels)}"
                for _, option in instruction.options:
                    visit(option)
            elif isinstance(instruction, FeedforwardCase):
                for _, branch in instruction.cases:
                    visit(branch)

    visit(program.instructions)
    return labels


def _walk(
    sequence: Sequence[Instruction],
    path: DecisionPath,
    choices: dict[int, str],
) -> Iterator[DecisionPath]:
    if not sequence:
        yield path
        return
    head, rest = sequence[0], sequence[1:]
    if isinstance(head, Unitary):
        yield from _walk(rest, _extend(path, steps=(head.factor,)), choices)
    elif isinstance(head, Scale):
        yield from _walk(rest, _extend(path, weight=head.factor**2), choices)
    elif isinstance(head, Measure):
        for outcome in head.outcomes:
            projector = head.pauli if outcome == 1 else -head.pauli
            decision = (head.label, f"{outcome:+d}")
            branch = _extend(
                path,
                steps=(projector,),
                decisions=(decision,),
                outcomes=((head.label, outcome),),
            )
            yield from _walk(rest, branch, choices)
    elif isinstance(head, RandomChoice):
        label = choices[id(head)]
        for index, (weight, option) in enumerate(head.options):
            branch = _extend(path, weight=weight, decisions=((label, str(index)),))
            yield from _walk((*option, *rest), branch, choices)
    elif isinstance(head, FeedforwardCase):
        outcome = path.recorded(head.label)
        yield from _walk((*head.branch(outcome), *rest), path, choices)  # type: ignore[arg-type]
    else:  # nocov
        msg = f"Unknown instruction {head!r}"
        raise TypeError(msg)


def _extend(
    path: DecisionPath,
    steps: tuple[BranchStep, ...] = (),
    weight: Fraction = Fraction(1),
    decisions: tuple[tuple[str, str], ...] = (),
    outcomes: tuple[tuple[str, int], ...] = (),
) -> DecisionPath:
    return DecisionPath(
        path.decisions + decisions,
        path.steps + steps,
        path.weight * weight,
        path.outcomes + outcomes,
    )


def basis_projectors(j: Sequence[int], n: int) -> tuple[PauliOperator, ...]:
    """``(1 + (-1)**j_q Z_q) / 2`` for qubits ``1 .. n - 1``"""
    projectors = []
    for q, bit in enumerate(j, 1):
        z = PauliOperator.single(n, q, "Z")
        projectors.append(-z if bit else z)
    return tuple(projectors)


def ancilla_projectors(program: ReductionProgram) -> tuple[PauliOperator, ...]:
    n = program.n_total
    return tuple(PauliOperator.single(n, q, "Z") for q in range(program.n_resource, n))


def iter_branches(program: ReductionProgram) -> Iterator[BranchKraus]:
    n = program.n_total
    prefix = ancilla_projectors(program)
    suffix: tuple[BranchStep, ...] = ()
    if program.output_qubit:
        suffix = (Gate("SWAP", (0, program.output_qubit), n),)
    index = 0
    for path in decision_paths(program):
        for j in itertools.product((0, 1), repeat=n - 1):
            yield BranchKraus(
                index=index,
                branch_id=BranchId(path.decisions, j),
                n_resource=program.n_resource,
                n_ancilla=program.n_ancilla,
                steps=prefix + path.steps + suffix + basis_projectors(j, n),
                weight=path.weight,
            )
            index += 1


def expand_branches(
    program: ReductionProgram, cap: int | None = None
) -> BranchExpansion:
    """At most ``cap`` branches and whether they are all of them"""
    cap = MAGICDISTILL_BRANCH_CAP.current if cap is None else cap
    if cap < 1:
        msg = f"Branch cap must be at least 1, got {cap}"
        raise ValueError(msg)
    branches = list(itertools.islice(iter_branches(program), cap + 1))
    exhaustive = len(branches) <= cap
    if not exhaustive:
        branches.pop()
        logger.warning("Branch expansion stopped at the cap of %d branches", cap)
    logger.debug("Expanded %d branches", len(branches))
    return BranchExpansion(tuple(branches), exhaustive, cap)
