"""Seeded random programs, codes and resources.

Every trial draws from its own generator, spawned from the run's seed by trial index,
so a single trial can be replayed without regenerating the ones before it.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from magicdistill.core.pauli import PauliOperator
from magicdistill.core.stabilizer import StabilizerCode
from magicdistill.core.tableau import CliffordTableau, Gate, compose, conjugate
from magicdistill.engine.resource import BlochVector, ProductResource, as_bloch
from magicdistill.program.types import (
    FeedforwardCase,
    Instruction,
    Measure,
    Outcome,
    RandomChoice,
    ReductionProgram,
    Unitary,
)

MAX_GATE_DEPTH = 8
MAX_MEASUREMENTS = 3
PROGRAM_GATES = ("H", "S", "CNOT", "CZ")
CLIFFORD_GATES = ("H", "S", "CNOT")
# how often optional pieces show up in random programs and resources
PURE_STATE_RATE = 0.2
CHOICE_RATE = 0.5
CASE_RATE = 0.3
CASE_BRANCH_RATE = 0.7
_MIN_NORM = 1e-6

_KEEP_CHOICES: tuple[frozenset[Outcome], ...] = (
    frozenset({1, -1}),
    frozenset({1}),
    frozenset({-1}),
)


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """The generator of trial ``index``, the same as the ``index``-th spawned child"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def random_unit_vector(rng: np.random.Generator) -> BlochVector:
    while True:
        vector = rng.normal(size=3)
        norm = float(np.linalg.norm(vector))
        if norm > _MIN_NORM:
            return as_bloch(vector / norm)


def random_bloch(rng: np.random.Generator) -> BlochVector:
    """A point in the Bloch ball, pure with some probability"""
    direction = np.asarray(random_unit_vector(rng))
    radius = 1.0 if rng.random() < PURE_STATE_RATE else float(rng.random())
    return as_bloch(radius * direction)


def random_resource(rng: np.random.Generator, n: int) -> ProductResource:
    return ProductResource(tuple(random_bloch(rng) for _ in range(n)))


def random_pauli(
    rng: np.random.Generator, n: int, hermitian: bool = True
) -> PauliOperator:
    """A non-identity Pauli with a random sign"""
    while True:
        x, z = (int(v) for v in rng.integers(0, 1 << n, size=2))
        if x or z:
            break
    p = PauliOperator(n, x, z, int(rng.integers(0, 4)))
    if hermitian and not p.is_hermitian:
        p = PauliOperator(n, x, z, p.phase + 1)
    return p


def random_gate(
    rng: np.random.Generator, n: int, names: tuple[str, ...] = PROGRAM_GATES
) -> Gate:
    choices = [name for name in names if n > 1 or name in ("H", "S")]
    name = choices[int(rng.integers(len(choices)))]
    if name in ("CNOT", "CZ"):
        targets = tuple(int(t) for t in rng.choice(n, size=2, replace=False))
    else:
        targets = (int(rng.integers(n)),)
    return Gate(name, targets, n)


def random_clifford(
    rng: np.random.Generator, n: int, depth: int | None = None
) -> CliffordTableau:
    """A product of random H, S, CNOT and Pauli gates"""
    depth = 3 * n * n + 2 if depth is None else depth
    tableau = CliffordTableau.identity(n)
    for _ in range(depth):
        tableau = compose(random_gate(rng, n, CLIFFORD_GATES).tableau, tableau)
    for q in range(n):
        flip = ("I", "X", "Y", "Z")[int(rng.integers(4))]
        tableau = compose(Gate(flip, (q,), n).tableau, tableau)
    return tableau


def random_code(rng: np.random.Generator, n: int) -> StabilizerCode:
    """A random Clifford image of the code stabilized by ``Z_1 ... Z_{n-1}``"""
    c = random_clifford(rng, n)
    generators = tuple(
        conjugate(c, PauliOperator.single(n, k, "Z")) for k in range(1, n)
    )
    return StabilizerCode(
        n,
        generators,
        conjugate(c, PauliOperator.single(n, 0, "X")),
        conjugate(c, PauliOperator.single(n, 0, "Z")),
        name=f"random{n}",
    )


def random_program(
    rng: np.random.Generator,
    max_qubits: int = 4,
    max_depth: int = MAX_GATE_DEPTH,
    max_measurements: int = MAX_MEASUREMENTS,
    choices: bool = True,
) -> ReductionProgram:
    """A program on at most ``max_qubits`` qubits using every kind of instruction

    Gates come from H, S, CNOT and CZ. At most one random choice is placed and a
    feedforward case may follow a recorded measurement.
    """
    n_total = int(rng.integers(1, max_qubits + 1))
    n_resource = int(rng.integers(1, n_total + 1))
    n_ancilla = n_total - n_resource
    depth = int(rng.integers(0, max_depth + 1))
    measurements = int(rng.integers(0, max_measurements + 1))
    kinds = ["gate"] * depth + ["measure"] * measurements
    if choices and rng.random() < CHOICE_RATE:
        kinds.append("choice")
    rng.shuffle(kinds)
    instructions: list[Instruction] = []
    labels: list[str] = []
    for kind in kinds:
        if kind == "gate":
            instructions.append(Unitary(random_gate(rng, n_total)))
        elif kind == "measure":
            label = f"m{len(labels)}"
            keep = _KEEP_CHOICES[int(rng.integers(len(_KEEP_CHOICES)))]
            instructions.append(Measure(random_pauli(rng, n_total), keep, label))
            labels.append(label)
            if rng.random() < CASE_RATE:
                instructions.append(_random_case(rng, n_total, label))
        else:
            instructions.append(_random_choice(rng, n_total))
    output = int(rng.integers(n_resource))
    return ReductionProgram(n_resource, n_ancilla, tuple(instructions), output)


def _random_choice(rng: np.random.Generator, n: int) -> RandomChoice:
    count = int(rng.integers(2, 4))
    raw = [int(w) for w in rng.integers(1, 5, size=count)]
    weights = [Fraction(w, sum(raw)) for w in raw]
    options = []
    for w in weights:
        length = int(rng.integers(0, 3))
        options.append((w, tuple(Unitary(random_gate(rng, n)) for _ in range(length))))
    return RandomChoice(tuple(options))


def _random_case(rng: np.random.Generator, n: int, label: str) -> FeedforwardCase:
    cases = tuple(
        (outcome, (Unitary(random_gate(rng, n)),))
        for outcome in (1, -1)
        if rng.random() < CASE_BRANCH_RATE
    )
    return FeedforwardCase(label, cases)  # type: ignore[arg-type]
