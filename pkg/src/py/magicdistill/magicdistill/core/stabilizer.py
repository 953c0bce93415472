"""Stabilizer groups, states and one-logical-qubit codes"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Union

import numpy as np
from typing_extensions import TypeAlias

from magicdistill.core.binary import (
    decompose,
    independent,
    packed,
    solve,
    swap_halves,
    symplectic_matrix,
)
from magicdistill.core.binary import (
    from_symplectic as _from_symplectic,
)
from magicdistill.core.pauli import (
    NonHermitianError,
    PauliOperator,
    PauliSizeError,
    commutes,
    pauli_mul,
)
from magicdistill.core.tableau import CliffordTableau, inverse


_SIGNS: dict[int, Literal[1, -1]] = {0: 1, 2: -1}


class StateRelationError(RuntimeError):
    """Two stabilizer groups differ in more than the signs of their elements"""


class CodeValidationError(ValueError):
    """A stabilizer code failed validation

    The offending operators are available as :attr:`pair`.
    """

    def __init__(self, msg: str, pair: tuple[PauliOperator, PauliOperator]) -> None:
        super().__init__(msg)
        self.pair = pair


def group_decompose(
    generators: Sequence[PauliOperator], p: PauliOperator
) -> int | None:
    """A mask of generators whose product has the same bits as ``p``"""
    return decompose([packed(g) for g in generators], packed(p))


def group_product(generators: Sequence[PauliOperator], mask: int) -> PauliOperator:
    """Product of the generators selected by ``mask`` in index order"""
    if not generators:
        msg = "Cannot take a product of an empty generator list"
        raise ValueError(msg)
    result = PauliOperator.identity(generators[0].n)
    for index, g in enumerate(generators):
        if (mask >> index) & 1:
            result = pauli_mul(result, g)
    return result


def group_sign(
    generators: Sequence[PauliOperator], p: PauliOperator
) -> Literal[1, -1] | None:
    """``1`` if ``p`` is in the group, ``-1`` if ``-p`` is, else ``None``"""
    if p.is_identity:
        return _SIGNS.get(p.phase)
    if not generators:
        return None
    mask = group_decompose(generators, p)
    if mask is None:
        return None
    return _SIGNS.get((p.phase - group_product(generators, mask).phase) % 4)


def iter_group(
    generators: Sequence[PauliOperator], n: int | None = None
) -> Iterator[tuple[int | None, PauliOperator]]:
    """Every group element in reflected Gray-code order

    Each element is yielded with the index of the generator multiplied into its
    predecessor (``None`` for the leading identity).
    """
    if n is None:
        if not generators:
            msg = "Qubit count is required for an empty generator list"
            raise ValueError(msg)
        n = generators[0].n
    element = PauliOperator.identity(n)
    yield None, element
    for step in range(1, 1 << len(generators)):
        flipped = (step & -step).bit_length() - 1
        element = pauli_mul(element, generators[flipped])
        yield flipped, element


def _check_commuting_hermitian(generators: Sequence[PauliOperator], n: int) -> None:
    for g in generators:
        if g.n != n:
            msg = f"Generator {g.label()} does not act on {n} qubits"
            raise PauliSizeError(msg)
        if not g.is_hermitian:
            msg = f"Generator {g.label()} is not Hermitian"
            raise NonHermitianError(msg)
    for i, a in enumerate(generators):
        for b in generators[i + 1 :]:
            if not commutes(a, b):
                msg = f"Generators {a.label()} and {b.label()} anticommute"
                raise ValueError(msg)


@dataclass(frozen=True)
class StabilizerGroupState:
    """A pure stabilizer state given by ``n`` independent commuting generators"""

    n: int
    generators: tuple[PauliOperator, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(self.generators) != self.n:
            msg = f"A {self.n}-qubit state needs {self.n} generators, got {len(self.generators)}"
            raise ValueError(msg)
        _check_commuting_hermitian(self.generators, self.n)
        if not independent([packed(g) for g in self.generators]):
            msg = f"Generators {[g.label() for g in self.generators]} are dependent"
            raise ValueError(msg)

    @classmethod
    def from_labels(cls, *labels: str) -> StabilizerGroupState:
        generators = tuple(map(PauliOperator.from_label, labels))
        return cls(generators[0].n if generators else 0, generators)

    @classmethod
    def basis(cls, bits: Sequence[int]) -> StabilizerGroupState:
        """The computational basis state ``|bits>``"""
        n = len(bits)
        zs = [PauliOperator.single(n, k, "Z") for k in range(n)]
        generators = tuple(-z if bit else z for z, bit in zip(zs, bits))
        return cls(n, generators)

    def sign_of(self, p: PauliOperator) -> Literal[1, -1] | None:
        return group_sign(self.generators, p)

    def conjugated(self, c: CliffordTableau) -> StabilizerGroupState:
        """The state ``C |psi>``"""
        return StabilizerGroupState(self.n, tuple(c(g) for g in self.generators))

    def labels(self) -> list[str]:
        return [g.label() for g in self.generators]


@dataclass(frozen=True)
class ProjectedState:
    """A projected state with the log2 of the amplitude the projection kept"""

    state: StabilizerGroupState
    amp_log2: Fraction


@dataclass(frozen=True)
class Annihilated:
    """The projector ``(1 + projector) / 2`` sends the state to zero"""

    projector: PauliOperator


def project_stabilizer_state(
    state: StabilizerGroupState, projector_gens: Sequence[PauliOperator]
) -> ProjectedState | Annihilated:
    """Apply the projectors ``(1 + s) / 2`` in order and renormalize"""
    _check_commuting_hermitian(projector_gens, state.n)
    generators = list(state.generators)
    amp_log2 = Fraction(0)
    for s in projector_gens:
        anti = [k for k, g in enumerate(generators) if not commutes(g, s)]
        if not anti:
            if group_sign(generators, s) == -1:
                return Annihilated(s)
            continue
        first = anti[0]
        for k in anti[1:]:
            generators[k] = pauli_mul(generators[k], generators[first])
        generators[first] = s
        amp_log2 -= Fraction(1, 2)
    return ProjectedState(StabilizerGroupState(state.n, tuple(generators)), amp_log2)


@dataclass(frozen=True)
class Orthogonal:
    """The states are orthogonal; ``generator`` of the first appears negated"""

    generator: PauliOperator


@dataclass(frozen=True)
class EqualUpToPhase:
    """``|s2> == i**N |s1>``"""

    N: int


StateRelation: TypeAlias = Union[Orthogonal, EqualUpToPhase]


def state_relation(
    s1: StabilizerGroupState,
    s2: StabilizerGroupState,
    witness: PauliOperator | None = None,
) -> StateRelation:
    """Compare two stabilizer states whose groups agree up to signs

    When ``witness`` is a Pauli ``W`` with ``|s2> == W |s1>`` the phase of equal states
    is exact, otherwise equal states are reported with ``N = 0``.
    """
    if s1.n != s2.n:
        msg = f"States on {s1.n} and {s2.n} qubits"
        raise PauliSizeError(msg)
    for g in s1.generators:
        sign = s2.sign_of(g)
        if sign is None:
            msg = f"Generator {g.label()} is not in the group {s2.labels()} up to sign"
            raise StateRelationError(msg)
        if sign == -1:
            return Orthogonal(g)
    if witness is None:
        return EqualUpToPhase(0)
    mask = group_decompose(s1.generators, witness)
    if mask is None:
        msg = f"Witness {witness.label()} does not stabilize {s1.labels()} up to phase"
        raise StateRelationError(msg)
    element = group_product(s1.generators, mask)
    return EqualUpToPhase((witness.phase - element.phase) % 4)


@dataclass(frozen=True)
class StabilizerCode:
    """An ``n``-qubit code with one logical qubit

    The codespace is the joint ``+1`` eigenspace of the ``n - 1`` generators and the
    logical operators act on it as Pauli ``X`` and ``Z``.
    """

    n: int
    generators: tuple[PauliOperator, ...]
    logical_x: PauliOperator
    logical_z: PauliOperator
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        self._validate()

    @classmethod
    def from_labels(
        cls,
        generators: Sequence[str],
        logical_x: str,
        logical_z: str,
        name: str = "",
    ) -> StabilizerCode:
        x = PauliOperator.from_label(logical_x)
        return cls(
            x.n,
            tuple(map(PauliOperator.from_label, generators)),
            x,
            PauliOperator.from_label(logical_z),
            name,
        )

    @property
    def logical_y(self) -> PauliOperator:
        """``i X_L Z_L``"""
        product = pauli_mul(self.logical_x, self.logical_z)
        return PauliOperator(self.n, product.x, product.z, product.phase + 1)

    def group(self) -> Iterator[PauliOperator]:
        for _, element in iter_group(self.generators, self.n):
            yield element

    def sign_of(self, p: PauliOperator) -> Literal[1, -1] | None:
        return group_sign(self.generators, p)

    def logical_state(self, sign: Literal[1, -1] = 1) -> StabilizerGroupState:
        """The codeword stabilized by ``sign * X_L``"""
        x = self.logical_x if sign == 1 else -self.logical_x
        return StabilizerGroupState(self.n, (x, *self.generators))

    def decoder(self, syndrome: Sequence[int] | None = None) -> CliffordTableau:
        """A Clifford taking ``X_L, Z_L`` to ``X_0, Z_0`` and the codespace to ``|j>``

        Generator ``k`` is sent to ``(-1)**j_k Z_{k+1}`` where ``j`` is ``syndrome``
        (all zeros by default), so codewords decode to the first qubit with the rest of
        the register left in ``|j>``.
        """
        bits = tuple(syndrome) if syndrome is not None else (0,) * (self.n - 1)
        if len(bits) != self.n - 1:
            msg = f"Syndrome {bits} must have {self.n - 1} entries"
            raise ValueError(msg)
        return _decoder(self, bits)

    def labels(self) -> dict[str, list[str] | str]:
        return {
            "generators": [g.label() for g in self.generators],
            "logical_x": self.logical_x.label(),
            "logical_z": self.logical_z.label(),
        }

    def _validate(self) -> None:
        n = self.n
        if n < 1:
            msg = f"A code needs at least one qubit, got {n}"
            raise ValueError(msg)
        if len(self.generators) != n - 1:
            msg = f"A {n}-qubit code needs {n - 1} generators, got {len(self.generators)}"
            raise ValueError(msg)
        operators = (*self.generators, self.logical_x, self.logical_z)
        for p in operators:
            if p.n != n:
                msg = f"Operator {p.label()} does not act on {n} qubits"
                raise PauliSizeError(msg)
            if not p.is_hermitian:
                msg = f"Operator {p.label()} is not Hermitian"
                raise NonHermitianError(msg)
        for i, a in enumerate(self.generators):
            for b in (*self.generators[i + 1 :], self.logical_x, self.logical_z):
                if not commutes(a, b):
                    msg = f"{a.label()} and {b.label()} anticommute"
                    raise CodeValidationError(msg, (a, b))
        if commutes(self.logical_x, self.logical_z):
            msg = f"Logical operators {self.logical_x.label()} and {self.logical_z.label()} commute"
            raise CodeValidationError(msg, (self.logical_x, self.logical_z))
        for index, g in enumerate(self.generators):
            others = self.generators[:index]
            mask = group_decompose(others, g) if others else None
            if g.is_identity or mask is not None:
                product = group_product(others, mask) if mask is not None else g
                msg = f"Generator {g.label()} is dependent on {product.label()}"
                raise CodeValidationError(msg, (g, product))


def _decoder(code: StabilizerCode, syndrome: tuple[int, ...]) -> CliffordTableau:
    n = code.n
    image_z = [code.logical_z] + [
        -g if bit else g for g, bit in zip(code.generators, syndrome)
    ]
    constraints = [code.logical_z, *code.generators, code.logical_x]
    image_x = [code.logical_x]
    for k in range(n - 1):
        rows = swap_halves(symplectic_matrix(constraints + image_x[1:], n), n)
        target = np.zeros(len(rows), dtype=np.uint8)
        target[1 + k] = 1
        solution = solve(rows, target)
        if solution is None:  # nocov
            msg = f"No destabilizer for generator {code.generators[k].label()}"
            raise CodeValidationError(msg, (code.generators[k], code.logical_x))
        image_x.append(_from_symplectic(solution, n))
    return inverse(CliffordTableau(tuple(image_x), tuple(image_z)))
