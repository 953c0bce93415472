"""Sort canonical branches into the shapes a maximal Kraus operator can take.

With ``|+-_L> = C^dagger |+-, j>`` a branch acts as
``|+, j><+_L| P + |-, j><-_L| P`` up to its scalar. Projecting both logical states with
``P`` leaves one of three cases:

* only one survives, and the branch prepares ``|+>`` or ``|->`` (``A1``);
* both survive and coincide up to a phase ``i**N``, so the branch prepares the
  equatorial state ``(|+> + i**-N |->) / sqrt(2)`` (``A2``);
* both survive and are orthogonal, so they span the codespace of a stabilizer code
  and the branch is that code's reduction followed by a fixed Clifford (``B``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from logging import getLogger
from typing import ClassVar, Literal, Union

import numpy as np
from typing_extensions import TypeAlias

from magicdistill.core.binary import independent, packed, solve
from magicdistill.core.pauli import (
    PauliOperator,
    commutes,
    pauli_mul,
    symplectic_product,
)
from magicdistill.core.stabilizer import (
    Annihilated,
    EqualUpToPhase,
    StabilizerCode,
    StabilizerGroupState,
    StateRelationError,
    group_product,
    group_sign,
    project_stabilizer_state,
    state_relation,
)
from magicdistill.core.tableau import (
    CliffordTableau,
    compose,
    conjugate,
    inverse,
    named_gate,
)
from magicdistill.engine.groupsum import output_state
from magicdistill.engine.resource import (
    BlochVector,
    ProductResource,
    ReductionResult,
    Undefined,
)
from magicdistill.program.expand import basis_projectors
from magicdistill.program.types import BranchKraus, CanonicalKraus, ZeroBranch

logger = getLogger(__name__)

EQUATORIAL_BLOCH: dict[int, BlochVector] = {
    0: (0.0, 0.0, 1.0),
    1: (0.0, 1.0, 0.0),
    2: (0.0, 0.0, -1.0),
    3: (0.0, -1.0, 0.0),
}


class FactorizationError(RuntimeError):
    """The logical states of a branch do not split off the ancilla qubits"""


@dataclass(frozen=True)
class FormA1:
    """The branch prepares ``|+>`` (``sign == 1``) or ``|->`` on the output qubit"""

    form: ClassVar[str] = "A1"

    sign: Literal[1, -1]
    amp_log2: Fraction
    state: StabilizerGroupState

    @property
    def out_bloch(self) -> BlochVector:
        return (float(self.sign), 0.0, 0.0)


@dataclass(frozen=True)
class FormA2:
    """The branch prepares ``(|+> + i**-N |->) / sqrt(2)`` on the output qubit"""

    form: ClassVar[str] = "A2"

    N: int
    amp_log2: Fraction
    state: StabilizerGroupState

    @property
    def out_bloch(self) -> BlochVector:
        return EQUATORIAL_BLOCH[self.N]

    def output_ket(self) -> np.ndarray:
        plus = np.array([1, 1]) / np.sqrt(2)
        minus = np.array([1, -1]) / np.sqrt(2)
        return (plus + (1j ** (-self.N)) * minus) / np.sqrt(2)


@dataclass(frozen=True)
class FormB:
    """The branch is a stabilizer-code reduction

    ``witness`` is a Pauli that commutes with the branch projector and maps the
    projected ``|+_L>`` onto the projected ``|-_L>``.
    """

    form: ClassVar[str] = "B"

    plus: StabilizerGroupState
    minus: StabilizerGroupState
    witness: PauliOperator
    amp_log2: Fraction
    n_resource: int
    n_ancilla: int
    j: tuple[int, ...]

    @cached_property
    def reduction(self) -> ExtractedReduction:
        return extract_reduction(self)

    @property
    def code(self) -> StabilizerCode:
        return self.reduction.code

    @property
    def decode(self) -> CliffordTableau:
        return self.reduction.decode


FormClassification: TypeAlias = Union[FormA1, FormA2, FormB]


@dataclass(frozen=True)
class ExtractedReduction:
    """A code on the resource qubits with a decoder reproducing the branch

    ``decode`` is ``correction`` on qubit 0 after ``code.decoder(j_resource)``.
    """

    code: StabilizerCode
    decode: CliffordTableau
    correction: CliffordTableau
    phase_correction: int
    j_resource: tuple[int, ...]

    def output_state(self, rho: ProductResource) -> ReductionResult | Undefined:
        result = output_state(self.code, rho)
        if isinstance(result, Undefined):
            return result
        return result.with_clifford(self.correction)


def logical_state(
    canon: CanonicalKraus, j: tuple[int, ...], sign: Literal[1, -1]
) -> StabilizerGroupState:
    """``C^dagger |+-, j>``"""
    n = canon.n
    clifford_inv = inverse(canon.clifford)
    x = PauliOperator.single(n, 0, "X")
    generators = (x if sign == 1 else -x, *basis_projectors(j, n))
    images = tuple(conjugate(clifford_inv, g) for g in generators)
    return StabilizerGroupState(n, images)


def classify(
    canon: CanonicalKraus, branch: BranchKraus
) -> FormClassification | ZeroBranch:
    j = branch.branch_id.j
    plus_state = logical_state(canon, j, 1)
    plus = project_stabilizer_state(plus_state, canon.stab_projector)
    minus = project_stabilizer_state(logical_state(canon, j, -1), canon.stab_projector)
    if isinstance(plus, Annihilated) and isinstance(minus, Annihilated):
        logger.debug("Branch %s annihilates both logical states", branch.branch_id)
        return ZeroBranch(plus.projector)
    if isinstance(minus, Annihilated):
        return FormA1(1, plus.amp_log2, plus.state)  # type: ignore[union-attr]
    if isinstance(plus, Annihilated):
        return FormA1(-1, minus.amp_log2, minus.state)
    if plus.amp_log2 != minus.amp_log2:
        msg = f"Projected logical states of {branch.branch_id} keep different amplitudes"
        raise StateRelationError(msg)
    witness = _witness(canon, plus_state)
    relation = state_relation(plus.state, minus.state, witness)
    if isinstance(relation, EqualUpToPhase):
        return FormA2(relation.N, plus.amp_log2, plus.state)
    return FormB(
        plus=plus.state,
        minus=minus.state,
        witness=witness,
        amp_log2=plus.amp_log2,
        n_resource=branch.n_resource,
        n_ancilla=branch.n_ancilla,
        j=j,
    )


def _witness(canon: CanonicalKraus, plus_state: StabilizerGroupState) -> PauliOperator:
    # ``Z' t`` where ``Z' |+_L> = |-_L>`` and ``t`` stabilizes ``|+_L>``, chosen so
    # the product commutes with every projector generator
    flip = conjugate(inverse(canon.clifford), PauliOperator.single(canon.n, 0, "Z"))
    if not canon.stab_projector:
        return flip
    rows = np.array(
        [
            [symplectic_product(h, q) for h in plus_state.generators]
            for q in canon.stab_projector
        ],
        dtype=np.uint8,
    )
    target = np.array(
        [symplectic_product(flip, q) for q in canon.stab_projector], dtype=np.uint8
    )
    solution = solve(rows, target)
    if solution is None:
        msg = "No Pauli maps the projected logical states onto each other"
        raise StateRelationError(msg)
    mask = sum(1 << i for i, bit in enumerate(solution) if bit)
    return pauli_mul(flip, group_product(plus_state.generators, mask))


def extract_reduction(b: FormB) -> ExtractedReduction:
    """The ancilla-free code and decoder equivalent to a form ``B`` branch"""
    n, n_resource = b.plus.n, b.n_resource
    witness = b.witness
    phase_correction = 0 if witness.is_hermitian else 1
    logical_z = PauliOperator(n, witness.x, witness.z, witness.phase - phase_correction)
    generators = list(b.plus.generators)
    anti = [k for k, g in enumerate(generators) if not commutes(g, logical_z)]
    if not anti:
        msg = f"Logical Z {logical_z.label()} commutes with the whole state"
        raise FactorizationError(msg)
    first = anti[0]
    logical_x = generators[first]
    common = [
        pauli_mul(g, logical_x) if k in anti else g
        for k, g in enumerate(generators)
        if k != first
    ]
    ancillas = [PauliOperator.single(n, a, "Z") for a in range(n_resource, n)]
    for z in ancillas:
        if group_sign(common, z) != 1:
            msg = f"Ancilla operator {z.label()} does not stabilize the logical states"
            raise FactorizationError(msg)

    def restrict(p: PauliOperator) -> PauliOperator:
        for a, z in enumerate(ancillas, n_resource):
            if (p.x >> a) & 1:
                msg = f"{p.label()} flips ancilla qubit {a}"
                raise FactorizationError(msg)
            if (p.z >> a) & 1:
                p = pauli_mul(p, z)
        mask = (1 << n_resource) - 1
        return PauliOperator(n_resource, p.x & mask, p.z & mask, p.phase)

    code_generators: list[PauliOperator] = []
    for g in map(restrict, common):
        if not g.is_identity and independent(
            [packed(c) for c in (*code_generators, g)]
        ):
            code_generators.append(g)
    if len(code_generators) != n_resource - 1:
        msg = f"Found {len(code_generators)} resource generators, expected {n_resource - 1}"
        raise FactorizationError(msg)
    code = StabilizerCode(
        n_resource, tuple(code_generators), restrict(logical_x), restrict(logical_z)
    )
    j_resource = b.j[: n_resource - 1]
    correction = correction_tableau(phase_correction)
    decode = compose(correction.embed((0,), n_resource), code.decoder(j_resource))
    return ExtractedReduction(code, decode, correction, phase_correction, j_resource)


def correction_tableau(n_phase: int) -> CliffordTableau:
    """``|+><+| + i**-N |-><-|`` as ``H S**-N H`` on one qubit"""
    tableau = named_gate("H", (0,), 1)
    for _ in range(n_phase % 4):
        tableau = compose(named_gate("S_DAG", (0,), 1), tableau)
    return compose(named_gate("H", (0,), 1), tableau)
