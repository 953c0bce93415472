"""Rewrite a branch as commuting projectors followed by one Clifford.

The running operator is kept as ``C Q`` where ``Q`` projects onto the joint ``+1``
eigenspace of a list of commuting generators. A Clifford step ``T`` turns it into
``(T C) Q``. A projector step ``(1 + s) / 2`` is first pulled through ``C`` as
``s' = C^dagger s C``; if ``s'`` commutes with ``Q`` it either joins the generators or
is decided by them, otherwise it anticommutes with exactly one generator ``g`` (after
multiplying the others by ``g``) and

    (1 + s') / 2 (1 + g) / 2  ==  (s' + g) / sqrt(2)  (1 + g) / 2  / sqrt(2)

so the pair becomes a Clifford factor and a scale of ``2**-1/2``.
"""

from __future__ import annotations

from fractions import Fraction
from logging import getLogger

import numpy as np

from magicdistill.config import MAGICDISTILL_CHECK_INVARIANTS
from magicdistill.core.pauli import PauliOperator, commutes, pauli_mul
from magicdistill.core.stabilizer import group_sign
from magicdistill.core.tableau import (
    CliffordFactor,
    CliffordTableau,
    PauliSumUnitary,
    compose,
    conjugate,
    factor_inverse,
    factor_tableau,
)
from magicdistill.program.types import (
    BranchKraus,
    CanonicalKraus,
    ZeroBranch,
    branch_matrix,
    canonical_matrix,
)

logger = getLogger(__name__)

INVARIANT_CHECK_MAX_QUBITS = 6


class NormalizationError(AssertionError):
    """A canonical form does not reproduce its branch"""


def normalize(branch: BranchKraus) -> CanonicalKraus | ZeroBranch:
    n = branch.n
    clifford = CliffordTableau.identity(n)
    clifford_inv = clifford
    factors: list[CliffordFactor] = []
    generators: list[PauliOperator] = []
    scale_log2 = branch.scale_log2
    for step in branch.steps:
        if not isinstance(step, PauliOperator):
            tableau = factor_tableau(step)
            clifford = compose(tableau, clifford)
            clifford_inv = compose(clifford_inv, factor_inverse(step))
            factors.append(step)
            continue
        pulled = conjugate(clifford_inv, step)
        anti = [k for k, g in enumerate(generators) if not commutes(g, pulled)]
        if not anti:
            sign = group_sign(generators, pulled)
            if sign == -1:
                logger.debug("Branch %s vanishes at %s", branch.branch_id, step.label())
                return ZeroBranch(step)
            if sign is None:
                generators.append(pulled)
            continue
        first = anti[0]
        for k in anti[1:]:
            generators[k] = pauli_mul(generators[k], generators[first])
        merge = PauliSumUnitary(pulled, generators[first])
        clifford = compose(clifford, merge.tableau)
        clifford_inv = compose(merge.tableau, clifford_inv)
        factors.insert(0, merge)
        scale_log2 -= Fraction(1, 2)
    canon = CanonicalKraus(
        n=n,
        scale_log2=scale_log2,
        clifford=clifford,
        stab_projector=tuple(generators),
        factors=tuple(factors),
        weight=branch.weight,
    )
    if MAGICDISTILL_CHECK_INVARIANTS.current and n <= INVARIANT_CHECK_MAX_QUBITS:
        check_canonical(branch, canon)
    return canon


def check_canonical(
    branch: BranchKraus, canon: CanonicalKraus, atol: float = 1e-10
) -> None:
    """Compare the dense matrices of a branch and its canonical form"""
    if not np.allclose(branch_matrix(branch), canonical_matrix(canon), atol=atol):
        msg = f"Canonical form of branch {branch.branch_id} does not match its steps"
        raise NormalizationError(msg)
