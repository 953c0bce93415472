from __future__ import annotations

from dataclasses import dataclass
from logging import getLogger
from typing import Literal

import numpy as np

from magicdistill.config import MAGICDISTILL_DENSE_MAX_QUBITS
from magicdistill.core.dense import ComplexMatrix
from magicdistill.program.types import BranchExpansion, branch_matrix

logger = getLogger(__name__)

Verdict = Literal["trace-preserving", "trace-decreasing", "invalid", "skipped"]

COMPLETENESS_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CompletenessVerdict:
    """How ``sum K^dagger K`` over all branches compares with the identity

    The sum is taken on the subspace where the ancillas start in ``|0>``. ``skipped``
    means the expansion was capped or the register is too large for dense matrices.
    """

    verdict: Verdict
    min_eigenvalue: float | None = None
    max_eigenvalue: float | None = None
    reason: str = ""


def completeness_sum(expansion: BranchExpansion) -> ComplexMatrix:
    """``sum K^dagger K`` restricted to resource states with the ancillas in ``|0>``"""
    first = expansion.branches[0]
    n, n_resource = first.n, first.n_resource
    # the ancillas are the trailing qubits so their |0> rows are every 2**m-th index
    rows = np.arange(1 << n_resource) << (n - n_resource)
    total = np.zeros((1 << n_resource, 1 << n_resource), dtype=complex)
    for branch in expansion.branches:
        kraus = branch_matrix(branch)[:, rows]
        total += kraus.conj().T @ kraus
    return total


def completeness(
    expansion: BranchExpansion, atol: float = COMPLETENESS_TOLERANCE
) -> CompletenessVerdict:
    if not expansion.exhaustive:
        return CompletenessVerdict("skipped", reason="branch expansion was capped")
    if not expansion.branches:
        return CompletenessVerdict("skipped", reason="no branches")
    n = expansion.branches[0].n
    if n > MAGICDISTILL_DENSE_MAX_QUBITS.current:
        return CompletenessVerdict("skipped", reason=f"{n} qubits is too many")
    eigenvalues = np.linalg.eigvalsh(completeness_sum(expansion))
    low, high = float(eigenvalues.min()), float(eigenvalues.max())
    if high > 1 + atol or low < -atol:
        logger.warning("Kraus operators sum above the identity (eigenvalue %r)", high)
        return CompletenessVerdict("invalid", low, high)
    if low < 1 - atol:
        logger.warning(
            "Program is trace decreasing (min eigenvalue %r), some inputs are lost "
            "to postselection or scale factors",
            low,
        )
        return CompletenessVerdict("trace-decreasing", low, high)
    return CompletenessVerdict("trace-preserving", low, high)
