"""Dense matrices for small registers

Qubit 0 is the most significant tensor factor, so basis index ``x`` of an ``n``-qubit
register reads qubit ``k`` from bit ``n - 1 - k``.
"""

from __future__ import annotations

from collections.abc import Sequence
from functools import reduce
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
from typing_extensions import TypeAlias

from magicdistill.config import MAGICDISTILL_DENSE_MAX_QUBITS
from magicdistill.core.pauli import PauliOperator
from magicdistill.core.tableau import CliffordTableau, Gate, PauliSumUnitary

if TYPE_CHECKING:
    from magicdistill.core.tableau import CliffordFactor

ComplexMatrix: TypeAlias = npt.NDArray[np.complex128]

PAULI_MATRICES: dict[str, ComplexMatrix] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_X, _Z = PAULI_MATRICES["X"], PAULI_MATRICES["Z"]


class DenseSizeError(ValueError):
    """A dense matrix was requested for a register above the configured bound"""


def check_dense_size(n: int) -> None:
    limit = MAGICDISTILL_DENSE_MAX_QUBITS.current
    if n > limit:
        msg = f"Dense paths support at most {limit} qubits, got {n}"
        raise DenseSizeError(msg)


def kron_all(factors: Sequence[ComplexMatrix]) -> ComplexMatrix:
    if not factors:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, factors)


def pauli_matrix(p: PauliOperator) -> ComplexMatrix:
    """``i**phase * prod X**x Z**z`` as a matrix"""
    check_dense_size(p.n)
    factors = []
    for k in range(p.n):
        factor = np.eye(2, dtype=complex)
        if (p.x >> k) & 1:
            factor = factor @ _X
        if (p.z >> k) & 1:
            factor = factor @ _Z
        factors.append(factor)
    return (1j**p.phase) * kron_all(factors)


def projector_matrix(p: PauliOperator) -> ComplexMatrix:
    """``(1 + p) / 2``"""
    return (np.eye(1 << p.n, dtype=complex) + pauli_matrix(p)) / 2


def projector_product(projectors: Sequence[PauliOperator], n: int) -> ComplexMatrix:
    result = np.eye(1 << n, dtype=complex)
    for p in projectors:
        result = result @ projector_matrix(p)
    return result


def tableau_unitary(c: CliffordTableau) -> ComplexMatrix:
    """A unitary realizing the tableau

    The global phase is fixed by making the largest entry of the first column real and
    positive, so equal tableaus always give equal matrices.
    """
    n = c.n
    check_dense_size(n)
    stabilized = projector_product(c.image_z, n)
    column = int(np.argmax(np.linalg.norm(stabilized, axis=0)))
    ground = stabilized[:, column]
    ground = ground / np.linalg.norm(ground)
    magnitudes = np.abs(ground)
    anchor = ground[int(np.flatnonzero(magnitudes > magnitudes.max() - 1e-9)[0])]
    ground = ground * (abs(anchor) / anchor)
    x_images = [pauli_matrix(p) for p in c.image_x]
    unitary = np.empty((1 << n, 1 << n), dtype=complex)
    for index in range(1 << n):
        vector = ground
        for k in range(n):
            if (index >> (n - 1 - k)) & 1:
                vector = x_images[k] @ vector
        unitary[:, index] = vector
    return unitary


def factor_matrix(factor: CliffordFactor) -> ComplexMatrix:
    if isinstance(factor, PauliSumUnitary):
        return (pauli_matrix(factor.s) + pauli_matrix(factor.g)) / np.sqrt(2)
    if isinstance(factor, Gate):
        return tableau_unitary(factor.tableau)
    return tableau_unitary(factor)


def bloch_density(bloch: Sequence[float]) -> ComplexMatrix:
    """``(1 + r . sigma) / 2``"""
    rx, ry, rz = bloch
    return (
        PAULI_MATRICES["I"]
        + rx * PAULI_MATRICES["X"]
        + ry * PAULI_MATRICES["Y"]
        + rz * PAULI_MATRICES["Z"]
    ) / 2


def product_density(blochs: Sequence[Sequence[float]]) -> ComplexMatrix:
    check_dense_size(len(blochs))
    return kron_all([bloch_density(b) for b in blochs])


def ket(bits: Sequence[int]) -> npt.NDArray[np.complex128]:
    vector = np.zeros(1 << len(bits), dtype=complex)
    vector[int("".join(map(str, bits)) or "0", 2)] = 1
    return vector


def reduce_to_first(rho: ComplexMatrix) -> ComplexMatrix:
    """Trace out every qubit except qubit 0"""
    rest = rho.shape[0] // 2
    return np.einsum("ajbj->ab", rho.reshape(2, rest, 2, rest))


def bloch_vector(rho: ComplexMatrix) -> tuple[float, float, float]:
    """The Bloch vector of a (possibly unnormalized) single-qubit density matrix"""
    return (
        float(np.trace(PAULI_MATRICES["X"] @ rho).real),
        float(np.trace(PAULI_MATRICES["Y"] @ rho).real),
        float(np.trace(PAULI_MATRICES["Z"] @ rho).real),
    )
