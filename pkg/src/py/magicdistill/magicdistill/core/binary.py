"""Binary symplectic linear algebra over GF(2)"""

from __future__ import annotations

from collections.abc import Sequence

import galois
import numpy as np
import numpy.typing as npt

from magicdistill.core.pauli import PauliOperator

GF2 = galois.GF2


def symplectic_vector(p: PauliOperator) -> npt.NDArray[np.uint8]:
    """Bits ``[x_0 .. x_{n-1}, z_0 .. z_{n-1}]``"""
    return np.array(p.x_bits + p.z_bits, dtype=np.uint8)


def symplectic_matrix(paulis: Sequence[PauliOperator], n: int) -> npt.NDArray[np.uint8]:
    """One row per operator"""
    if not paulis:
        return np.zeros((0, 2 * n), dtype=np.uint8)
    return np.stack([symplectic_vector(p) for p in paulis])


def from_symplectic(vector: npt.ArrayLike, n: int) -> PauliOperator:
    """The Hermitian Pauli with sign ``+`` whose bits are ``vector``"""
    bits = np.asarray(vector, dtype=np.uint8)
    return PauliOperator.from_bits(bits[:n], bits[n:]).unsigned()


def swap_halves(matrix: npt.NDArray[np.uint8], n: int) -> npt.NDArray[np.uint8]:
    """Right-multiply by the symplectic form so rows pair through a dot product"""
    return np.concatenate([matrix[:, n:], matrix[:, :n]], axis=1)


def rank(paulis: Sequence[PauliOperator], n: int) -> int:
    if not paulis:
        return 0
    return int(np.linalg.matrix_rank(GF2(symplectic_matrix(paulis, n))))


def solve(matrix: npt.ArrayLike, target: npt.ArrayLike) -> npt.NDArray[np.uint8] | None:
    """One solution of ``matrix @ x == target`` with free variables at zero"""
    matrix = np.asarray(matrix, dtype=np.uint8)
    rows, cols = matrix.shape
    rhs = np.asarray(target, dtype=np.uint8).reshape(rows, 1)
    if rows == 0:
        return np.zeros(cols, dtype=np.uint8)
    augmented = GF2(np.concatenate([matrix, rhs], axis=1))
    reduced = augmented.row_reduce().view(np.ndarray)
    solution = np.zeros(cols, dtype=np.uint8)
    for row in reduced:
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            continue
        pivot = int(nonzero[0])
        if pivot == cols:
            return None
        solution[pivot] = row[cols]
    return solution


def decompose(rows: Sequence[int], target: int) -> int | None:
    """A mask selecting ``rows`` whose XOR equals ``target``, or ``None``

    Vectors are packed into ints; this is the hot path of group membership tests so it
    works on bits directly instead of building field arrays.
    """
    basis: list[tuple[int, int, int]] = []
    for index, row in enumerate(rows):
        _insert(basis, row, 1 << index)
    residual, mask = _reduce(basis, target, 0)
    return None if residual else mask


def independent(rows: Sequence[int]) -> bool:
    """Whether the packed vectors are linearly independent"""
    basis: list[tuple[int, int, int]] = []
    return all(_insert(basis, row, 0) for row in rows)


def packed(p: PauliOperator) -> int:
    """The symplectic vector of ``p`` packed into one int"""
    return p.x | (p.z << p.n)


def _insert(basis: list[tuple[int, int, int]], vector: int, mask: int) -> bool:
    # keeps pivots in descending order; False when the vector is already spanned
    vector, mask = _reduce(basis, vector, mask)
    if not vector:
        return False
    pivot = vector.bit_length() - 1
    position = 0
    while position < len(basis) and basis[position][0] > pivot:
        position += 1
    basis.insert(position, (pivot, vector, mask))
    return True


def _reduce(
    basis: list[tuple[int, int, int]], vector: int, mask: int
) -> tuple[int, int]:
    for pivot, row, row_mask in basis:
        if (vector >> pivot) & 1:
            vector ^= row
            mask ^= row_mask
    return vector, mask
