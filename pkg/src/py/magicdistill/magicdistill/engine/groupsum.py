"""Logical expectation values from sums over the stabilizer group.

For a code with generators ``S`` and codespace projector ``P = 2**-(n-1) sum(S)`` the
success probability is ``tr(P rho)`` and each logical Bloch component is
``tr(L P rho) / tr(P rho)``. On a product resource every term factorizes into single
qubit expectations, so the sums only need the bit patterns and signs of group elements.
Elements are generated in reflected Gray-code order: an inner block of up to
:data:`~magicdistill.config.MAGICDISTILL_SEGMENT_SIZE` generators is expanded into
arrays once, and every element of the outer generators multiplies the whole block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from logging import getLogger

import numpy as np
import numpy.typing as npt

from magicdistill.config import MAGICDISTILL_SEGMENT_SIZE
from magicdistill.core.pauli import PauliOperator, PauliSizeError
from magicdistill.core.stabilizer import StabilizerCode, iter_group
from magicdistill.engine.resource import (
    ProductResource,
    ReductionResult,
    Undefined,
    make_result,
)

logger = getLogger(__name__)

Bits = npt.NDArray[np.int64]

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def popcount(values: Bits) -> Bits:
    """Vectorized bit count of non-negative 64-bit integers"""
    values = np.ascontiguousarray(values, dtype=np.int64)
    return _POPCOUNT[values.view(np.uint8)].reshape(*values.shape, 8).sum(axis=-1)


@dataclass(frozen=True)
class ElementBlock:
    """Group elements ``i**phase X**x Z**z`` stored as parallel arrays"""

    x: Bits
    z: Bits
    phase: Bits

    @classmethod
    def identity(cls) -> ElementBlock:
        zero = np.zeros(1, dtype=np.int64)
        return cls(zero, zero.copy(), zero.copy())

    def __len__(self) -> int:
        return len(self.x)

    def times(self, p: PauliOperator) -> ElementBlock:
        """Each element multiplied on the right by ``p``"""
        return ElementBlock(
            self.x ^ p.x,
            self.z ^ p.z,
            (self.phase + p.phase + 2 * popcount(self.z & p.x)) % 4,
        )

    def left_times(self, p: PauliOperator) -> ElementBlock:
        """``p`` multiplied on the left of each element"""
        return ElementBlock(
            self.x ^ p.x,
            self.z ^ p.z,
            (self.phase + p.phase + 2 * popcount(p.z & self.x)) % 4,
        )

    def reversed(self) -> ElementBlock:
        return ElementBlock(self.x[::-1], self.z[::-1], self.phase[::-1])

    def concatenate(self, other: ElementBlock) -> ElementBlock:
        return ElementBlock(
            np.concatenate([self.x, other.x]),
            np.concatenate([self.z, other.z]),
            np.concatenate([self.phase, other.phase]),
        )

    def signs(self) -> Bits:
        """``+1`` or ``-1`` for Hermitian elements"""
        return 1 - (self.phase - popcount(self.x & self.z)) % 4


@lru_cache(maxsize=64)
def gray_block(generators: tuple[PauliOperator, ...]) -> ElementBlock:
    """All products of ``generators`` in reflected Gray-code order"""
    block = ElementBlock.identity()
    for g in generators:
        block = block.concatenate(block.reversed().times(g))
    return block


def expectation_terms(
    block: ElementBlock, table: npt.NDArray[np.float64]
) -> npt.NDArray[np.float64]:
    """``tr(s rho)`` for every element ``s`` of a Hermitian block

    ``table[k]`` holds ``[1, rx, rz, ry]`` for qubit ``k`` so the column is indexed by
    ``x_k + 2 z_k``.
    """
    n = table.shape[0]
    shifts = np.arange(n, dtype=np.int64)
    kinds = ((block.x[:, None] >> shifts) & 1) + 2 * ((block.z[:, None] >> shifts) & 1)
    values = table[shifts, kinds].prod(axis=1)
    return block.signs() * values


def lookup_table(rho: ProductResource) -> npt.NDArray[np.float64]:
    bloch = rho.array()
    return np.column_stack([np.ones(rho.n), bloch[:, 0], bloch[:, 2], bloch[:, 1]])


def group_sums(
    code: StabilizerCode, rho: ProductResource
) -> tuple[float, float, float, float]:
    """``sum(tr(L s rho))`` over the group for ``L`` in ``I, X_L, Y_L, Z_L``"""
    if code.n != rho.n:
        msg = f"Code on {code.n} qubits applied to a {rho.n}-qubit resource"
        raise PauliSizeError(msg)
    inner_size = min(len(code.generators), MAGICDISTILL_SEGMENT_SIZE.current)
    inner = gray_block(code.generators[:inner_size])
    outer = list(code.generators[inner_size:])
    table = lookup_table(rho)
    logicals = [
        PauliOperator.identity(code.n),
        code.logical_x,
        code.logical_y,
        code.logical_z,
    ]
    partials: list[list[float]] = [[] for _ in logicals]
    for step, (_, element) in enumerate(iter_group(outer, code.n)):
        segment = (inner.reversed() if step % 2 else inner).left_times(element)
        for index, logical in enumerate(logicals):
            terms = expectation_terms(segment.left_times(logical), table)
            partials[index].append(math.fsum(terms))
    logger.debug(
        "Summed %d group elements of %s in %d segments",
        len(inner) << len(outer),
        code.name or f"a {code.n}-qubit code",
        1 << len(outer),
    )
    s_i, s_x, s_y, s_z = (math.fsum(p) for p in partials)
    return s_i, s_x, s_y, s_z


def success_probability(code: StabilizerCode, rho: ProductResource) -> float:
    """``tr(P rho)`` for the codespace projector ``P``"""
    return math.ldexp(group_sums(code, rho)[0], -(code.n - 1))


def output_state(
    code: StabilizerCode, rho: ProductResource
) -> ReductionResult | Undefined:
    """The decoded output qubit conditioned on the all ``+1`` syndrome"""
    s_i, s_x, s_y, s_z = group_sums(code, rho)
    success = math.ldexp(s_i, -(code.n - 1))
    if s_i == 0:
        return make_result(0.0, (0.0, 0.0, 0.0))
    return make_result(success, (s_x / s_i, s_y / s_i, s_z / s_i))
