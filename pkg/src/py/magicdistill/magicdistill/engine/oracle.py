"""Reference results from full density matrices.

Shares no code with :mod:`magicdistill.engine.groupsum` beyond the operator types, so
the two paths can check each other.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Union

import numpy as np
from typing_extensions import TypeAlias

from magicdistill.core.dense import (
    ComplexMatrix,
    bloch_vector,
    check_dense_size,
    projector_product,
    reduce_to_first,
    tableau_unitary,
)
from magicdistill.core.stabilizer import StabilizerCode
from magicdistill.core.tableau import CliffordTableau
from magicdistill.engine.resource import (
    ProductResource,
    ReductionResult,
    Undefined,
    make_result,
)

KrausInput: TypeAlias = Union[
    ComplexMatrix,
    Sequence[ComplexMatrix],
    tuple[StabilizerCode, CliffordTableau],
]


def code_kraus(
    code: StabilizerCode, decode: CliffordTableau | None = None
) -> ComplexMatrix:
    """``C_decode P`` for the codespace projector ``P``"""
    check_dense_size(code.n)
    decode = code.decoder() if decode is None else decode
    return tableau_unitary(decode) @ projector_product(code.generators, code.n)


def with_ancillas(rho: ComplexMatrix, m: int) -> ComplexMatrix:
    """``rho`` followed by ``m`` qubits in ``|0>``"""
    ancilla = np.zeros((1 << m, 1 << m), dtype=complex)
    ancilla[0, 0] = 1
    return np.kron(rho, ancilla)


def unnormalized_output(
    kraus: KrausInput, rho: ProductResource | ComplexMatrix
) -> ComplexMatrix:
    """``sum K rho K^dagger`` reduced to qubit 0, without renormalizing"""
    operators = _kraus_list(kraus)
    density = rho.density() if isinstance(rho, ProductResource) else np.asarray(rho)
    dimension = density.shape[0]
    check_dense_size(dimension.bit_length() - 1)
    output = np.zeros((2, 2), dtype=complex)
    for k in operators:
        if k.shape[1] != dimension:
            msg = f"Kraus operator of shape {k.shape} applied to a {dimension}-dim state"
            raise ValueError(msg)
        output += reduce_to_first(k @ density @ k.conj().T)
    return output


def dense_oracle(
    kraus: KrausInput, rho: ProductResource | ComplexMatrix
) -> ReductionResult | Undefined:
    """Apply the Kraus operators to the full density matrix and read off qubit 0"""
    output = unnormalized_output(kraus, rho)
    trace = float(np.trace(output).real)
    if trace <= 0:
        return make_result(0.0, (0.0, 0.0, 0.0))
    return make_result(trace, np.asarray(bloch_vector(output)) / trace)


def _kraus_list(kraus: KrausInput) -> list[ComplexMatrix]:
    if isinstance(kraus, tuple) and kraus and isinstance(kraus[0], StabilizerCode):
        code, decode = kraus
        return [code_kraus(code, decode)]
    if isinstance(kraus, np.ndarray):
        return [kraus]
    return [np.asarray(k) for k in kraus]
