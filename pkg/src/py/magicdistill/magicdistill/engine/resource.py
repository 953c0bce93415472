from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from magicdistill.core.dense import ComplexMatrix, product_density
from magicdistill.core.tableau import CliffordTableau, bloch_map

BlochVector = tuple[float, float, float]

PHYSICAL_TOLERANCE = 1e-12
UNIT_TOLERANCE = 1e-9
MIN_SUCCESS_PROBABILITY = 1e-15


def as_bloch(vector: Iterable[float]) -> BlochVector:
    values = tuple(float(v) for v in vector)
    if len(values) != 3:  # noqa: PLR2004
        msg = f"Bloch vectors have three components, got {values}"
        raise ValueError(msg)
    return values  # type: ignore[return-value]


def unit_vector(vector: Iterable[float]) -> npt.NDArray[np.float64]:
    """Check that ``vector`` is a pure single-qubit state"""
    array = np.asarray(as_bloch(vector))
    norm = float(np.linalg.norm(array))
    if abs(norm - 1) > UNIT_TOLERANCE:
        msg = f"Target {tuple(array)} is not a unit vector (norm {norm})"
        raise ValueError(msg)
    return array


@dataclass(frozen=True)
class ProductResource:
    """A product of single-qubit states given by their Bloch vectors"""

    bloch: tuple[BlochVector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bloch", tuple(as_bloch(b) for b in self.bloch))
        for k, b in enumerate(self.bloch):
            norm = float(np.linalg.norm(b))
            if norm > 1 + PHYSICAL_TOLERANCE:
                msg = f"Bloch vector {b} of qubit {k} has norm {norm} > 1"
                raise ValueError(msg)

    @classmethod
    def copies(cls, bloch: Iterable[float], n: int) -> ProductResource:
        return cls((as_bloch(bloch),) * n)

    @classmethod
    def maximally_mixed(cls, n: int) -> ProductResource:
        return cls.copies((0.0, 0.0, 0.0), n)

    @property
    def n(self) -> int:
        return len(self.bloch)

    def array(self) -> npt.NDArray[np.float64]:
        return np.array(self.bloch, dtype=float).reshape(self.n, 3)

    def density(self) -> ComplexMatrix:
        return product_density(self.bloch)


@dataclass(frozen=True)
class ReductionResult:
    """The output qubit of a successful reduction and how likely success was"""

    success_prob: float
    out_bloch: BlochVector

    def fidelity(self, target: Sequence[float]) -> float:
        return fidelity(self, target)

    def with_clifford(self, c: CliffordTableau) -> ReductionResult:
        """The result after a single-qubit Clifford acts on the output"""
        rotated = bloch_map(c) @ np.asarray(self.out_bloch)
        return ReductionResult(self.success_prob, as_bloch(rotated))


@dataclass(frozen=True)
class Undefined:
    """A reduction that succeeds with probability zero has no output state"""

    reason: str = "zero success probability"
    success_prob: float = 0.0


def make_result(
    success_prob: float, out_bloch: Iterable[float]
) -> ReductionResult | Undefined:
    if success_prob <= MIN_SUCCESS_PROBABILITY:
        return Undefined(success_prob=max(success_prob, 0.0))
    return ReductionResult(success_prob, as_bloch(out_bloch))


def fidelity(result: ReductionResult, target: Sequence[float]) -> float:
    """``<psi| rho' |psi>`` for the pure state ``psi`` with Bloch vector ``target``"""
    return float((1 + np.dot(result.out_bloch, unit_vector(target))) / 2)


def stabilizer_state_bound(target: Sequence[float]) -> float:
    """Best fidelity with ``target`` any single-qubit stabilizer state can reach"""
    return float((1 + np.max(np.abs(unit_vector(target)))) / 2)
