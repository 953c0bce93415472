"""Clifford unitaries represented by their action on Pauli operators"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
import numpy.typing as npt
from typing_extensions import TypeAlias

from magicdistill.core.binary import GF2, from_symplectic, symplectic_matrix
from magicdistill.core.pauli import (
    PauliOperator,
    PauliSizeError,
    commutes,
    pauli_mul,
)


class SymplecticError(ValueError):
    """Tableau images do not describe a Clifford unitary"""


class UnknownGateError(ValueError):
    """No gate with the requested name"""


@dataclass(frozen=True)
class CliffordTableau:
    """Images ``C X_k C^dagger`` and ``C Z_k C^dagger`` of every single-qubit Pauli"""

    image_x: tuple[PauliOperator, ...]
    image_z: tuple[PauliOperator, ...]

    def __post_init__(self) -> None:
        n = len(self.image_x)
        if len(self.image_z) != n:
            msg = f"Got {n} X images but {len(self.image_z)} Z images"
            raise SymplecticError(msg)
        for image in self.image_x + self.image_z:
            if image.n != n:
                msg = f"Image {image.label()} does not act on {n} qubits"
                raise PauliSizeError(msg)
            if not image.is_hermitian:
                msg = f"Image {image.label()} is not Hermitian"
                raise SymplecticError(msg)
        _check_symplectic(self.image_x, self.image_z)

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        return cls(
            tuple(PauliOperator.single(n, k, "X") for k in range(n)),
            tuple(PauliOperator.single(n, k, "Z") for k in range(n)),
        )

    @classmethod
    def from_labels(
        cls, image_x: Sequence[str], image_z: Sequence[str]
    ) -> CliffordTableau:
        return cls(
            tuple(map(PauliOperator.from_label, image_x)),
            tuple(map(PauliOperator.from_label, image_z)),
        )

    @property
    def n(self) -> int:
        return len(self.image_x)

    def __call__(self, p: PauliOperator) -> PauliOperator:
        return conjugate(self, p)

    def __matmul__(self, other: CliffordTableau) -> CliffordTableau:
        return compose(self, other)

    def embed(self, targets: Sequence[int], n: int) -> CliffordTableau:
        """Act on ``targets`` of an ``n``-qubit register and as identity elsewhere"""
        if len(targets) != self.n:
            msg = f"Tableau acts on {self.n} qubits but got targets {list(targets)}"
            raise ValueError(msg)
        if len(set(targets)) != len(targets):
            msg = f"Repeated target in {list(targets)}"
            raise ValueError(msg)
        for t in targets:
            if not 0 <= t < n:
                msg = f"Target {t} out of range for {n} qubits"
                raise ValueError(msg)
        image_x = list(PauliOperator.single(n, k, "X") for k in range(n))
        image_z = list(PauliOperator.single(n, k, "Z") for k in range(n))
        for local, t in enumerate(targets):
            image_x[t] = _spread(self.image_x[local], targets, n)
            image_z[t] = _spread(self.image_z[local], targets, n)
        return CliffordTableau(tuple(image_x), tuple(image_z))


def conjugate(c: CliffordTableau, p: PauliOperator) -> PauliOperator:
    """``C p C^dagger`` including the sign"""
    if c.n != p.n:
        msg = f"Tableau on {c.n} qubits cannot conjugate a Pauli on {p.n} qubits"
        raise PauliSizeError(msg)
    result = PauliOperator(p.n, phase=p.phase)
    for k in range(p.n):
        if (p.x >> k) & 1:
            result = pauli_mul(result, c.image_x[k])
        if (p.z >> k) & 1:
            result = pauli_mul(result, c.image_z[k])
    return result


def compose(c1: CliffordTableau, c2: CliffordTableau) -> CliffordTableau:
    """The tableau of ``c1 @ c2``, that is ``c2`` applied first"""
    if c1.n != c2.n:
        msg = f"Cannot compose tableaus on {c1.n} and {c2.n} qubits"
        raise PauliSizeError(msg)
    return CliffordTableau(
        tuple(conjugate(c1, p) for p in c2.image_x),
        tuple(conjugate(c1, p) for p in c2.image_z),
    )


@lru_cache(maxsize=4096)
def inverse(c: CliffordTableau) -> CliffordTableau:
    """Solve the symplectic system for the preimages of every ``X_k`` and ``Z_k``"""
    n = c.n
    if n == 0:
        return c
    images = symplectic_matrix(c.image_x + c.image_z, n)
    # column j of ``images.T`` is where basis vector j is sent
    preimages = np.linalg.inv(GF2(images.T)).view(np.ndarray)
    image_x, image_z = [], []
    for j in range(2 * n):
        candidate = from_symplectic(preimages[:, j], n)
        wanted = PauliOperator.single(n, j % n, "X" if j < n else "Z")
        if conjugate(c, candidate) != wanted:
            candidate = -candidate
        (image_x if j < n else image_z).append(candidate)
    return CliffordTableau(tuple(image_x), tuple(image_z))


def bloch_map(c: CliffordTableau) -> npt.NDArray[np.float64]:
    """The signed permutation a single-qubit Clifford applies to Bloch vectors"""
    if c.n != 1:
        msg = f"Bloch vectors describe one qubit, tableau acts on {c.n}"
        raise ValueError(msg)
    matrix = np.zeros((3, 3))
    axes = ("X", "Y", "Z")
    for column, axis in enumerate(axes):
        image = conjugate(c, PauliOperator.from_label(axis))
        sign = 1 - image.sign_exponent
        matrix[axes.index(image.kind(0)), column] = sign
    return matrix


_GATE_IMAGES: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "I": (("+X",), ("+Z",)),
    "H": (("+Z",), ("+X",)),
    "S": (("+Y",), ("+Z",)),
    "S_DAG": (("-Y",), ("+Z",)),
    "X": (("+X",), ("-Z",)),
    "Y": (("-X",), ("-Z",)),
    "Z": (("-X",), ("+Z",)),
    "T_ROT": (("+Y",), ("+X",)),
    "CNOT": (("+XX", "+IX"), ("+ZI", "+ZZ")),
    "CZ": (("+XZ", "+ZX"), ("+ZI", "+IZ")),
    "SWAP": (("+IX", "+XI"), ("+IZ", "+ZI")),
}
_GATE_ALIASES = {"CX": "CNOT", "SDG": "S_DAG", "T": "T_ROT", "ID": "I"}

GATE_NAMES = tuple(_GATE_IMAGES)


def canonical_gate_name(name: str) -> str:
    key = name.upper()
    key = _GATE_ALIASES.get(key, key)
    if key not in _GATE_IMAGES:
        msg = f"Unknown gate {name!r} - expected one of {list(GATE_NAMES)}"
        raise UnknownGateError(msg)
    return key


def gate_arity(name: str) -> int:
    return len(_GATE_IMAGES[canonical_gate_name(name)][0])


def named_gate(name: str, targets: Sequence[int], n: int) -> CliffordTableau:
    key = canonical_gate_name(name)
    return _local_gate(key).embed(tuple(targets), n)


@lru_cache(maxsize=None)
def _local_gate(key: str) -> CliffordTableau:
    image_x, image_z = _GATE_IMAGES[key]
    return CliffordTableau.from_labels(image_x, image_z)


@dataclass(frozen=True)
class Gate:
    """A named gate applied to ``targets`` of an ``n``-qubit register"""

    name: str
    targets: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", canonical_gate_name(self.name))
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) != gate_arity(self.name):
            msg = f"{self.name} acts on {gate_arity(self.name)} qubits, got {self.targets}"
            raise ValueError(msg)
        # raises on bad targets
        self.tableau  # noqa: B018

    @property
    def tableau(self) -> CliffordTableau:
        return named_gate(self.name, self.targets, self.n)

    def __str__(self) -> str:
        return f"{self.name} {' '.join(map(str, self.targets))}"


@dataclass(frozen=True)
class PauliSumUnitary:
    """The Hermitian unitary ``(s + g) / sqrt(2)`` of two anticommuting Paulis"""

    s: PauliOperator
    g: PauliOperator

    def __post_init__(self) -> None:
        if not (self.s.is_hermitian and self.g.is_hermitian):
            msg = f"{self.s.label()} and {self.g.label()} must be Hermitian"
            raise SymplecticError(msg)
        if commutes(self.s, self.g):
            msg = f"{self.s.label()} and {self.g.label()} must anticommute"
            raise SymplecticError(msg)

    @property
    def n(self) -> int:
        return self.s.n

    @property
    def tableau(self) -> CliffordTableau:
        return _pauli_sum_tableau(self.s, self.g)

    def __str__(self) -> str:
        return f"({self.s.label()} {self.g.label()})/sqrt2"


CliffordFactor: TypeAlias = Union[Gate, PauliSumUnitary, CliffordTableau]


def factor_tableau(factor: CliffordFactor) -> CliffordTableau:
    return factor if isinstance(factor, CliffordTableau) else factor.tableau


def factor_inverse(factor: CliffordFactor) -> CliffordTableau:
    if isinstance(factor, PauliSumUnitary):
        # Hermitian and unitary
        return factor.tableau
    return inverse(factor_tableau(factor))


@lru_cache(maxsize=4096)
def _pauli_sum_tableau(s: PauliOperator, g: PauliOperator) -> CliffordTableau:
    n = s.n

    def image(p: PauliOperator) -> PauliOperator:
        with_s, with_g = commutes(p, s), commutes(p, g)
        if with_s and with_g:
            return p
        if not (with_s or with_g):
            return -p
        if with_s:
            return pauli_mul(pauli_mul(p, s), g)
        return pauli_mul(pauli_mul(p, g), s)

    return CliffordTableau(
        tuple(image(PauliOperator.single(n, k, "X")) for k in range(n)),
        tuple(image(PauliOperator.single(n, k, "Z")) for k in range(n)),
    )


def _spread(local: PauliOperator, targets: Sequence[int], n: int) -> PauliOperator:
    x = z = 0
    for k, t in enumerate(targets):
        x |= ((local.x >> k) & 1) << t
        z |= ((local.z >> k) & 1) << t
    return PauliOperator(n, x, z, local.phase)


def _check_symplectic(
    image_x: Sequence[PauliOperator], image_z: Sequence[PauliOperator]
) -> None:
    n = len(image_x)
    for j in range(n):
        for k in range(n):
            checks = [(image_x[j], image_z[k], j != k)]
            if j < k:
                checks.append((image_x[j], image_x[k], True))
                checks.append((image_z[j], image_z[k], True))
            for a, b, should_commute in checks:
                if commutes(a, b) != should_commute:
                    relation = "commute" if should_commute else "anticommute"
                    msg = f"Images {a.label()} and {b.label()} must {relation}"
                    raise SymplecticError(msg)
