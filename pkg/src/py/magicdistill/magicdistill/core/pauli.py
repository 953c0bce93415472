"""Signed Pauli operators with exact phase bookkeeping.

An operator is stored as ``i**phase * prod_k X_k**x_k Z_k**z_k`` where bit ``k`` of
the ``x`` and ``z`` masks refers to qubit ``k`` and, on each qubit, the X factor is
written before the Z factor. Since ``XZ = -iY`` the text form counts Y factors
separately: ``+iY`` is stored with phase 2 on the normal form ``XZ``.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

if TYPE_CHECKING:
    from magicdistill.engine.resource import ProductResource

PauliKind = Literal["I", "X", "Y", "Z"]

_LABEL_PATTERN = re.compile(r"^(?P<sign>\+i|-i|i|\+|-)?(?P<body>[IXYZ]*)$")
_SIGN_EXPONENTS = {None: 0, "+": 0, "-": 2, "+i": 1, "i": 1, "-i": 3}
_SIGN_TEXT = ("+", "+i", "-", "-i")
_KINDS: tuple[PauliKind, ...] = ("I", "X", "Z", "Y")


class PauliSizeError(ValueError):
    """Operators act on registers of different sizes"""


class NonHermitianError(ValueError):
    """A Hermitian Pauli was required"""


@dataclass(frozen=True)
class PauliOperator:
    """An ``n``-qubit Pauli operator with a phase that is a power of ``i``"""

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            msg = f"Qubit count must be non-negative, got {self.n}"
            raise ValueError(msg)
        if min(self.x, self.z) < 0 or (self.x | self.z) >> self.n:
            msg = f"Bit masks {self.x:b}/{self.z:b} do not fit on {self.n} qubits"
            raise ValueError(msg)
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, kind: PauliKind) -> PauliOperator:
        """``kind`` acting on ``qubit`` of an ``n``-qubit register, sign ``+``"""
        if not 0 <= qubit < n:
            msg = f"Qubit {qubit} out of range for {n} qubits"
            raise ValueError(msg)
        return cls.from_label("I" * qubit + kind + "I" * (n - qubit - 1))

    @classmethod
    def from_bits(
        cls, x_bits: Iterable[int], z_bits: Iterable[int], phase: int = 0
    ) -> PauliOperator:
        xs, zs = list(x_bits), list(z_bits)
        if len(xs) != len(zs):
            msg = f"Bit vectors have different lengths {len(xs)} and {len(zs)}"
            raise PauliSizeError(msg)
        x = sum(1 << k for k, bit in enumerate(xs) if bit)
        z = sum(1 << k for k, bit in enumerate(zs) if bit)
        return cls(len(xs), x, z, phase)

    @classmethod
    def from_label(cls, label: str) -> PauliOperator:
        """Parse the text form, e.g. ``"+XXIXXII"`` or ``"-iY"``"""
        match = _LABEL_PATTERN.match(label.strip().replace("−", "-"))
        if match is None:
            msg = f"Invalid Pauli string {label!r}"
            raise ValueError(msg)
        body = match.group("body")
        x = z = 0
        for k, char in enumerate(body):
            if char in "XY":
                x |= 1 << k
            if char in "ZY":
                z |= 1 << k
        y_count = body.count("Y")
        return cls(len(body), x, z, _SIGN_EXPONENTS[match.group("sign")] + y_count)

    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> k) & 1 for k in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> k) & 1 for k in range(self.n))

    @property
    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def sign_exponent(self) -> int:
        """Exponent ``e`` with ``self == i**e * (tensor product of I, X, Y, Z)``"""
        return (self.phase - self.y_count) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.sign_exponent % 2 == 0

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def kind(self, qubit: int) -> PauliKind:
        return _KINDS[((self.x >> qubit) & 1) | (((self.z >> qubit) & 1) << 1)]

    def label(self) -> str:
        body = "".join(self.kind(k) for k in range(self.n))
        return _SIGN_TEXT[self.sign_exponent] + body

    def unsigned(self) -> PauliOperator:
        """The same Pauli with sign ``+``"""
        return PauliOperator(self.n, self.x, self.z, self.y_count)

    def adjoint(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, 2 * self.y_count - self.phase)

    def tensor(self, other: PauliOperator) -> PauliOperator:
        """``self`` on the leading qubits followed by ``other``"""
        return PauliOperator(
            self.n + other.n,
            self.x | (other.x << self.n),
            self.z | (other.z << self.n),
            self.phase + other.phase,
        )

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return pauli_mul(self, other)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def __str__(self) -> str:
        return self.label()


def stabilizer(label: str) -> PauliOperator:
    """Parse a stabilizer generator, which must be Hermitian"""
    pauli = PauliOperator.from_label(label)
    if not pauli.is_hermitian:
        msg = f"Stabilizer generators must be Hermitian, got {label!r}"
        raise NonHermitianError(msg)
    return pauli


def pauli_mul(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """The product ``a @ b`` with its exact phase"""
    _check_sizes(a, b)
    # moving the Z part of ``a`` past the X part of ``b``
    swaps = (a.z & b.x).bit_count()
    return PauliOperator(a.n, a.x ^ b.x, a.z ^ b.z, a.phase + b.phase + 2 * swaps)


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    _check_sizes(a, b)
    return ((a.x & b.z) ^ (a.z & b.x)).bit_count() % 2 == 0


def symplectic_product(a: PauliOperator, b: PauliOperator) -> int:
    """0 when the operators commute and 1 when they anticommute"""
    return 0 if commutes(a, b) else 1


def product_expectation(p: PauliOperator, rho: ProductResource) -> float:
    """``tr(p rho)`` for a Hermitian ``p`` and a product state given by Bloch vectors"""
    if p.n != rho.n:
        msg = f"Pauli on {p.n} qubits applied to a {rho.n}-qubit resource"
        raise PauliSizeError(msg)
    if not p.is_hermitian:
        msg = f"Expectation values need a Hermitian Pauli, got {p.label()}"
        raise NonHermitianError(msg)
    factors = []
    for k, (rx, ry, rz) in enumerate(rho.bloch):
        kind = p.kind(k)
        if kind != "I":
            factors.append({"X": rx, "Y": ry, "Z": rz}[kind])
    return (1 - p.sign_exponent) * math.prod(factors)


def _check_sizes(a: PauliOperator, b: PauliOperator) -> None:
    if a.n != b.n:
        msg = f"Pauli operators act on {a.n} and {b.n} qubits"
        raise PauliSizeError(msg)
