from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Callable

from magicdistill.core.pauli import PauliOperator
from magicdistill.core.stabilizer import StabilizerCode
from magicdistill.core.tableau import named_gate
from magicdistill.distill.axes import H_AXIS, T_AXIS, MagicAxis
from magicdistill.distill.protocols import ProtocolSpec, protocol

STEANE_GENERATORS = (
    "+XXXXIII",
    "+XXIIXXI",
    "+XIXIXIX",
    "+ZZZZIII",
    "+ZZIIZZI",
    "+ZIZIZIZ",
)

FIVE_QUBIT_GENERATORS = ("+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ")


def steane_code() -> StabilizerCode:
    return StabilizerCode.from_labels(
        STEANE_GENERATORS, "-XXXXXXX", "-ZZZZZZZ", name="steane7"
    )


def five_qubit_code() -> StabilizerCode:
    return StabilizerCode.from_labels(
        FIVE_QUBIT_GENERATORS, "+XXXXX", "+ZZZZZ", name="five_qubit"
    )


def parity_code() -> StabilizerCode:
    return StabilizerCode.from_labels(("+ZZ",), "+XX", "+ZI", name="parity2")


def reed_muller_code() -> StabilizerCode:
    """The punctured ``[[15, 1, 3]]`` Reed-Muller code

    Qubit ``v - 1`` holds the nonzero 4-bit string ``v``. X checks are the four degree-1
    functions of ``v`` and Z checks the degree-1 and degree-2 ones.
    """
    points = range(1, 16)

    def support(*bits: int) -> int:
        mask = 0
        for v in points:
            if all((v >> b) & 1 for b in bits):
                mask |= 1 << (v - 1)
        return mask

    n = len(points)
    linear = [support(b) for b in range(4)]
    quadratic = [support(a, b) for a, b in itertools.combinations(range(4), 2)]
    x_checks = [PauliOperator(n, x=mask) for mask in linear]
    z_checks = [PauliOperator(n, z=mask) for mask in (*linear, *quadratic)]
    everything = (1 << n) - 1
    return StabilizerCode(
        n,
        (*x_checks, *z_checks),
        PauliOperator(n, x=everything),
        PauliOperator(n, z=everything),
        name="reed_muller15",
    )


def steane7() -> ProtocolSpec:
    """Seven copies along the H axis, decoded by the Steane code

    With ``X_L = -X^7`` and ``Z_L = -Z^7`` the decoded state lands on the antipodal H
    axis, and the ``Y`` correction rotates it back onto the input axis so that rounds
    can be chained. The threshold is ``(1 + 1/sqrt(2)) / 2``. T-type inputs have no
    threshold since the gain is negative across the whole bracket.
    """
    return protocol(steane_code(), H_AXIS, post_clifford=named_gate("Y", (0,), 1))


def five_qubit() -> ProtocolSpec:
    # no Clifford maps a T axis onto its antipode
    return protocol(five_qubit_code(), T_AXIS, target=T_AXIS.antipode.axis)


def parity2() -> ProtocolSpec:
    return protocol(parity_code(), H_AXIS)


def reed_muller15() -> ProtocolSpec:
    axis = MagicAxis((1 / math.sqrt(2), 1 / math.sqrt(2), 0.0))
    return protocol(reed_muller_code(), axis, post_clifford=named_gate("X", (0,), 1))


_BUILTINS: dict[str, Callable[[], ProtocolSpec]] = {
    "steane7": steane7,
    "five_qubit": five_qubit,
    "parity2": parity2,
    "reed_muller15": reed_muller15,
}

BUILTIN_NAMES = tuple(_BUILTINS)


@lru_cache(maxsize=None)
def builtin(name: str) -> ProtocolSpec:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        msg = f"Unknown protocol {name!r} - expected one of {list(BUILTIN_NAMES)}"
        raise ValueError(msg) from None
    return factory()
