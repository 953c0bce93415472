from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal

import numpy as np

from magicdistill.engine.resource import BlochVector, as_bloch

AXIS_TOLERANCE = 1e-12

AxisFamily = Literal["H", "T", "custom"]


@dataclass(frozen=True)
class MagicAxis:
    """The Bloch direction of an ideal magic state"""

    axis: BlochVector
    family: AxisFamily = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis", as_bloch(self.axis))
        norm = math.sqrt(math.fsum(a * a for a in self.axis))
        if abs(norm - 1) > AXIS_TOLERANCE:
            msg = f"Magic axis {self.axis} is not a unit vector (norm {norm})"
            raise ValueError(msg)

    @classmethod
    def custom(cls, vector: Iterable[float]) -> MagicAxis:
        """Normalize ``vector`` into an axis"""
        array = np.asarray(as_bloch(vector))
        norm = float(np.linalg.norm(array))
        if norm == 0:
            msg = "A magic axis cannot be the zero vector"
            raise ValueError(msg)
        return cls(as_bloch(array / norm))

    @property
    def antipode(self) -> MagicAxis:
        return MagicAxis(as_bloch(-np.asarray(self.axis)), self.family)

    def __str__(self) -> str:
        if self.family != "custom":
            return self.family
        return ",".join(repr(a) for a in self.axis)


H_AXIS = MagicAxis((1 / math.sqrt(2), 0.0, 1 / math.sqrt(2)), "H")
T_AXIS = MagicAxis((1 / math.sqrt(3),) * 3, "T")


def parse_axis(text: str) -> MagicAxis:
    """``H``, ``T`` or a comma separated vector such as ``1,1,0``"""
    name = text.strip().upper()
    if name == "H":
        return H_AXIS
    if name == "T":
        return T_AXIS
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        msg = f"Expected H, T or x,y,z for an axis, got {text!r}"
        raise ValueError(msg) from None
    return MagicAxis.custom(values)


def magic_state(f: float, axis: MagicAxis) -> BlochVector:
    """Bloch vector of the mixture with fidelity ``f`` to the magic state on ``axis``"""
    if not 0 <= f <= 1:
        msg = f"Fidelity must lie in [0, 1], got {f}"
        raise ValueError(msg)
    scale = 2 * f - 1
    return as_bloch(scale * a for a in axis.axis)
