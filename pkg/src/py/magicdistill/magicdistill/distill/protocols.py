"""One round of distillation as a map on fidelities, and what can be read off it.

A protocol feeds ``n`` copies of a noisy magic state into a stabilizer reduction. The
output fidelity ``f_out(f)`` is computed either by summing over the stabilizer group
or, for small codes, from the full density matrix.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from typing import Callable, TextIO

import numpy as np

from magicdistill._workers import run_all
from magicdistill.core.stabilizer import StabilizerCode
from magicdistill.core.tableau import CliffordTableau
from magicdistill.distill.axes import MagicAxis, magic_state
from magicdistill.engine.groupsum import output_state
from magicdistill.engine.oracle import dense_oracle
from magicdistill.engine.resource import (
    BlochVector,
    ProductResource,
    ReductionResult,
    Undefined,
    as_bloch,
    unit_vector,
)

logger = getLogger(__name__)

DEFAULT_BRACKET = (0.55, 0.999)
DEFAULT_TOLERANCE = 1e-9
CSV_HEADER = ("f_in", "f_out", "p_success")


class NoThresholdInBracket(ValueError):
    """The gain ``f_out - f`` does not change sign on the bracket"""

    def __init__(self, msg: str, samples: Sequence[tuple[float, int]]) -> None:
        super().__init__(msg)
        self.samples = tuple(samples)


class UndefinedResultError(ValueError):
    """The reduction never succeeds at this fidelity"""

    def __init__(self, msg: str, f: float) -> None:
        super().__init__(msg)
        self.f = f


@dataclass(frozen=True)
class ProtocolSpec:
    code: StabilizerCode
    input_axis: MagicAxis
    target: BlochVector
    post_clifford: CliffordTableau | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", as_bloch(unit_vector(self.target)))
        if self.post_clifford is not None and self.post_clifford.n != 1:
            msg = f"Post-decoding Clifford must act on one qubit, not {self.post_clifford.n}"
            raise ValueError(msg)


def protocol(
    code: StabilizerCode,
    axis: MagicAxis,
    target: Iterable[float] | None = None,
    post_clifford: CliffordTableau | None = None,
    name: str = "",
) -> ProtocolSpec:
    """A protocol that aims for the input axis unless another target is given"""
    return ProtocolSpec(
        code,
        axis,
        as_bloch(axis.axis if target is None else target),
        post_clifford,
        name or code.name,
    )


@dataclass(frozen=True)
class MapPoint:
    f_in: float
    f_out: float
    p_success: float


def resource(spec: ProtocolSpec, f: float) -> ProductResource:
    return ProductResource.copies(magic_state(f, spec.input_axis), spec.code.n)


def run_round(
    spec: ProtocolSpec, f: float, dense: bool = False
) -> ReductionResult | Undefined:
    rho = resource(spec, f)
    if dense:
        result = dense_oracle((spec.code, spec.code.decoder()), rho)
    else:
        result = output_state(spec.code, rho)
    if isinstance(result, Undefined) or spec.post_clifford is None:
        return result
    return result.with_clifford(spec.post_clifford)


def iterate_map(
    spec: ProtocolSpec, f: float, dense: bool = False
) -> tuple[float, float] | Undefined:
    """``(f_out, p_success)`` after one round starting from fidelity ``f``"""
    result = run_round(spec, f, dense)
    if isinstance(result, Undefined):
        return result
    return result.fidelity(spec.target), result.success_prob


def map_point(spec: ProtocolSpec, f: float, dense: bool = False) -> MapPoint:
    """Like :func:`iterate_map` but raising when the round never succeeds"""
    value = iterate_map(spec, f, dense)
    if isinstance(value, Undefined):
        msg = f"{spec.name or 'Protocol'} has zero success probability at f={f!r}"
        raise UndefinedResultError(msg, f)
    return MapPoint(f, *value)


def gain(spec: ProtocolSpec, f: float, dense: bool = False) -> float:
    return map_point(spec, f, dense).f_out - f


@dataclass(frozen=True)
class Bisection:
    root: float
    iterations: int
    samples: tuple[tuple[float, int], ...]


def bisect(
    function: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = DEFAULT_TOLERANCE,
) -> Bisection:
    """Locate a sign change of ``function`` on ``bracket`` to within ``tol``"""
    lo, hi = sorted(bracket)
    if not tol > 0:
        msg = f"Tolerance must be positive, got {tol}"
        raise ValueError(msg)
    samples: list[tuple[float, int]] = []

    def sign(f: float) -> int:
        value = int(np.sign(function(f)))
        samples.append((f, value))
        return value

    sign_lo, sign_hi = sign(lo), sign(hi)
    if sign_lo == 0:
        return Bisection(lo, 0, tuple(samples))
    if sign_hi == 0:
        return Bisection(hi, 0, tuple(samples))
    if sign_lo == sign_hi:
        msg = f"Gain has sign {sign_lo:+d} at both ends of [{lo!r}, {hi!r}]"
        raise NoThresholdInBracket(msg, samples)
    iterations = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        iterations += 1
        sign_mid = sign(mid)
        logger.debug("Bisection step %d: f=%r gain sign %+d", iterations, mid, sign_mid)
        if sign_mid == 0:
            return Bisection(mid, iterations, tuple(samples))
        if sign_mid == sign_lo:
            lo = mid
        else:
            hi = mid
    return Bisection((lo + hi) / 2, iterations, tuple(samples))


def max_bisection_steps(bracket: tuple[float, float], tol: float) -> int:
    lo, hi = sorted(bracket)
    return max(0, math.ceil(math.log2((hi - lo) / tol)))


def find_threshold(
    spec: ProtocolSpec,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tol: float = DEFAULT_TOLERANCE,
    dense: bool = False,
) -> float:
    """The fidelity above which repeated rounds improve the state"""
    result = bisect(lambda f: gain(spec, f, dense), bracket, tol)
    logger.debug(
        "Threshold of %s is %r after %d steps",
        spec.name or "protocol",
        result.root,
        result.iterations,
    )
    return result.root


@dataclass(frozen=True)
class Trajectory:
    """Fidelities after each round (starting value first) and each round's success"""

    fidelities: tuple[float, ...]
    success: tuple[float, ...]


def trajectory(
    spec: ProtocolSpec, f: float, rounds: int, dense: bool = False
) -> Trajectory:
    """Feed the output of each round into the next one"""
    if rounds < 0:
        msg = f"Number of rounds must be non-negative, got {rounds}"
        raise ValueError(msg)
    fidelities, success = [f], []
    for _ in range(rounds):
        point = map_point(spec, min(max(fidelities[-1], 0.0), 1.0), dense)
        fidelities.append(point.f_out)
        success.append(point.p_success)
    return Trajectory(tuple(fidelities), tuple(success))


def fidelity_grid(start: float, stop: float, points: int) -> list[float]:
    if points < 1:
        msg = f"A grid needs at least one point, got {points}"
        raise ValueError(msg)
    if points == 1:
        return [start]
    grid = [float(f) for f in np.linspace(start, stop, points)]
    # end points are exact, linspace can round them
    grid[0], grid[-1] = start, stop
    return grid


def parse_grid(text: str) -> list[float]:
    """``a:b:k`` is ``k`` evenly spaced fidelities from ``a`` to ``b``"""
    parts = text.split(":")
    if len(parts) != 3:  # noqa: PLR2004
        msg = f"Expected a grid as 'start:stop:points', got {text!r}"
        raise ValueError(msg)
    return fidelity_grid(float(parts[0]), float(parts[1]), int(parts[2]))


def sweep(
    spec: ProtocolSpec, grid: Sequence[float], dense: bool = False
) -> list[MapPoint]:
    return run_all(lambda f: map_point(spec, f, dense), list(grid))


def format_number(value: float) -> str:
    """17 significant digits, the same on every platform"""
    return f"{value:.17g}"


def write_csv(points: Iterable[MapPoint], file: TextIO) -> None:
    writer = csv.writer(file, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in points:
        writer.writerow([format_number(v) for v in (p.f_in, p.f_out, p.p_success)])


def save_csv(points: Iterable[MapPoint], path: str | Path) -> None:
    with Path(path).open("w", newline="") as file:
        write_csv(points, file)
