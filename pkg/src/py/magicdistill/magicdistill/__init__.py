from magicdistill import config, logging
from magicdistill.core.pauli import PauliOperator, stabilizer
from magicdistill.core.stabilizer import StabilizerCode
from magicdistill.core.tableau import CliffordTableau, Gate, compose, conjugate, inverse
from magicdistill.distill.axes import H_AXIS, T_AXIS, MagicAxis
from magicdistill.distill.builtins import builtin
from magicdistill.distill.protocols import (
    find_threshold,
    iterate_map,
    protocol,
    sweep,
    trajectory,
)
from magicdistill.engine.groupsum import output_state, success_probability
from magicdistill.engine.oracle import dense_oracle
from magicdistill.engine.resource import ProductResource, ReductionResult, Undefined
from magicdistill.program.analysis import analyze_program
from magicdistill.program.expand import expand_branches
from magicdistill.program.normalize import normalize
from magicdistill.program.parser import parse_program
from magicdistill.theorem import verify_theorem

__version__ = "0.1.0"  # DO NOT MODIFY

__all__ = [
    "analyze_program",
    "builtin",
    "CliffordTableau",
    "compose",
    "config",
    "conjugate",
    "dense_oracle",
    "expand_branches",
    "find_threshold",
    "Gate",
    "H_AXIS",
    "inverse",
    "iterate_map",
    "logging",
    "MagicAxis",
    "normalize",
    "output_state",
    "parse_program",
    "PauliOperator",
    "ProductResource",
    "protocol",
    "ReductionResult",
    "stabilizer",
    "StabilizerCode",
    "success_probability",
    "sweep",
    "T_AXIS",
    "trajectory",
    "Undefined",
    "verify_theorem",
]
