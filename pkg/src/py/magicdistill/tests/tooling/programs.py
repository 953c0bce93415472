"""Small program texts with known branch structure"""

from magicdistill.distill.builtins import steane_code
from magicdistill.program.parser import parse_program
from magicdistill.program.types import ReductionProgram, Unitary


MEASURE_X = """\
qubits: 1 0
measure X keep +1
"""

MEASURE_Z = """\
qubits: 1 0
measure Z keep +1
"""

MEASURE_Y_BOTH = """\
qubits: 1 0
measure Y keep both as y
"""

PARITY_DECODE = """\
# project onto the ZZ codespace and move the logical qubit to qubit 0
qubits: 2 0
measure ZZ keep +1 as check
unitary CNOT 0 1
"""

CONTRADICTION = """\
qubits: 1 0
measure Z keep +1
measure Z keep -1
"""

ANCILLA_FEEDFORWARD = """\
qubits: 2 1
output: 1
unitary H 2
measure ZIX keep both as flag
case flag {+1: unitary S 0; -1: unitary H 1}
choice 1/3{unitary CZ 0 1} 2/3{}
measure XXI keep +1
"""

STEANE_MEASURE = """\
qubits: 7 0
measure XXXXIII keep +1
measure XXIIXXI keep +1
measure XIXIXIX keep +1
measure ZZZZIII keep +1
measure ZZIIZZI keep +1
measure ZIZIZIZ keep +1
"""

SCALED = """\
qubits: 1 0
scale 1/2
unitary H 0
"""

# the ancilla picks up the Z0 Z1 parity and is postselected on |0>
ANCILLA_PARITY = """\
qubits: 3 1
unitary CNOT 0 3
unitary CNOT 1 3
measure IIIZ keep +1 as parity
measure IZZI keep +1
unitary CNOT 0 1
unitary CNOT 0 2
"""


def steane_decode_program() -> ReductionProgram:
    """Steane syndrome postselection followed by the code's own decoder"""
    measured = parse_program(STEANE_MEASURE)
    return ReductionProgram(
        7, 0, (*measured.instructions, Unitary(steane_code().decoder()))
    )
