from fractions import Fraction

import numpy as np
import pytest

from magicdistill.core.pauli import PauliOperator
from magicdistill.core.tableau import Gate, PauliSumUnitary
from magicdistill.program.expand import iter_branches
from magicdistill.program.normalize import (
    NormalizationError,
    check_canonical,
    normalize,
)
from magicdistill.program.parser import parse_program
from magicdistill.program.types import (
    BranchId,
    BranchKraus,
    CanonicalKraus,
    ZeroBranch,
    branch_matrix,
    canonical_matrix,
)
from magicdistill.sampling import random_program

from tests.tooling import programs


def _branches(text):
    return list(iter_branches(parse_program(text)))


def test_parity_decode():
    kept, dropped = (normalize(b) for b in _branches(programs.PARITY_DECODE))
    assert isinstance(kept, CanonicalKraus)
    assert kept.stab_projector == (PauliOperator.from_label("ZZ"),)
    assert kept.clifford == Gate("CNOT", (0, 1), 2).tableau
    assert kept.scale_log2 == 0
    assert isinstance(dropped, ZeroBranch)


def test_contradiction_is_zero():
    (branch,) = _branches(programs.CONTRADICTION)
    canon = normalize(branch)
    assert isinstance(canon, ZeroBranch)
    assert canon.projector == PauliOperator.from_label("-Z")
    assert np.allclose(branch_matrix(branch), 0)


def test_anticommuting_projector_becomes_clifford():
    (branch,) = _branches("qubits: 1 0\nmeasure Z keep +1\nmeasure X keep +1\n")
    canon = normalize(branch)
    assert canon.scale_log2 == Fraction(-1, 2)
    assert canon.stab_projector == (PauliOperator.from_label("Z"),)
    (factor,) = canon.factors
    assert isinstance(factor, PauliSumUnitary)
    # (X + Z) / sqrt(2) is the Hadamard
    assert canon.clifford == Gate("H", (0,), 1).tableau


def test_implied_projector_is_dropped():
    text = "qubits: 2 0\nmeasure ZI keep +1\nmeasure IZ keep +1\nmeasure ZZ keep +1\n"
    branch = _branches(text)[0]
    canon = normalize(branch)
    assert len(canon.stab_projector) == 2


def test_weight_is_carried():
    (branch,) = _branches(programs.SCALED)
    canon = normalize(branch)
    assert canon.weight == Fraction(1, 4)
    assert canon.stab_projector == ()


@pytest.mark.slow
def test_random_branches_match_dense_matrices(rng):
    checked = 0
    while checked < 500:
        program = random_program(rng, max_qubits=4)
        for branch in iter_branches(program):
            canon = normalize(branch)
            if isinstance(canon, ZeroBranch):
                assert np.allclose(branch_matrix(branch), 0, atol=1e-10)
            else:
                check_canonical(branch, canon)
                assert len(canon.stab_projector) <= branch.n
            checked += 1


def test_check_canonical_rejects_a_wrong_form():
    (branch,) = _branches(programs.MEASURE_X)
    wrong = CanonicalKraus(
        n=1,
        scale_log2=Fraction(0),
        clifford=Gate("I", (0,), 1).tableau,
        stab_projector=(PauliOperator.from_label("Z"),),
    )
    assert not np.allclose(branch_matrix(branch), canonical_matrix(wrong))
    with pytest.raises(NormalizationError, match="does not match"):
        check_canonical(branch, wrong)


def test_empty_branch_is_identity():
    branch = BranchKraus(0, BranchId((), ()), 1, 0, ())
    canon = normalize(branch)
    assert canon.stab_projector == ()
    assert np.allclose(canonical_matrix(canon), np.eye(2))
