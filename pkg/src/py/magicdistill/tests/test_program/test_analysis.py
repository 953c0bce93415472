import pytest

from magicdistill.engine.oracle import dense_oracle, with_ancillas
from magicdistill.engine.resource import ProductResource, ReductionResult, Undefined
from magicdistill.program.analysis import (
    BranchScore,
    analyze_program,
    best_branch,
    branch_output,
    branch_probability,
    full_resource,
    score_branches,
)
from magicdistill.program.parser import parse_program
from magicdistill.program.types import branch_matrix
from magicdistill.sampling import random_program, random_resource

from tests.tooling import programs
from tests.tooling.asserts import assert_bloch_close


def test_parity_decode_forms():
    analysis = analyze_program(parse_program(programs.PARITY_DECODE))
    assert analysis.exhaustive
    assert [row.form_name for row in analysis.branches] == ["B", "zero"]
    assert not analysis.all_zero
    assert [row.branch.index for row in analysis.nonzero()] == [0]


def test_contradiction_is_all_zero():
    analysis = analyze_program(parse_program(programs.CONTRADICTION))
    assert analysis.all_zero
    assert analysis.nonzero() == []


def test_forms_can_be_skipped():
    analysis = analyze_program(parse_program(programs.MEASURE_Z), forms=False)
    (row,) = analysis.branches
    assert row.form is None
    assert row.form_name is None
    with pytest.raises(ValueError, match="has not been classified"):
        branch_output(row, ProductResource.copies((0, 0, 1), 1))


def test_zero_branch_output_is_undefined():
    analysis = analyze_program(parse_program(programs.CONTRADICTION))
    result = branch_output(analysis.branches[0], ProductResource.copies((0, 0, 1), 1))
    assert isinstance(result, Undefined)


def test_branch_output_checks_resource_size():
    analysis = analyze_program(parse_program(programs.PARITY_DECODE))
    with pytest.raises(ValueError, match="2 resource qubits, got 3"):
        branch_output(analysis.branches[0], ProductResource.maximally_mixed(3))


@pytest.mark.parametrize("z", [0.0, 0.3, -0.8, 1.0])
def test_parity_branch_probability(z):
    analysis = analyze_program(parse_program(programs.PARITY_DECODE))
    rho = ProductResource.copies((0.0, 0.0, z), 2)
    probability = branch_probability(analysis.branches[0].canonical, rho)
    assert probability == pytest.approx((1 + z * z) / 2)


def test_scale_enters_probability():
    analysis = analyze_program(parse_program(programs.SCALED))
    result = branch_output(analysis.branches[0], ProductResource.copies((0, 0, 1), 1))
    assert result.success_prob == pytest.approx(0.25)
    # H takes |0> to |+>
    assert_bloch_close(result.out_bloch, (1, 0, 0))


def test_full_resource_appends_ancillas():
    rho = full_resource(ProductResource.copies((0.5, 0, 0), 1), 2)
    assert rho.bloch == ((0.5, 0.0, 0.0), (0.0, 0.0, 1.0), (0.0, 0.0, 1.0))


def test_branch_outputs_match_dense_matrices(rng):
    compared = 0
    while compared < 300:
        program = random_program(rng, max_qubits=4)
        analysis = analyze_program(program)
        rho = random_resource(rng, program.n_resource)
        density = with_ancillas(rho.density(), program.n_ancilla)
        for row in analysis.nonzero():
            actual = branch_output(row, rho)
            expected = dense_oracle([branch_matrix(row.branch)], density)
            assert abs(actual.success_prob - expected.success_prob) <= 1e-10
            if (
                isinstance(actual, ReductionResult)
                and isinstance(expected, ReductionResult)
                and expected.success_prob > 1e-6
            ):
                assert_bloch_close(actual.out_bloch, expected.out_bloch, atol=1e-8)
            compared += 1


def test_score_and_pick_best_branch():
    analysis = analyze_program(parse_program(programs.MEASURE_Y_BOTH))
    rho = ProductResource.copies((0.0, 0.6, 0.0), 1)
    scores = score_branches(analysis, rho, (0.0, 1.0, 0.0))
    assert [s.fidelity for s in scores] == pytest.approx([1.0, 0.0])
    assert [s.result.success_prob for s in scores] == pytest.approx([0.8, 0.2])
    assert best_branch(scores).row.branch.index == 0


def test_best_branch_ties_go_to_the_first():
    fidelities = [0.5, 0.9, 0.9]
    scores = [BranchScore(row, None, f) for row, f in enumerate(fidelities)]
    assert best_branch(scores).row == 1
    assert best_branch([]) is None
