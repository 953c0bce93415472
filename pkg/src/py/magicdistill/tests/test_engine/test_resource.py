import math

import numpy as np
import pytest

from magicdistill.core.tableau import named_gate
from magicdistill.engine.resource import (
    ProductResource,
    ReductionResult,
    Undefined,
    as_bloch,
    fidelity,
    make_result,
    stabilizer_state_bound,
    unit_vector,
)


def test_as_bloch_needs_three_components():
    assert as_bloch(np.array([1, 0, 0])) == (1.0, 0.0, 0.0)
    with pytest.raises(ValueError, match="three components"):
        as_bloch([1, 0])


def test_unphysical_resource_is_rejected():
    with pytest.raises(ValueError, match="of qubit 1 has norm"):
        ProductResource(((0, 0, 1), (1, 1, 0)))


def test_resource_helpers():
    rho = ProductResource.copies((0.5, 0.0, 0.0), 3)
    assert rho.n == 3
    assert rho.array().shape == (3, 3)
    assert ProductResource.maximally_mixed(2).bloch == ((0.0, 0.0, 0.0),) * 2
    density = rho.density()
    assert density.shape == (8, 8)
    assert np.trace(density).real == pytest.approx(1)


def test_make_result():
    assert make_result(0.5, (0, 0, 1)) == ReductionResult(0.5, (0.0, 0.0, 1.0))
    assert isinstance(make_result(0.0, (0, 0, 0)), Undefined)
    assert make_result(1e-16, (0, 0, 0)).success_prob == 1e-16
    assert make_result(-1e-17, (0, 0, 0)).success_prob == 0


@pytest.mark.parametrize(
    "bloch, target, expected",
    [
        ((0, 0, 1), (0, 0, 1), 1.0),
        ((0, 0, 1), (0, 0, -1), 0.0),
        ((0, 0, 0), (1, 0, 0), 0.5),
        ((0.6, 0, 0), (1, 0, 0), 0.8),
    ],
)
def test_fidelity(bloch, target, expected):
    result = ReductionResult(1.0, bloch)
    assert fidelity(result, target) == pytest.approx(expected)
    assert result.fidelity(target) == pytest.approx(expected)


def test_fidelity_needs_a_pure_target():
    with pytest.raises(ValueError, match="not a unit vector"):
        unit_vector((0.5, 0, 0))


def test_stabilizer_state_bound():
    h = (1 / math.sqrt(2), 0, 1 / math.sqrt(2))
    assert stabilizer_state_bound(h) == pytest.approx((1 + 1 / math.sqrt(2)) / 2)
    t = (1 / math.sqrt(3),) * 3
    assert stabilizer_state_bound(t) == pytest.approx((1 + 1 / math.sqrt(3)) / 2)
    assert stabilizer_state_bound((0, 1, 0)) == 1


def test_with_clifford_rotates_the_output():
    result = ReductionResult(0.25, (1.0, 0.0, 0.0))
    rotated = result.with_clifford(named_gate("H", (0,), 1))
    assert rotated.success_prob == 0.25
    assert rotated.out_bloch == (0.0, 0.0, 1.0)
