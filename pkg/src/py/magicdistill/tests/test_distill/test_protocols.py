import io
import math

import numpy as np
import pytest

from magicdistill.core.stabilizer import StabilizerCode
from magicdistill.core.tableau import bloch_map, compose, inverse, named_gate
from magicdistill.distill.axes import H_AXIS, T_AXIS, MagicAxis
from magicdistill.distill.builtins import (
    BUILTIN_NAMES,
    builtin,
    parity_code,
    steane_code,
)
from magicdistill.distill.protocols import (
    MapPoint,
    NoThresholdInBracket,
    UndefinedResultError,
    bisect,
    find_threshold,
    fidelity_grid,
    format_number,
    gain,
    iterate_map,
    map_point,
    max_bisection_steps,
    parse_grid,
    protocol,
    save_csv,
    sweep,
    trajectory,
    write_csv,
)
from magicdistill.engine.resource import Undefined

STABILIZER_BOUND_H = (1 + 1 / math.sqrt(2)) / 2
FIVE_QUBIT_THRESHOLD = (1 + math.sqrt(3 / 7)) / 2


def test_bisect_finds_root():
    result = bisect(lambda f: 0.3 - f, (0.0, 1.0), tol=1e-9)
    assert result.root == pytest.approx(0.3, abs=1e-9)
    assert result.iterations <= max_bisection_steps((0.0, 1.0), 1e-9)
    assert result.samples[:2] == ((0.0, 1), (1.0, -1))


def test_bisect_root_on_the_bracket():
    result = bisect(lambda f: f - 0.5, (0.5, 1.0))
    assert result.root == 0.5
    assert result.iterations == 0


def test_bisect_without_sign_change():
    with pytest.raises(NoThresholdInBracket, match="sign \\+1 at both ends") as info:
        bisect(lambda f: 1.0, (0.2, 0.4))
    assert info.value.samples == ((0.2, 1), (0.4, 1))


def test_bisect_needs_positive_tolerance():
    with pytest.raises(ValueError, match="Tolerance must be positive"):
        bisect(lambda f: f, (0.0, 1.0), tol=0)


def test_max_bisection_steps():
    assert max_bisection_steps((0.0, 1.0), 0.25) == 2
    assert max_bisection_steps((0.0, 1.0), 2.0) == 0


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_maximally_mixed_input_is_a_fixed_point(name):
    spec = builtin(name)
    point = map_point(spec, 0.5)
    assert point.f_out == pytest.approx(0.5, abs=1e-12)
    assert point.p_success == 2.0 ** -(spec.code.n - 1)


def test_steane_keeps_pure_states():
    f_out, p_success = iterate_map(builtin("steane7"), 1.0)
    assert f_out == pytest.approx(1.0, abs=1e-12)
    assert 0 < p_success < 1


@pytest.mark.parametrize(
    "name, expected, tol",
    [
        ("parity2", STABILIZER_BOUND_H, 1e-8),
        ("steane7", STABILIZER_BOUND_H, 1e-6),
        ("five_qubit", FIVE_QUBIT_THRESHOLD, 1e-3),
    ],
)
def test_thresholds(name, expected, tol):
    assert find_threshold(builtin(name)) == pytest.approx(expected, abs=tol)


def test_threshold_is_a_fixed_point():
    spec = builtin("parity2")
    root = find_threshold(spec, tol=1e-12)
    assert abs(gain(spec, root)) < 1e-9


@pytest.mark.parametrize("name", ["parity2", "steane7", "five_qubit"])
def test_group_sums_match_dense(name):
    spec = builtin(name)
    for f in fidelity_grid(0.5, 1.0, 100):
        fast = map_point(spec, f)
        dense = map_point(spec, f, dense=True)
        assert fast.f_out == pytest.approx(dense.f_out, abs=1e-10)
        assert fast.p_success == pytest.approx(dense.p_success, abs=1e-10)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["parity2", "steane7", "five_qubit"])
def test_dense_threshold_agrees(name):
    spec = builtin(name)
    dense = find_threshold(spec, dense=True)
    assert find_threshold(spec) == pytest.approx(dense, abs=1e-8)


def _t_rotated(spec):
    t = named_gate("T", (0,), 1)
    rotation = bloch_map(t)
    post = spec.post_clifford
    if post is not None:
        post = compose(t, compose(post, inverse(t)))
    axis = MagicAxis.custom(rotation @ np.asarray(spec.input_axis.axis))
    target = rotation @ np.asarray(spec.target)
    return protocol(spec.code, axis, target, post, name=f"{spec.name}-t")


# both codes are invariant under the transversal T rotation
@pytest.mark.parametrize("name", ["steane7", "five_qubit"])
def test_maps_are_t_rotation_symmetric(name):
    spec = builtin(name)
    rotated = _t_rotated(spec)
    for f in fidelity_grid(0.55, 1.0, 10):
        f_out, p_success = iterate_map(spec, f)
        rotated_out, rotated_success = iterate_map(rotated, f)
        assert rotated_out == pytest.approx(f_out, abs=1e-11)
        assert rotated_success == pytest.approx(p_success, abs=1e-11)


@pytest.mark.parametrize("dense", [False, True])
def test_steane_has_no_t_type_threshold(dense):
    spec = protocol(steane_code(), T_AXIS)
    with pytest.raises(NoThresholdInBracket, match="sign -1 at both ends") as info:
        find_threshold(spec, dense=dense)
    assert [sign for _, sign in info.value.samples] == [-1, -1]


def _never_succeeds():
    code = StabilizerCode.from_labels(("-ZZ",), "+XX", "+ZI", name="anti")
    return protocol(code, MagicAxis((0.0, 0.0, 1.0)))


def test_undefined_round():
    spec = _never_succeeds()
    assert isinstance(iterate_map(spec, 1.0), Undefined)
    with pytest.raises(UndefinedResultError, match="anti has zero success") as info:
        map_point(spec, 1.0)
    assert info.value.f == 1.0


def test_post_clifford_must_act_on_one_qubit():
    with pytest.raises(ValueError, match="must act on one qubit"):
        protocol(parity_code(), H_AXIS, post_clifford=named_gate("CNOT", (0, 1), 2))


def test_protocol_defaults_to_its_axis():
    spec = protocol(parity_code(), H_AXIS)
    assert spec.target == H_AXIS.axis
    assert spec.name == "parity2"
    assert protocol(parity_code(), H_AXIS, target=(0, 0, 1)).target == (0, 0, 1)


def test_trajectory():
    spec = builtin("steane7")
    path = trajectory(spec, 0.95, 3)
    assert len(path.fidelities) == 4
    assert len(path.success) == 3
    assert path.fidelities[0] == 0.95
    assert all(a < b for a, b in zip(path.fidelities, path.fidelities[1:]))
    assert trajectory(spec, 0.9, 0) == type(path)((0.9,), ())


def test_trajectory_below_threshold_falls():
    path = trajectory(builtin("steane7"), 0.8, 2)
    assert path.fidelities[2] < path.fidelities[0]


def test_trajectory_rounds_must_be_non_negative():
    with pytest.raises(ValueError, match="non-negative"):
        trajectory(builtin("parity2"), 0.9, -1)


def test_fidelity_grid():
    grid = fidelity_grid(0.5, 1.0, 101)
    assert len(grid) == 101
    assert grid[0] == 0.5
    assert grid[-1] == 1.0
    assert fidelity_grid(0.7, 1.0, 1) == [0.7]
    with pytest.raises(ValueError, match="at least one point"):
        fidelity_grid(0.5, 1.0, 0)


def test_parse_grid():
    assert parse_grid("0.5:1:3") == [0.5, 0.75, 1.0]
    with pytest.raises(ValueError, match="start:stop:points"):
        parse_grid("0.5:1")


def test_format_number():
    assert format_number(0.5) == "0.5"
    assert format_number(1 / 3) == "0.33333333333333331"
    assert format_number(2.0**-6) == "0.015625"


def test_sweep_and_csv(tmp_path):
    spec = builtin("steane7")
    points = sweep(spec, [0.5, 1.0])
    assert points[0] == MapPoint(0.5, 0.5, 2.0**-6)
    assert points[1].f_out == pytest.approx(1.0)
    buffer = io.StringIO()
    write_csv(points[:1], buffer)
    assert buffer.getvalue() == "f_in,f_out,p_success\n0.5,0.5,0.015625\n"
    path = tmp_path / "map.csv"
    save_csv(points[:1], path)
    assert path.read_text() == buffer.getvalue()
