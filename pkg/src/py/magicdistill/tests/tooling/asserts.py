import numpy as np


def assert_same_items(left, right):
    """Check that two unordered sequences are equal (only works if reprs are equal)"""
    sorted_left = sorted(left, key=repr)
    sorted_right = sorted(right, key=repr)
    assert sorted_left == sorted_right


def assert_bloch_close(actual, expected, atol=1e-10):
    assert np.allclose(np.asarray(actual), np.asarray(expected), atol=atol), (
        f"{actual} != {expected}"
    )


def assert_results_close(actual, expected, atol=1e-10):
    """Compare two reduction results, success probability included"""
    assert abs(actual.success_prob - expected.success_prob) <= atol, (
        f"p: {actual.success_prob} != {expected.success_prob}"
    )
    assert_bloch_close(actual.out_bloch, expected.out_bloch, atol)


def assert_same_group(left, right):
    """Two generator lists span the same signed group"""
    from magicdistill.core.stabilizer import group_sign

    for g in left:
        assert group_sign(right, g) == 1, g.label()
    for g in right:
        assert group_sign(left, g) == 1, g.label()


def assert_equal_up_to_phase(actual, expected, atol=1e-10):
    actual, expected = np.asarray(actual), np.asarray(expected)
    index = np.unravel_index(np.argmax(np.abs(expected)), expected.shape)
    assert abs(actual[index]) > atol, "matrices differ"
    phase = expected[index] / actual[index]
    assert abs(abs(phase) - 1) <= atol, f"not a phase: {phase}"
    assert np.allclose(actual * phase, expected, atol=atol)


def cli_report(result):
    """The JSON report printed before any ``error[...]`` line"""
    import json

    return json.loads(result.output.split("error[", 1)[0])


def assert_proportional(actual, expected, atol=1e-10):
    """``actual`` is a nonzero multiple of ``expected``"""
    actual, expected = np.asarray(actual), np.asarray(expected)
    scale = np.vdot(expected, actual) / np.vdot(expected, expected)
    assert abs(scale) > atol, "matrices are orthogonal"
    assert np.allclose(actual, scale * expected, atol=atol)
    return scale
