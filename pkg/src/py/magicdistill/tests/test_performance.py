import time

import pytest

from magicdistill.config import MAGICDISTILL_THREADS
from magicdistill.distill.builtins import builtin
from magicdistill.distill.protocols import fidelity_grid, iterate_map, sweep
from magicdistill.engine.groupsum import group_sums, output_state
from magicdistill.engine.resource import ProductResource
from magicdistill.sampling import random_code, random_resource


def _best_time(function, repeats=5):
    function()
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        function()
        best = min(best, time.perf_counter() - start)
    return best


@pytest.mark.timeout(10)
def test_reed_muller_round_is_fast():
    spec = builtin("reed_muller15")
    assert _best_time(lambda: iterate_map(spec, 0.9)) < 0.05


@pytest.mark.timeout(5)
def test_ten_qubit_group_sum(rng):
    code = random_code(rng, 10)
    rho = random_resource(rng, 10)
    s_i, *_ = group_sums(code, rho)
    assert s_i >= 0
    mixed = output_state(code, ProductResource.maximally_mixed(10))
    assert mixed.success_prob == pytest.approx(2.0**-9)


@pytest.mark.slow
@pytest.mark.timeout(30)
def test_thousand_point_sweep():
    spec = builtin("steane7")
    grid = fidelity_grid(0.5, 1.0, 1000)
    with MAGICDISTILL_THREADS.override(1):
        points = sweep(spec, grid)
    assert [p.f_in for p in points] == grid
