import math

import numpy as np
import pytest

from linewalker.drivers import (
    REASONS,
    RunConfig,
    RunError,
    extrema_hunter,
    initial_sample_indices,
    linewalker_full,
    linewalker_pure,
)
from linewalker.grid import build_grid
from linewalker.objectives import get_benchmark, plateau_2d


def test_initial_indices_examples():
    assert initial_sample_indices(1000, 11) == [1, 101, 201, 301, 401, 501, 600, 700, 800, 900, 1000]
    assert initial_sample_indices(11, 11) == list(range(1, 12))
    assert initial_sample_indices(5000, 11)[:3] == [1, 501, 1001]


def test_initial_indices_match_formula():
    for n in (11, 50, 999, 5000, 10000):
        idx = initial_sample_indices(n, 11)
        assert idx == [math.floor(1 + (n - 1) * (i - 1) / 10 + 0.5) for i in range(1, 12)]
        assert idx[0] == 1 and idx[-1] == n and all(a < b for a, b in zip(idx, idx[1:]))


def test_initial_indices_errors():
    with pytest.raises(ValueError):
        initial_sample_indices(10, 11)
    with pytest.raises(ValueError):
        initial_sample_indices(10, 1)


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(e_max_total=10)
    with pytest.raises(ValueError):
        RunConfig(e_max_itr=0)
    with pytest.raises(ValueError):
        RunConfig(mu=-1)
    with pytest.raises(ValueError):
        RunConfig(theta=2)
    assert RunConfig().replace(mu=1.0).mu == 1.0


def test_hunter_on_affine_stops_after_one_fit():
    tr = extrema_hunter(lambda x: 3 * x - 1, 0, 1, RunConfig(n_points=500, e_max_total=500))
    assert tr.n_evaluations == 11 and tr.iterations == 1


def test_hunter_finds_bowl_vertex():
    n = 1000
    grid = build_grid(-2, 5, n)
    vertex = 1.2345
    f = lambda x: (x - vertex) ** 2  # noqa: E731
    tr = extrema_hunter(f, -2, 5, RunConfig(n_points=n, e_max_total=n))
    dense_best = int(np.argmin([f(p) for p in grid.points()[:, 0]])) + 1
    assert dense_best not in initial_sample_indices(n, 11)
    assert abs(tr.best.index - dense_best) <= 2
    assert tr.n_evaluations <= 11 + 6


def test_hunter_rastrigin():
    fn = get_benchmark("rastrigin")
    tr = extrema_hunter(fn, -3, 3, RunConfig(n_points=1000, e_max_total=1000))
    assert abs(tr.n_evaluations - 52) <= 3
    assert abs(tr.best.x[0]) <= 0.01 and tr.best.value <= 0.005


def test_hunter_respects_cap():
    fn = get_benchmark("rastrigin")
    tr = extrema_hunter(fn, -3, 3, RunConfig(n_points=1000, e_max_total=20))
    assert tr.n_evaluations == 20


@pytest.mark.parametrize("driver", [linewalker_full, linewalker_pure])
def test_budget_of_initial_design_only(driver):
    tr = driver(get_benchmark("shekel"), 0, 9, RunConfig(e_max_total=11))
    assert tr.n_evaluations == 11 and tr.iterations == 0
    assert {e.reason for e in tr.evaluations} == {"initial"}


def _battery(seed):
    rng = np.random.default_rng(seed)
    amp = rng.normal(size=4)
    freq = rng.uniform(0.5, 12, size=4)
    phase = rng.uniform(0, 6, size=4)
    return lambda x: float(np.sum(amp * np.sin(freq * x + phase)) + 0.1 * x * x)


@pytest.mark.parametrize("driver", [linewalker_full, linewalker_pure])
@pytest.mark.parametrize("seed", range(6))
def test_budget_exact_and_no_resample(driver, seed):
    for budget in (20, 37):
        tr = driver(_battery(seed), -3, 4, RunConfig(e_max_total=budget, n_points=2000))
        idx = tr.indices()
        assert len(idx) == budget == len(set(idx))
        values = [v for _, v in tr.incumbent_history]
        assert all(b <= a for a, b in zip(values, values[1:]))
        assert all(e.reason in REASONS for e in tr.evaluations)
        assert tr.final_fit.n_samples == budget


def test_several_samples_per_iteration():
    tr = linewalker_full(_battery(1), -3, 4, RunConfig(e_max_total=40, e_max_itr=3, n_points=2000))
    assert tr.n_evaluations == 40 == len(set(tr.indices()))


def test_full_samples_every_point_when_budget_equals_grid():
    fn = get_benchmark("shekel")
    tr = linewalker_full(fn, 0, 9, RunConfig(e_max_total=50, n_points=50))
    assert sorted(tr.indices()) == list(range(1, 51))
    grid_min = min(fn.evaluate(float(x)) for x in build_grid(0, 9, 50).points()[:, 0])
    assert tr.best.value == grid_min


def test_pure_explores_when_extrema_settle():
    fn = get_benchmark("damped_oscillator")
    tr = linewalker_pure(fn, fn.lower, fn.upper, RunConfig(e_max_total=50))
    tail = [e.reason for e in tr.evaluations[-15:]]
    assert tail.count("exploration") > len(tail) // 2


def test_full_uses_bend_and_aspiration_tags():
    fn = get_benchmark("shekel")
    tr = linewalker_full(fn, 0, 9, RunConfig(e_max_total=30))
    reasons = {e.reason for e in tr.evaluations}
    assert {"initial", "exploration", "bend", "aspiration1"} <= reasons


def test_deterministic():
    fn = get_benchmark("michal")
    a = linewalker_full(fn, fn.lower, fn.upper, RunConfig(e_max_total=40))
    b = linewalker_full(fn, fn.lower, fn.upper, RunConfig(e_max_total=40))
    assert a.evaluations == b.evaluations
    np.testing.assert_array_equal(a.final_fit.values, b.final_fit.values)


def test_vector_objective_on_segment():
    tr = linewalker_full(plateau_2d, [-2, -7], [4, 5], RunConfig(e_max_total=20))
    assert tr.n_evaluations == 20
    assert tr.best.value == 1.0
    assert len(tr.best.x) == 2


def test_snapshots_one_per_iteration():
    tr = linewalker_pure(get_benchmark("rastrigin"), -3, 3, RunConfig(e_max_total=30, n_points=1000, snapshots=True))
    assert len(tr.fit_snapshots) == tr.iterations
    assert [f.iteration for f in tr.fit_snapshots] == list(range(1, tr.iterations + 1))


@pytest.mark.parametrize("bad", [math.nan, "raise"])
def test_failure_keeps_partial_trace(bad):
    calls = []

    def f(x):
        calls.append(x)
        if len(calls) == 14:
            if bad == "raise":
                raise RuntimeError("simulator crashed")
            return bad
        return x * x

    with pytest.raises(RunError) as info:
        linewalker_full(f, -1, 1, RunConfig(e_max_total=30, n_points=500))
    assert info.value.trace.n_evaluations == 13
