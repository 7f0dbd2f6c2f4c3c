"""Benchmark sweep: functions x algorithms x budgets."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .artifacts import SuiteRow, TraceRecord
from .drivers import ALGORITHMS, RunConfig, RunError, RunTrace
from .grid import build_grid
from .metrics import (
    DegenerateReferenceError,
    fraction_solved_curve,
    is_solved,
    mean_tase,
    reference_fit,
    tase,
    truth_vector,
)
from .objectives import REGISTRY, get_benchmark

log = logging.getLogger(__name__)

DEFAULT_BUDGETS = (20, 30, 40, 50)
DEFAULT_ALGORITHMS = ("full", "pure")


@dataclass(frozen=True)
class Instance:
    function: str
    algorithm: str
    budget: int


@dataclass
class InstanceResult:
    row: SuiteRow
    record: TraceRecord | None


def instance_config(fn_name: str, budget: int, base: RunConfig, n_points: int | None = None) -> RunConfig:
    """Per-instance configuration.

    The grid size is `n_points` if given, else the function's own override
    (ackley), else ``base.n_points``.
    """
    n = n_points or get_benchmark(fn_name).n_points(base.n_points)
    return base.replace(e_max_total=budget, n_points=n)


@lru_cache(maxsize=64)
def _truth_and_reference(fn_name: str, n_points: int, alpha: float, mu: float, n_init: int):
    fn = get_benchmark(fn_name)
    grid = build_grid(fn.lower, fn.upper, n_points)
    truth = truth_vector(fn, grid)
    cfg = RunConfig(n_points=n_points, alpha=alpha, mu=mu, initial_sample_count=n_init,
                    e_max_total=max(n_init, 1))
    return truth, reference_fit(truth, cfg)


def evaluate_trace(trace: RunTrace, fn_name: str) -> tuple[bool, float]:
    """Solved flag and TASE of a finished benchmark run."""
    fn = get_benchmark(fn_name)
    cfg = trace.config
    truth, ref = _truth_and_reference(fn_name, cfg.n_points, cfg.alpha, cfg.mu, cfg.initial_sample_count)
    try:
        score = tase(trace.final_fit, ref, truth)
    except DegenerateReferenceError:
        score = float("inf")
    return is_solved(trace, fn), score


def run_instance(inst: Instance, base: RunConfig, n_points: int | None = None) -> InstanceResult:
    fn = get_benchmark(inst.function)
    cfg = instance_config(inst.function, inst.budget, base, n_points)
    meta = {"function": inst.function, "budget": inst.budget}
    try:
        trace = ALGORITHMS[inst.algorithm](fn, fn.lower, fn.upper, cfg)
    except RunError as exc:
        log.error("%s/%s/%d failed: %s", inst.function, inst.algorithm, inst.budget, exc)
        row = SuiteRow(inst.function, inst.algorithm, inst.budget, exc.trace.n_evaluations,
                       False, None, fn.f_star, None, str(exc))
        return InstanceResult(row, None)
    solved, score = evaluate_trace(trace, inst.function)
    row = SuiteRow(
        inst.function, inst.algorithm, inst.budget, trace.n_evaluations, solved,
        trace.best.value, fn.f_star, score if np.isfinite(score) else None,
    )
    return InstanceResult(row, TraceRecord.from_trace(trace, meta, solved, score))


def _run_instance_star(args):
    return run_instance(*args)


def build_instances(
    functions: Iterable[str] | None = None,
    algorithms: Sequence[str] = DEFAULT_ALGORITHMS,
    budgets: Sequence[int] = DEFAULT_BUDGETS,
) -> list[Instance]:
    names = list(REGISTRY) if functions is None else list(functions)
    for name in names:
        get_benchmark(name)
    for a in algorithms:
        if a not in ALGORITHMS:
            raise KeyError(f"unknown algorithm {a!r}")
    return [Instance(f, a, b) for f in names for a in algorithms for b in sorted(set(budgets))]


def run_suite(
    instances: Sequence[Instance],
    base: RunConfig = RunConfig(),
    n_points: int | None = None,
    workers: int = 1,
) -> list[InstanceResult]:
    """Run every instance; results come back in the order of `instances`."""
    jobs = [(inst, base, n_points) for inst in instances]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_instance_star, jobs, chunksize=1))
    return [run_instance(*job) for job in jobs]


def summarize(rows: Sequence[SuiteRow]) -> tuple[dict[str, dict[int, float]], dict[str, dict[int, float]]]:
    """Fraction solved and mean TASE per algorithm and budget (errored rows excluded)."""
    ok = [r for r in rows if not r.error]
    frac = fraction_solved_curve((r.algorithm, r.budget, r.solved) for r in ok)
    groups: dict[str, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in ok:
        groups[r.algorithm][r.budget].append(np.inf if r.tase is None else r.tase)
    mt = {a: {b: mean_tase(v) for b, v in sorted(per.items())} for a, per in sorted(groups.items())}
    return frac, mt


def suite_config_echo(base: RunConfig, instances: Sequence[Instance], n_points: int | None = None) -> dict:
    return {
        "base": asdict(base),
        "n_points_override": n_points,
        "functions": sorted({i.function for i in instances}),
        "algorithms": sorted({i.algorithm for i in instances}),
        "budgets": sorted({i.budget for i in instances}),
    }
