"""Solve criterion, total absolute scaled error (TASE) and aggregates."""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Sequence

import numpy as np

from .drivers import RunConfig, RunTrace, initial_sample_indices
from .grid import Grid
from .objectives import BenchmarkFunction
from .surrogate import Fit, SmoothingSystem, fit_surrogate

SOLVE_TOLERANCE = 0.01


class DegenerateReferenceError(ZeroDivisionError):
    """The reference fit reproduces the truth exactly, so TASE is undefined."""


def solve_tolerance(f_star: float) -> float:
    return SOLVE_TOLERANCE * max(1.0, abs(f_star))


def is_solved(trace: RunTrace, fn: BenchmarkFunction) -> bool:
    """Whether the final fit's minimum, or the fit at the best sample, is near f*.

    Solved when either ``min(fit)`` or ``fit`` at the best evaluated sample is
    within ``0.01 * max(1, |f*|)`` of the known optimum.
    """
    fit = trace.final_fit
    if fit is None or not trace.evaluations:
        raise ValueError("trace has no final fit")
    tol = solve_tolerance(fn.f_star)
    at_best = fit.at(trace.best.index)
    return abs(fit.f_min - fn.f_star) <= tol or abs(at_best - fn.f_star) <= tol


def truth_vector(fn, grid: Grid) -> np.ndarray:
    """True objective at every grid point.

    `fn` is a `BenchmarkFunction` (evaluated on the scalar coordinate) or any
    callable accepting a D-vector.
    """
    pts = grid.points()
    if isinstance(fn, BenchmarkFunction):
        return fn.evaluate_many(pts[:, 0])
    return np.array([float(fn(p[0] if grid.dim == 1 else p)) for p in pts])


def reference_fit(truth: np.ndarray, config: RunConfig) -> Fit:
    """Fit built from the initial design only."""
    truth = np.asarray(truth, dtype=float)
    system = SmoothingSystem(truth.shape[0], config.alpha, config.mu)
    for i in initial_sample_indices(truth.shape[0], config.initial_sample_count):
        system.add_sample(i, float(truth[i - 1]))
    return fit_surrogate(system, 0)


def _vals(fit) -> np.ndarray:
    return fit.values if isinstance(fit, Fit) else np.asarray(fit, dtype=float)


def tase(fit_m, fit_ref, truth) -> float:
    """Total absolute error of `fit_m`, scaled by that of `fit_ref`.

    Raises
    ------
    DegenerateReferenceError
        If the reference fit matches the truth exactly.
    """
    m, ref, t = _vals(fit_m), _vals(fit_ref), np.asarray(truth, dtype=float)
    if not m.shape == ref.shape == t.shape:
        raise ValueError("fits and truth must have equal lengths")
    denom = float(np.abs(ref - t).sum())
    if denom == 0.0:
        raise DegenerateReferenceError("reference fit has zero error")
    return float(np.abs(m - t).sum()) / denom


def mean_tase(values: Sequence[float]) -> float:
    if len(values) == 0:
        raise ValueError("no TASE values")
    return float(np.mean(values))


def fraction_solved_curve(
    results: Iterable[tuple[str, int, bool]],
) -> dict[str, dict[int, float]]:
    """Fraction of solved instances per algorithm and budget.

    `results` holds ``(algorithm, budget, solved)`` triples, one per function.
    """
    counts: dict[str, dict[int, list[int]]] = defaultdict(lambda: defaultdict(lambda: [0, 0]))
    for algo, budget, solved in results:
        c = counts[algo][budget]
        c[0] += bool(solved)
        c[1] += 1
    return {
        algo: {b: s / n for b, (s, n) in sorted(per.items())}
        for algo, per in sorted(counts.items())
    }
