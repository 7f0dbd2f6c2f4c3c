"""Top-level search loops and run traces.

Three drivers share the same surrogate and bookkeeping:

* `extrema_hunter` samples every new surrogate extremum each iteration until
  the fit stops changing;
* `linewalker_pure` takes the lowest new extremum per iteration (or explores
  the widest unsampled gap) until the evaluation budget is spent;
* `linewalker_full` adds tabu filtering, aspiration and around-the-bend moves.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import asdict, dataclass, field

import numpy as np

from .extrema import default_delta, detect_extrema
from .grid import Grid, build_grid
from .sampling import find_largest_unexplored_interval, sample_around_the_bend, sort_candidates
from .surrogate import Fit, SmoothingSystem, fit_change_error, fit_surrogate
from .tabu import TabuState, find_non_tabu_points, manage_tabu_struct

log = logging.getLogger(__name__)

REASONS = ("initial", "extremum", "aspiration1", "aspiration2", "exploration", "bend")


@dataclass(frozen=True)
class RunConfig:
    e_max_total: int = 50
    e_max_itr: int = 1
    n_points: int = 5000
    alpha: float = 0.0
    mu: float = 0.01
    e_min: float = 0.001
    initial_sample_count: int = 11
    theta: float = 0.01
    nu_min: float = 0.10
    nu_max: float = 0.25
    tenure_init: int = 5
    aspiration_radius: str = "long"
    snapshots: bool = False

    def __post_init__(self):
        if self.e_max_total < self.initial_sample_count:
            raise ValueError("e_max_total must be >= initial_sample_count")
        if self.e_max_itr < 1:
            raise ValueError("e_max_itr must be >= 1")
        if self.n_points < max(3, self.initial_sample_count):
            raise ValueError("n_points too small for the initial design")
        if self.alpha < 0 or self.mu < 0:
            raise ValueError("alpha and mu must be nonnegative")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must lie in [0, 1]")
        if self.aspiration_radius not in ("short", "long"):
            raise ValueError("aspiration_radius must be 'short' or 'long'")

    def replace(self, **changes) -> RunConfig:
        return RunConfig(**{**asdict(self), **changes})


@dataclass(frozen=True)
class Evaluation:
    index: int
    iteration: int
    value: float
    reason: str
    t: float
    x: tuple[float, ...]


@dataclass
class RunTrace:
    algorithm: str
    config: RunConfig
    grid: Grid
    evaluations: list[Evaluation] = field(default_factory=list)
    incumbent_history: list[tuple[int, float]] = field(default_factory=list)
    fit_snapshots: list[Fit] = field(default_factory=list)
    initial_fit: Fit | None = None
    final_fit: Fit | None = None
    iterations: int = 0

    @property
    def samples(self) -> dict[int, float]:
        return {e.index: e.value for e in self.evaluations}

    @property
    def n_evaluations(self) -> int:
        return len(self.evaluations)

    @property
    def best(self) -> Evaluation:
        """Evaluation with the lowest true value (earliest on ties)."""
        return min(self.evaluations, key=lambda e: e.value)

    def indices(self) -> list[int]:
        return [e.index for e in self.evaluations]


class RunError(RuntimeError):
    """An objective evaluation failed; `trace` holds everything up to it."""

    def __init__(self, message: str, trace: RunTrace):
        super().__init__(message)
        self.trace = trace


def initial_sample_indices(n_points: int, count: int) -> list[int]:
    """`count` evenly spread grid indices including both endpoints."""
    if count < 2:
        raise ValueError("need at least 2 initial samples")
    if n_points < count:
        raise ValueError("n_points must be >= count")
    idx = [math.floor(1 + (n_points - 1) * (i - 1) / (count - 1) + 0.5) for i in range(1, count + 1)]
    if len(set(idx)) != len(idx):
        raise ValueError(f"initial design collides on a grid of {n_points} points")
    return idx


class _Run:
    """Evaluation bookkeeping shared by the drivers."""

    def __init__(self, algorithm: str, objective: Callable, x_start, x_end, config: RunConfig):
        self.objective = objective
        self.config = config
        self.grid = build_grid(x_start, x_end, config.n_points)
        self.system = SmoothingSystem(config.n_points, config.alpha, config.mu)
        self.samples: dict[int, float] = {}
        self.trace = RunTrace(algorithm, config, self.grid)
        self.best = math.inf

    def evaluate(self, i: int, iteration: int, reason: str) -> float | None:
        """Evaluate grid index `i`; return the incumbent improvement, if any."""
        if i in self.samples:
            raise AssertionError(f"grid index {i} evaluated twice")
        x = self.grid.point(i)
        try:
            value = float(self.objective(x[0] if self.grid.dim == 1 else x))
        except Exception as exc:
            raise RunError(f"evaluation at grid index {i} failed: {exc}", self.trace) from exc
        if not math.isfinite(value):
            raise RunError(f"objective returned {value} at grid index {i}", self.trace)
        self.system.add_sample(i, value)
        self.samples[i] = value
        self.trace.evaluations.append(
            Evaluation(i, iteration, value, reason, self.grid.param(i), tuple(x.tolist()))
        )
        improvement = None
        if value < self.best:
            if math.isfinite(self.best):
                improvement = self.best - value
            self.best = value
        self.trace.incumbent_history.append((len(self.samples), self.best))
        return improvement

    def initialize(self) -> None:
        for i in initial_sample_indices(self.config.n_points, self.config.initial_sample_count):
            self.evaluate(i, 0, "initial")
        self.trace.initial_fit = fit_surrogate(self.system, 0)

    def fit(self, iteration: int) -> Fit:
        fit = fit_surrogate(self.system, iteration)
        if self.config.snapshots:
            self.trace.fit_snapshots.append(fit)
        return fit

    def finish(self, iteration: int) -> RunTrace:
        self.trace.iterations = iteration
        self.trace.final_fit = fit_surrogate(self.system, iteration)
        return self.trace

    def new_extrema(self, fit: Fit) -> set[int]:
        delta = default_delta(fit)
        return set(detect_extrema(fit, delta, delta).all()) - self.samples.keys()

    @property
    def budget_left(self) -> int:
        return min(self.config.e_max_total, self.config.n_points) - len(self.samples)


def extrema_hunter(objective: Callable, x_start, x_end, config: RunConfig = RunConfig()) -> RunTrace:
    """Sample all new surrogate extrema until the fit settles.

    Stops when the mean absolute change between consecutive fits drops to
    ``config.e_min``, when no unsampled extremum remains, or when
    ``config.e_max_total`` evaluations have been spent.
    """
    run = _Run("hunter", objective, x_start, x_end, config)
    run.initialize()
    previous = np.zeros(config.n_points)
    change = config.e_min + 1
    itr = 0
    while change > config.e_min and run.budget_left > 0:
        itr += 1
        fit = run.fit(itr)
        new = run.new_extrema(fit)
        if not new:
            break
        for i in sort_candidates(new, fit)[: run.budget_left]:
            run.evaluate(i, itr, "extremum")
        change = fit_change_error(previous, fit)
        previous = fit.values
        log.debug("hunter itr %d: %d samples, change %.3g", itr, len(run.samples), change)
    return run.finish(itr)


def linewalker_pure(objective: Callable, x_start, x_end, config: RunConfig = RunConfig()) -> RunTrace:
    """Budget-limited extrema hunting with gap bisection as the only exploration."""
    run = _Run("pure", objective, x_start, x_end, config)
    run.initialize()
    itr = 0
    while run.budget_left > 0:
        itr += 1
        fit = run.fit(itr)
        new = run.new_extrema(fit)
        reason = "extremum"
        if not new:
            new = {find_largest_unexplored_interval(run.samples, fit)}
            reason = "exploration"
        for i in sort_candidates(new, fit)[: min(config.e_max_itr, run.budget_left)]:
            run.evaluate(i, itr, reason)
    return run.finish(itr)


def linewalker_full(objective: Callable, x_start, x_end, config: RunConfig = RunConfig()) -> RunTrace:
    """Budget-limited extrema hunting with tabu memory and diversification."""
    run = _Run("full", objective, x_start, x_end, config)
    run.initialize()
    state = TabuState(
        config.n_points,
        config.e_max_total,
        tenure=config.tenure_init,
        nu_min=config.nu_min,
        nu_max=config.nu_max,
        aspiration_radius=config.aspiration_radius,
    )
    for i in run.samples:
        state.record_sample(i, 0)

    itr = 0
    while run.budget_left > 0:
        itr += 1
        state.current_iter = itr
        fit = run.fit(itr)
        new = run.new_extrema(fit)
        manage_tabu_struct(state, fit, run.samples)
        nontabu = find_non_tabu_points(new, fit, run.samples, state)
        candidates = dict(nontabu)
        if not candidates:
            candidates = {find_largest_unexplored_interval(run.samples, fit): "exploration"}

        for j in sort_candidates(candidates, fit)[: min(config.e_max_itr, run.budget_left)]:
            reason = candidates[j]
            i = j
            if j in nontabu:
                i = sample_around_the_bend(j, fit, run.samples, config.theta)
                if i in run.samples:
                    # only reachable with several samples per iteration
                    if j in run.samples:
                        continue
                    i = j
                if i != j and reason == "extremum":
                    reason = "bend"
            elif i in run.samples:
                continue
            improvement = run.evaluate(i, itr, reason)
            state.record_sample(i, itr, improvement)
    return run.finish(itr)


ALGORITHMS = {
    "full": linewalker_full,
    "pure": linewalker_pure,
    "hunter": extrema_hunter,
}
