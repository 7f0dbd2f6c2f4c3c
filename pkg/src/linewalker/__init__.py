"""One-dimensional black-box optimization with a regularized grid surrogate."""

from .drivers import (
    ALGORITHMS,
    Evaluation,
    RunConfig,
    RunError,
    RunTrace,
    extrema_hunter,
    initial_sample_indices,
    linewalker_full,
    linewalker_pure,
)
from .extrema import ExtremaSets, detect_extrema
from .grid import Grid, build_grid
from .metrics import is_solved, mean_tase, tase
from .objectives import REGISTRY, BenchmarkFunction, LineRestriction, eval_benchmark, get_benchmark
from .oracle import ExternalOracle, OracleError
from .surrogate import Fit, SmoothingSystem, fit_surrogate, solve_pentadiagonal

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BenchmarkFunction",
    "Evaluation",
    "ExternalOracle",
    "ExtremaSets",
    "Fit",
    "Grid",
    "LineRestriction",
    "OracleError",
    "REGISTRY",
    "RunConfig",
    "RunError",
    "RunTrace",
    "SmoothingSystem",
    "build_grid",
    "detect_extrema",
    "eval_benchmark",
    "extrema_hunter",
    "fit_surrogate",
    "get_benchmark",
    "initial_sample_indices",
    "is_solved",
    "linewalker_full",
    "linewalker_pure",
    "mean_tase",
    "solve_pentadiagonal",
    "tase",
]
