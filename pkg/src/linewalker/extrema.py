"""Strict interior extrema of a surrogate, with objective-value tolerances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .surrogate import Fit

# delta_min = delta_max = range * DELTA_FRACTION, recomputed each iteration
DELTA_FRACTION = 1e-6


@dataclass(frozen=True)
class ExtremaSets:
    maxima: frozenset[int]
    minima: frozenset[int]

    @property
    def n_maxima(self) -> int:
        return len(self.maxima)

    @property
    def n_minima(self) -> int:
        return len(self.minima)

    @property
    def count(self) -> int:
        return len(self.maxima) + len(self.minima)

    def all(self) -> frozenset[int]:
        return self.maxima | self.minima


def _values(fit) -> np.ndarray:
    return fit.values if isinstance(fit, Fit) else np.asarray(fit, dtype=float)


def default_delta(fit) -> float:
    v = _values(fit)
    return float(v.max() - v.min()) * DELTA_FRACTION


def detect_extrema(fit, delta_min: float, delta_max: float) -> ExtremaSets:
    """Interior indices strictly above (below) both neighbours by more than delta.

    Returned indices are 1-based and lie in 2..N-1.
    """
    if delta_min < 0 or delta_max < 0:
        raise ValueError("tolerances must be nonnegative")
    v = _values(fit)
    if v.shape[0] < 3:
        raise ValueError("fit needs at least 3 points")
    left, mid, right = v[:-2], v[1:-1], v[2:]
    is_max = mid > np.maximum(left, right) + delta_max
    is_min = mid < np.minimum(left, right) - delta_min
    # +2: offset of `mid` (1) plus 1-based indexing (1)
    maxima = frozenset((np.flatnonzero(is_max) + 2).tolist())
    minima = frozenset((np.flatnonzero(is_min) + 2).tolist())
    return ExtremaSets(maxima, minima)


def count_interior_extrema(fit, delta_min: float, delta_max: float) -> int:
    return detect_extrema(fit, delta_min, delta_max).count
