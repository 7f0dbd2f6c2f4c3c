"""Candidate selection: exploration, local "around the bend" moves, ordering."""

from __future__ import annotations

import bisect
import math
from collections.abc import Iterable

import numpy as np

from .surrogate import Fit


class NoUnexploredIntervalError(ValueError):
    """Every grid index has already been sampled."""


def _round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def find_largest_unexplored_interval(samples: Iterable[int], fit: Fit) -> int:
    """Bisect the widest gap between consecutive samples.

    Ties on width go to the gap whose surrogate minimum (endpoints included)
    is lowest, then to the leftmost gap.
    """
    s = sorted(samples)
    n = len(fit)
    if not s or s[0] != 1 or s[-1] != n:
        raise ValueError("both endpoints must be sampled before exploring")
    gaps = np.diff(s)
    widest = int(gaps.max()) if gaps.size else 0
    if widest < 2:
        raise NoUnexploredIntervalError("no unexplored interval left")
    v = fit.values
    best_k, best_val = None, math.inf
    for pos in np.flatnonzero(gaps == widest):
        left, right = s[pos], s[pos + 1]
        low = float(v[left - 1 : right].min())
        if low < best_val:
            best_k, best_val = left, low
    return best_k + widest // 2


def nearest_sampled(j: int, sorted_samples: list[int]) -> tuple[int, int]:
    """Closest sampled indices strictly left and right of `j`."""
    pos = bisect.bisect_left(sorted_samples, j)
    if pos < len(sorted_samples) and sorted_samples[pos] == j:
        raise ValueError(f"index {j} is already sampled")
    if pos == 0 or pos == len(sorted_samples):
        raise ValueError(f"index {j} has no sampled neighbour on both sides")
    return sorted_samples[pos - 1], sorted_samples[pos]


def sample_around_the_bend(j: int, fit: Fit, samples: Iterable[int], theta: float) -> int:
    """Move candidate `j` toward the wider side of its sampling gap.

    Walks from `j` toward the midpoint of the gap and returns the farthest
    index whose surrogate value stays within ``theta * range`` of ``fit[j]``.
    """
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    left, right = nearest_sampled(j, sorted(samples))
    middle = left + _round_half_away((right - left) / 2)
    v = fit.values
    band = theta * fit.range
    fj = v[j - 1]
    if right - j >= j - left:
        window = v[j - 1 : middle]  # indices j..middle
        ok = np.flatnonzero(np.abs(window - fj) <= band)
        return j + int(ok[-1])
    window = v[middle - 1 : j]  # indices middle..j
    ok = np.flatnonzero(np.abs(window - fj) <= band)
    return middle + int(ok[0])


def sort_candidates(candidates: Iterable[int], fit: Fit) -> list[int]:
    """Ascending by surrogate value, ties by index."""
    v = fit.values
    return sorted(candidates, key=lambda i: (v[i - 1], i))
