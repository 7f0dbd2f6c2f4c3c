"""Equally spaced grid on a line segment in D-space.

Grid indices are 1-based in every public function of this package; the
underlying arrays are of course 0-based, so ``values[i - 1]`` is the value
at grid index ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid:
    """N equally spaced points on the segment from `x_start` to `x_end`."""

    x_start: np.ndarray
    x_end: np.ndarray
    n_points: int

    @property
    def dim(self) -> int:
        return self.x_start.shape[0]

    def param(self, i: int) -> float:
        """Parametric coordinate t in [0, 1] of grid index `i`."""
        if not 1 <= i <= self.n_points:
            raise IndexError(f"grid index {i} outside 1..{self.n_points}")
        return (i - 1) / (self.n_points - 1)

    def point(self, i: int) -> np.ndarray:
        t = self.param(i)
        # exact endpoints, no round-off from the affine combination
        if i == 1:
            return self.x_start.copy()
        if i == self.n_points:
            return self.x_end.copy()
        return self.x_start + t * (self.x_end - self.x_start)

    def params(self) -> np.ndarray:
        # same arithmetic as `param`, so point(i) == points()[i - 1] exactly
        return np.arange(self.n_points) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        """All grid points, shape (N, D)."""
        t = self.params()[:, None]
        pts = self.x_start[None, :] + t * (self.x_end - self.x_start)[None, :]
        pts[0] = self.x_start
        pts[-1] = self.x_end
        return pts


def build_grid(x_start, x_end, n_points: int) -> Grid:
    """Build a grid of `n_points` points from `x_start` to `x_end`.

    Scalars are promoted to 1-D vectors.
    """
    a = np.atleast_1d(np.asarray(x_start, dtype=float)).copy()
    b = np.atleast_1d(np.asarray(x_end, dtype=float)).copy()
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError("x_start and x_end must be vectors of equal length")
    if int(n_points) != n_points or n_points < 3:
        raise ValueError(f"n_points must be an integer >= 3, got {n_points}")
    if np.array_equal(a, b):
        raise ValueError("x_start and x_end coincide")
    a.setflags(write=False)
    b.setflags(write=False)
    return Grid(a, b, int(n_points))
