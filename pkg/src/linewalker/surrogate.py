"""Regularized least-squares surrogate on a grid.

The surrogate minimizes

    sum_i s_i (f_i - y_i)^2 + alpha * ||D1 f||^2 + mu * ||D2 f||^2

with D1, D2 the first/second difference operators. Its stationarity
condition is the symmetric pentadiagonal system ``(A + diag(s)) f = diag(s) y``
with ``A = alpha D1'D1 + mu D2'D2``, which is solved here by a banded LDL'
factorization in O(N).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class SingularSystemError(ValueError):
    """Too few samples to pin down the nullspace of the smoothing matrix."""


class FactorizationError(ArithmeticError):
    """The banded factorization met a non-positive pivot."""


# relative to the largest diagonal entry
PIVOT_TOL = 1e-13


def build_smoothing_matrix(n: int, alpha: float, mu: float) -> np.ndarray:
    """Return the banded storage of ``alpha D1'D1 + mu D2'D2``.

    The result has shape (3, n): row 0 is the main diagonal, row 1 the first
    super-diagonal (last entry unused) and row 2 the second super-diagonal
    (last two entries unused).
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if alpha < 0 or mu < 0:
        raise ValueError("alpha and mu must be nonnegative")
    bands = np.zeros((3, n))
    diag, off1, off2 = bands

    # D1 rows (-1, 1) on columns (r, r+1)
    diag[:-1] += alpha
    diag[1:] += alpha
    off1[:-1] -= alpha

    # D2 rows (1, -2, 1) on columns (r, r+1, r+2)
    diag[:-2] += mu
    diag[1:-1] += 4.0 * mu
    diag[2:] += mu
    off1[:-2] -= 2.0 * mu
    off1[1:-1] -= 2.0 * mu
    off2[:-2] += mu
    return bands


def banded_to_dense(bands: np.ndarray) -> np.ndarray:
    n = bands.shape[1]
    out = np.diag(bands[0])
    out += np.diag(bands[1, : n - 1], 1) + np.diag(bands[1, : n - 1], -1)
    out += np.diag(bands[2, : n - 2], 2) + np.diag(bands[2, : n - 2], -2)
    return out


def solve_pentadiagonal(bands: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve a symmetric positive definite pentadiagonal system by LDL'.

    Parameters
    ----------
    bands : numpy.ndarray, shape (3, n)
        Diagonal, first and second super-diagonals (see `build_smoothing_matrix`).
    rhs : numpy.ndarray, shape (n,)

    Raises
    ------
    FactorizationError
        If a pivot falls below ``PIVOT_TOL`` times the largest diagonal entry.
    """
    n = bands.shape[1]
    d = bands[0].tolist()
    e = bands[1].tolist()
    f = bands[2].tolist()
    b = np.asarray(rhs, dtype=float).tolist()
    tol = PIVOT_TOL * max(max(abs(v) for v in d), 1e-300)

    piv = [0.0] * n
    l1 = [0.0] * n  # L[i+1, i]
    l2 = [0.0] * n  # L[i+2, i]
    z = [0.0] * n

    # factorization fused with the forward substitution
    p_prev2 = p_prev1 = 0.0
    l1_prev2 = l1_prev1 = 0.0
    l2_prev2 = l2_prev1 = 0.0
    z_prev2 = z_prev1 = 0.0
    for i in range(n):
        p = d[i] - l1_prev1 * l1_prev1 * p_prev1 - l2_prev2 * l2_prev2 * p_prev2
        if not p > tol:
            raise FactorizationError(f"non-positive pivot {p:.3e} at row {i + 1}")
        c1 = (e[i] - l2_prev1 * p_prev1 * l1_prev1) / p if i < n - 1 else 0.0
        c2 = f[i] / p if i < n - 2 else 0.0
        zi = b[i] - l1_prev1 * z_prev1 - l2_prev2 * z_prev2
        piv[i], l1[i], l2[i], z[i] = p, c1, c2, zi
        p_prev2, p_prev1 = p_prev1, p
        l1_prev2, l1_prev1 = l1_prev1, c1
        l2_prev2, l2_prev1 = l2_prev1, c2
        z_prev2, z_prev1 = z_prev1, zi

    x = [0.0] * n
    x1 = x2 = 0.0
    for i in range(n - 1, -1, -1):
        xi = z[i] / piv[i] - l1[i] * x1 - l2[i] * x2
        x[i] = xi
        x2, x1 = x1, xi
    return np.array(x)


@dataclass(frozen=True)
class Fit:
    """A surrogate vector together with the iteration that produced it."""

    values: np.ndarray
    iteration: int = 0
    n_samples: int = 0

    def __post_init__(self):
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return self.values.shape[0]

    def at(self, i: int) -> float:
        """Surrogate value at 1-based grid index `i`."""
        return float(self.values[i - 1])

    @property
    def f_min(self) -> float:
        return float(self.values.min())

    @property
    def f_max(self) -> float:
        return float(self.values.max())

    @property
    def range(self) -> float:
        return self.f_max - self.f_min

    @property
    def mid(self) -> float:
        return 0.5 * self.range

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.values)) + 1

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.values)) + 1


@dataclass
class SmoothingSystem:
    """Smoothing matrix plus the current sample mask and sampled values.

    Unsampled entries of `values` stay 0 and are never read.
    """

    n: int
    alpha: float
    mu: float
    bands: np.ndarray = field(init=False, repr=False)
    mask: np.ndarray = field(init=False, repr=False)
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.bands = build_smoothing_matrix(self.n, self.alpha, self.mu)
        self.mask = np.zeros(self.n, dtype=bool)
        self.values = np.zeros(self.n)

    def add_sample(self, i: int, value: float) -> None:
        if self.mask[i - 1]:
            raise ValueError(f"grid index {i} already sampled")
        self.mask[i - 1] = True
        self.values[i - 1] = value

    @property
    def n_samples(self) -> int:
        return int(self.mask.sum())

    def lhs(self) -> np.ndarray:
        """Banded storage of ``A + diag(s)``."""
        out = self.bands.copy()
        out[0] += self.mask
        return out

    def rhs(self) -> np.ndarray:
        return np.where(self.mask, self.values, 0.0)


def fit_surrogate(system: SmoothingSystem, iteration: int = 0) -> Fit:
    """Solve ``(A + diag(s)) f = diag(s) y`` for the surrogate `f`."""
    k = system.n_samples
    if system.alpha == 0 and system.mu == 0:
        if k < system.n:
            raise SingularSystemError("without regularization every grid point must be sampled")
    elif system.alpha == 0:
        if k < 2:
            raise SingularSystemError(f"alpha = 0 needs at least 2 samples, got {k}")
    elif k < 1:
        raise SingularSystemError("need at least 1 sample")
    trend = _sample_trend(system)
    residual = np.where(system.mask, system.values - trend, 0.0)
    values = solve_pentadiagonal(system.lhs(), residual) + trend
    return Fit(values, iteration=iteration, n_samples=k)


def _sample_trend(system: SmoothingSystem) -> np.ndarray:
    """Least-squares polynomial through the samples that `A` annihilates.

    Affine for ``alpha == 0``, constant otherwise. Since ``A @ trend == 0``,
    solving for ``f - trend`` gives the same fit, but the smooth modes of
    ``A + diag(s)`` (eigenvalues down to about ``mu * (pi / n)**4``) only see
    the residual, so affine data come back exact instead of amplified round-off.
    """
    idx = np.flatnonzero(system.mask)
    y = system.values[idx]
    if system.alpha != 0 or idx.size < 2:
        return np.full(system.n, y.mean())
    center = 0.5 * (system.n - 1)
    slope, intercept = np.polyfit(idx - center, y, 1)
    return intercept + slope * (np.arange(system.n) - center)


def fit_change_error(previous: Fit | np.ndarray, current: Fit | np.ndarray) -> float:
    """Mean absolute difference between two fits."""
    a = previous.values if isinstance(previous, Fit) else np.asarray(previous, dtype=float)
    b = current.values if isinstance(current, Fit) else np.asarray(current, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"fit lengths differ: {a.shape[0]} vs {b.shape[0]}")
    return float(np.mean(np.abs(a - b)))
