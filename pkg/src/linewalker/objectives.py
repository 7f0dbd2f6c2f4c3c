"""Twenty one-dimensional benchmark functions and line restrictions.

All functions are vectorized over numpy arrays. Two members are slices of
2-D functions: ``dejong5`` on the diagonal x1 = x2, and ``plateau`` on the
segment (-2, -7) -> (4, 5), parametrized by x1 (so x2 = 2 x1 - 3).
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BenchmarkFunction",
    "LineRestriction",
    "REGISTRY",
    "dejong5_2d",
    "eval_benchmark",
    "get_benchmark",
    "plateau_2d",
]


def _ackley(x):
    return -20.0 * np.exp(-0.2 * np.abs(x)) - np.exp(np.cos(2 * np.pi * x)) + 20.0 + np.e


def _damped_oscillator(x):
    return -np.exp(-np.abs(x)) * np.cos(2 * np.pi * np.abs(x))


_DJ_GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
_DJ_A1 = np.tile(_DJ_GRID, 5)
_DJ_A2 = np.repeat(_DJ_GRID, 5)


def dejong5_2d(x):
    """De Jong's fifth function (Shekel's foxholes), `x` of shape (..., 2)."""
    x = np.asarray(x, dtype=float)
    x1 = x[..., 0, None]
    x2 = x[..., 1, None]
    terms = 1.0 / (np.arange(1, 26) + (x1 - _DJ_A1) ** 6 + (x2 - _DJ_A2) ** 6)
    return 1.0 / (0.002 + terms.sum(axis=-1))


def _dejong5(x):
    x = np.asarray(x, dtype=float)
    return dejong5_2d(np.stack([x, x], axis=-1))


def _grlee12_step(x):
    x = np.asarray(x, dtype=float)
    low = np.sin(10 * np.pi * x**1.1) / (2 * x) + (x - 1) ** 4
    high = np.sin(10 * np.pi * x**0.75) / (2 * x) + (x - 1) ** 4
    return np.where(x < 0.71, low + 5.0, np.where(x <= 0.86, low, high + 1.0))


_LANGER_C = np.array([1.0, 2.0, 5.0, 2.0, 3.0])


def _make_langer(a):
    a = np.asarray(a, dtype=float)

    def langer(x):
        d2 = (np.asarray(x, dtype=float)[..., None] - a) ** 2
        return (_LANGER_C * np.exp(-d2 / np.pi) * np.cos(np.pi * d2)).sum(axis=-1)

    return langer


def _michal(x):
    return -np.sin(x) * np.sin(x**2 / np.pi) ** 20


def plateau_2d(x):
    x = np.asarray(x, dtype=float)
    return np.abs(np.floor(x[..., 0])) + np.abs(np.floor(x[..., 1]))


def _plateau(x):
    x = np.asarray(x, dtype=float)
    return plateau_2d(np.stack([x, 2 * x - 3], axis=-1))


def _rastrigin(x):
    return 10.0 + x**2 - 10.0 * np.cos(2 * np.pi * x)


def _triangle(x, k):
    return 2 / np.pi * np.arcsin(np.sin(k * np.pi * x))


def _sawtooth_d(x):
    x = np.asarray(x, dtype=float)
    return np.select(
        [x <= 0, x < 0.75, x <= 1, x < 3.25],
        [
            _triangle(x, 1) - np.abs(x),
            _triangle(x, 3) - np.abs(x) + 1,
            _triangle(x, 1) - 6,
            _triangle(x, 3) - np.abs(x) + 1,
        ],
        _triangle(x, 1) - np.abs(x) + 1,
    )


def _schwefel(x):
    return 418.9829 - x * np.sin(np.sqrt(np.abs(x)))


def _stybtang(x):
    return 0.5 * (x**4 - 16 * x**2 + 5 * x)


def _zakharov(x):
    return 1.5 * x**2 + 0.5 * x**4


def _schaffer2(w):
    return -0.5 - (np.sin(w**2) ** 2 - 0.5) / (1 + 0.001 * w**2) ** 2


def _easom_schaffer2a(x):
    x = np.asarray(x, dtype=float)
    w = x - 25
    easom = -2 * np.cos(w) ** 2 * np.exp(-2 * (w - np.pi) ** 2)
    v = 0.3 * x
    schaffer = _schaffer2(v) - 0.1 * np.abs(v)
    return np.where(x >= 0, easom, schaffer)


def _egg2(x):
    x = np.asarray(x, dtype=float)
    r = np.cbrt(x)
    return -(x + 47) * np.sin(np.sqrt(np.abs(x + r / 2 + 47))) - x * np.sin(
        np.sqrt(np.abs(r**2 - 47))
    )


def _holder(x):
    return -np.abs(np.sin(x) * np.cos(x) * np.exp(np.abs(1 - np.sqrt(2 * x**2) / np.pi)))


def _levy(x):
    w = 1 + (x - 1) / 4
    return np.sin(np.pi * w) ** 2 + (w - 1) ** 2 * (1 + np.sin(2 * np.pi * w) ** 2)


def _levy13(x):
    s3 = np.sin(3 * np.pi * x) ** 2
    return -s3 - (x - 1) ** 2 * (2 + s3 + np.sin(2 * np.pi * x) ** 2)


def _schaffer2a(x):
    return _schaffer2(np.asarray(x, dtype=float)) - 0.2 * np.abs(x)


_SHEKEL_C = np.array(
    [
        [4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 5.0, 8.0, 6.0, 7.0],
        [4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 3.0, 1.0, 2.0, 3.6],
        [4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 5.0, 8.0, 6.0, 7.0],
        [4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 3.0, 1.0, 2.0, 3.6],
    ]
)
_SHEKEL_BETA = 0.1 * np.array([1.0, 2.0, 2.0, 4.0, 4.0, 6.0, 3.0, 7.0, 5.0, 5.0])


def _shekel(x):
    # the scalar is compared against all four coordinates of each centre
    d = ((np.asarray(x, dtype=float)[..., None, None] - _SHEKEL_C) ** 2).sum(axis=-2)
    return -(1.0 / (d + _SHEKEL_BETA)).sum(axis=-1)


@dataclass(frozen=True)
class BenchmarkFunction:
    """A benchmark with its domain and tabulated global minimum.

    `x_star` is a point, or a half-open interval ``(lo, hi)`` for plateau.
    `n_maxima`/`n_minima` count interior extrema (None when infinite).
    """

    name: str
    func: Callable
    lower: float
    upper: float
    x_star: float | tuple[float, float]
    f_star: float
    smooth: bool = True
    grid_override: int | None = None
    n_maxima: int | None = None
    n_minima: int | None = None

    def __call__(self, x):
        t = np.asarray(x, dtype=float)
        if t.ndim == 1 and t.shape[0] == 1:
            t = t[0]
        if np.ndim(t) == 0:
            return self.evaluate(float(t))
        return self.func(t)

    def evaluate(self, t: float) -> float:
        slack = 1e-12 * max(1.0, abs(self.lower), abs(self.upper))
        if not (self.lower - slack <= t <= self.upper + slack):
            raise ValueError(f"{self.name}: {t} outside [{self.lower}, {self.upper}]")
        return float(self.func(np.float64(t)))

    def evaluate_many(self, t) -> np.ndarray:
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=float)

    def n_points(self, default: int) -> int:
        return self.grid_override or default

    @property
    def x_star_point(self) -> float:
        return self.x_star[0] if isinstance(self.x_star, tuple) else self.x_star


_FUNCTIONS = [
    BenchmarkFunction("ackley", _ackley, -17, 32, 0.0, 0.0, True, 10000, 48, 49),
    BenchmarkFunction("damped_oscillator", _damped_oscillator, -np.pi / 8, np.pi, 0.0, -1.0, True, None, 4, 3),
    BenchmarkFunction("dejong5", _dejong5, -65.536, 65.536, -31.97600, 0.99800, True, None, 6, 5),
    BenchmarkFunction("grlee12", _grlee12_step, 0.5, 2.5, 0.76879, -0.64708, False, None, 7, 6),
    BenchmarkFunction("langer", _make_langer([3, 5, 2, 1, 7]), 0, 10, 6.00295, -3.66452, True, None, 16, 16),
    BenchmarkFunction("michal", _michal, 0, 13, 8.00922, -0.98795, True, None, 7, 10),
    BenchmarkFunction("plateau", _plateau, -2, 4, (1.5, 2.0), 1.0, False, None, None, None),
    BenchmarkFunction("rastrigin", _rastrigin, -3, 3, 0.0, 0.0, True, None, 7, 6),
    BenchmarkFunction("sawtoothD", _sawtooth_d, -5, 5, 1.0, -6.0, False, None, 10, 10),
    BenchmarkFunction("schwefel", _schwefel, -500, 500, 420.96870, 1.27278e-05, True, None, 7, 7),
    BenchmarkFunction("stybtang", _stybtang, -5, 5, -2.903534, -39.16599, True, None, 2, 1),
    BenchmarkFunction("zakharov", _zakharov, -5, 10, 0.0, 0.0, True, None, 1, 0),
    BenchmarkFunction("easom_schaffer2A", _easom_schaffer2a, -10, 30, 28.14363, -2.0, True, None, 3, 4),
    BenchmarkFunction("egg2", _egg2, -600, 200, -559.35187, -518.98768, False, None, 7, 8),
    BenchmarkFunction("holder", _holder, 0, 11, 10.32006, -18.69332, False, None, 6, 7),
    BenchmarkFunction("langer2", _make_langer([5, 1, 5, 2, 8]), 3, 8, 4.02921, -3.94660, True, None, 7, 7),
    BenchmarkFunction("levy", _levy, -10, 2, 1.0, 0.0, True, None, 4, 5),
    BenchmarkFunction("levy13", _levy13, -3, 2, -2.81896, -56.48262, True, None, 14, 15),
    BenchmarkFunction("schaffer2A", _schaffer2a, -2, 3, 2.80596, -1.55304, False, None, 4, 4),
    BenchmarkFunction("shekel", _shekel, 0, 9, 4.0, -10.53626, True, None, 3, 4),
]

REGISTRY: dict[str, BenchmarkFunction] = {f.name: f for f in _FUNCTIONS}


def get_benchmark(name: str) -> BenchmarkFunction:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown benchmark {name!r}; known: {', '.join(REGISTRY)}") from None


def eval_benchmark(name: str, t: float) -> float:
    return get_benchmark(name).evaluate(t)


@dataclass(frozen=True)
class LineRestriction:
    """Restriction of a D-dimensional function to a segment, ``t`` in [0, 1]."""

    inner: Callable
    x_start: np.ndarray
    x_end: np.ndarray

    def point(self, t: float) -> np.ndarray:
        a = np.asarray(self.x_start, dtype=float)
        b = np.asarray(self.x_end, dtype=float)
        if t == 0:
            return a.copy()
        if t == 1:
            return b.copy()
        return a + t * (b - a)

    def evaluate(self, t: float) -> float:
        return float(self.inner(self.point(t)))

    __call__ = evaluate
