"""Short/long-term tabu memory and aspiration criteria.

Every sampled index j forbids two neighbourhoods around itself:

* short-term: ``|i - j| <= d_short`` while ``itr - iter_found[j] <= tenure``;
* long-term: ``|i - j| <= d_long[j]`` forever, where ``d_long[j]`` shrinks
  as samples accumulate and as ``fit[j]`` approaches the extremes of the fit.
"""

from __future__ import annotations

import bisect
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .extrema import count_interior_extrema, default_delta
from .surrogate import Fit

# (max samples, fraction of fit range, max sampled neighbours) for aspiration 1
ASPIRATION1_FEW = (30, 0.01, 1)
ASPIRATION1_MANY = (0.10, 2)
ASPIRATION2_MIN_IMPROVEMENT = 0.01


@dataclass
class TabuState:
    n_points: int
    e_max_total: int
    tenure: int = 5
    nu_min: float = 0.10
    nu_max: float = 0.25
    # radius used to count sampled neighbours in aspiration 1: "short" uses
    # d_short, "long" the candidate's own long-term radius
    aspiration_radius: str = "long"
    current_iter: int = 0
    iter_found: dict[int, int] = field(default_factory=dict)
    d_long: dict[int, int] = field(default_factory=dict)
    # (index, iteration, improvement) of the last sample that lowered the incumbent
    last_new_min: tuple[int, int, float] | None = None

    def __post_init__(self):
        if self.tenure < 1:
            raise ValueError("tenure must be >= 1")
        if not 0.0 <= self.nu_min <= self.nu_max <= 1.0:
            raise ValueError("need 0 <= nu_min <= nu_max <= 1")
        if self.aspiration_radius not in ("short", "long"):
            raise ValueError("aspiration_radius must be 'short' or 'long'")

    @property
    def d_short(self) -> int:
        return math.ceil(self.n_points / (2 * self.e_max_total))

    def record_sample(self, i: int, iteration: int, improvement: float | None = None) -> None:
        """Register an evaluation; `improvement` > 0 if it lowered the incumbent."""
        self.iter_found[i] = iteration
        if improvement is not None and improvement > 0:
            self.last_new_min = (i, iteration, improvement)

    def nu(self, value: float, fit: Fit) -> float:
        return self.nu_min + kappa(value, fit) * (self.nu_max - self.nu_min)

    def long_radius(self, value: float, fit: Fit, n_samples: int) -> int:
        return math.ceil(self.nu(value, fit) * self.n_points / n_samples)


def kappa(value: float, fit: Fit) -> float:
    """0 at the fit's extremes, 1 halfway between them; 0 on a flat fit."""
    mid = fit.mid
    if mid <= 0:
        return 0.0
    k = min(fit.f_max - value, value - fit.f_min) / mid
    return min(max(k, 0.0), 1.0)


def manage_tabu_struct(state: TabuState, fit: Fit, samples: Iterable[int]) -> TabuState:
    """Adapt the tenure to the number of extrema and refresh long-term radii."""
    s = list(samples)
    if not s:
        raise ValueError("no samples")
    delta = default_delta(fit)
    eta = count_interior_extrema(fit, delta, delta)
    if eta > state.tenure:
        state.tenure += 1
    elif eta < state.tenure - 1 and state.tenure > 1:
        state.tenure -= 1
    state.d_long = {j: state.long_radius(fit.at(j), fit, len(s)) for j in s}
    return state


def is_short_term_tabu(state: TabuState, i: int) -> bool:
    d = state.d_short
    itr = state.current_iter
    return any(
        itr - found <= state.tenure and abs(i - j) <= d for j, found in state.iter_found.items()
    )


def is_long_term_tabu(state: TabuState, i: int) -> bool:
    return any(abs(i - j) <= r for j, r in state.d_long.items())


def aspiration_1(candidate: int, fit: Fit, samples: Mapping[int, float], state: TabuState) -> bool:
    """Potential minimizer with few sampled neighbours."""
    n = len(samples)
    if n <= ASPIRATION1_FEW[0]:
        frac, max_nbrs = ASPIRATION1_FEW[1:]
    else:
        frac, max_nbrs = ASPIRATION1_MANY
    f_best = min(samples.values())
    if not fit.at(candidate) <= f_best + frac * fit.range:
        return False
    if state.aspiration_radius == "short":
        radius = state.d_short
    else:
        radius = state.long_radius(fit.at(candidate), fit, n)
    nbrs = sum(1 for j in samples if abs(candidate - j) <= radius)
    return nbrs <= max_nbrs


def aspiration_2(candidate: int, fit: Fit, samples: Mapping[int, float], state: TabuState) -> bool:
    """Near, but not too close to, a minimum found in the previous iteration."""
    if state.last_new_min is None:
        return False
    x_hat, found, improvement = state.last_new_min
    if found != state.current_iter - 1:
        return False
    if improvement < ASPIRATION2_MIN_IMPROVEMENT * fit.range:
        return False
    s = sorted(samples)
    pos = bisect.bisect_left(s, candidate)
    nearest = set()
    if pos > 0:
        nearest.add(s[pos - 1])
    if pos < len(s) and s[pos] != candidate:
        nearest.add(s[pos])
    if x_hat not in nearest:
        return False
    radius = state.d_long.get(x_hat)
    if radius is None:
        radius = state.long_radius(fit.at(x_hat), fit, len(s))
    return abs(candidate - x_hat) > radius


def find_non_tabu_points(
    candidates: Iterable[int], fit: Fit, samples: Mapping[int, float], state: TabuState
) -> dict[int, str]:
    """Filter candidates through the tabu lists and aspiration criteria.

    Returns a mapping from each admitted candidate to the reason it was
    admitted: ``"extremum"`` (not tabu), ``"aspiration1"`` or ``"aspiration2"``.
    Aspiration 1 overrides both lists, aspiration 2 only the short-term one.
    """
    out: dict[int, str] = {}
    for c in sorted(candidates):
        if c in samples:
            continue
        short = is_short_term_tabu(state, c)
        long_ = is_long_term_tabu(state, c)
        if not (short or long_):
            out[c] = "extremum"
        elif aspiration_1(c, fit, samples, state):
            out[c] = "aspiration1"
        elif not long_ and aspiration_2(c, fit, samples, state):
            out[c] = "aspiration2"
    return out
