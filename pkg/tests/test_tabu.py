import math

import numpy as np
import pytest

from linewalker.surrogate import Fit
from linewalker.tabu import (
    TabuState,
    aspiration_1,
    aspiration_2,
    find_non_tabu_points,
    is_long_term_tabu,
    is_short_term_tabu,
    kappa,
    manage_tabu_struct,
)


def zigzag(n_extrema, n=200):
    """Fit with exactly `n_extrema` interior extrema."""
    x = np.linspace(0, n_extrema * np.pi, n)
    return Fit(np.sin(x))


def test_short_radius():
    assert TabuState(5000, 50).d_short == 50
    assert TabuState(5000, 30).d_short == 84


def test_tenure_grows_and_shrinks():
    st_ = TabuState(1000, 50)
    fit = zigzag(7, 2000)
    manage_tabu_struct(st_, fit, {1, 1000})
    assert st_.tenure == 6
    st_ = TabuState(1000, 50, tenure=5)
    manage_tabu_struct(st_, zigzag(3, 2000), {1, 1000})
    assert st_.tenure == 4
    st_ = TabuState(1000, 50, tenure=5)
    manage_tabu_struct(st_, zigzag(4, 2000), {1, 1000})
    assert st_.tenure == 5


def test_tenure_never_below_one():
    st_ = TabuState(100, 20, tenure=1)
    for _ in range(5):
        manage_tabu_struct(st_, Fit(np.linspace(0, 1, 100)), {1, 100})
    assert st_.tenure == 1


def test_kappa_and_nu():
    fit = Fit(np.array([0.0, 10.0]))
    st_ = TabuState(100, 20)
    assert st_.nu(0.0, fit) == pytest.approx(0.10)
    assert st_.nu(5.0, fit) == pytest.approx(0.25)
    assert st_.nu(10.0, fit) == pytest.approx(0.10)
    assert kappa(-1.0, fit) == 0.0 and kappa(11.0, fit) == 0.0
    assert kappa(3.0, Fit(np.zeros(4))) == 0.0


def test_long_radius_rounds_up():
    fit = Fit(np.array([0.0, 10.0]))
    st_ = TabuState(5000, 30)
    assert st_.long_radius(0.0, fit, 23) == math.ceil(0.1 * 5000 / 23)


def test_long_radii_shrink_below_short_radius():
    st_ = TabuState(5000, 50)
    fit = Fit(np.sin(np.linspace(0, 9, 5000)))
    samples = set(range(1, 5001, 200))  # 25 = E/2 samples
    manage_tabu_struct(st_, fit, samples)
    assert max(st_.d_long.values()) <= st_.d_short


def test_short_term_membership():
    st_ = TabuState(5000, 50, tenure=5)
    st_.record_sample(1000, 3)
    st_.current_iter = 4
    assert is_short_term_tabu(st_, 1000 + 50)  # boundary inclusive
    assert not is_short_term_tabu(st_, 1000 + 51)
    st_.current_iter = 8
    assert is_short_term_tabu(st_, 1010)
    st_.current_iter = 9
    assert not is_short_term_tabu(st_, 1010)


def test_initial_samples_expire_after_tenure():
    st_ = TabuState(5000, 50, tenure=5)
    st_.record_sample(501, 0)
    st_.current_iter = 5
    assert is_short_term_tabu(st_, 510)
    st_.current_iter = 6
    assert not is_short_term_tabu(st_, 510)


def test_long_term_membership():
    st_ = TabuState(5000, 50)
    st_.d_long = {100: 23}
    assert is_long_term_tabu(st_, 100)
    assert is_long_term_tabu(st_, 123)
    assert not is_long_term_tabu(st_, 124)


def _state_with(samples, fit, itr=10, **kw):
    st_ = TabuState(5000, 30, **kw)
    for i in samples:
        st_.record_sample(i, 0)
    st_.current_iter = itr
    manage_tabu_struct(st_, fit, samples)
    return st_


def test_aspiration_1_value_and_neighbours():
    v = np.linspace(0, 10, 5000)
    v[2248] = -0.05  # candidate 2249 slightly below the best sample
    fit = Fit(v)
    samples = {1: 0.0, 2251: 0.0, 5000: 10.0}
    st_ = _state_with(samples, fit)
    assert aspiration_1(2249, fit, samples, st_)
    # too high above the best value
    assert not aspiration_1(3000, fit, samples, st_)
    # two sampled neighbours within the radius exceed the limit of one
    samples2 = {**samples, 2247: 0.0}
    st2 = _state_with(samples2, fit)
    assert not aspiration_1(2249, fit, samples2, st2)


def test_aspiration_1_many_samples_allows_two_neighbours():
    v = np.zeros(5000)
    v[-1] = 100.0
    fit = Fit(v)
    samples = {i: 0.0 for i in range(1, 5000, 150)}
    samples[5000] = 100.0
    samples[2252] = 0.0
    assert len(samples) > 30
    st_ = _state_with(samples, fit, aspiration_radius="short")
    # neighbours within d_short=84 of 2249: 2252 and 2251
    assert aspiration_1(2249, fit, samples, st_)
    samples[2245] = 0.0
    assert not aspiration_1(2249, fit, samples, st_)


def test_aspiration_2():
    v = np.linspace(0, 10, 5000)
    fit = Fit(v)
    samples = {1: 5.0, 2228: -1.0, 2251: 0.0, 5000: 10.0}
    st_ = _state_with(samples, fit, itr=24)
    st_.last_new_min = (2228, 23, 0.0652 * fit.range)
    st_.d_long[2228] = 22
    assert aspiration_2(2197, fit, samples, st_)
    # too close: inside the long-term radius of the new minimum
    assert not aspiration_2(2220, fit, samples, st_)
    # 2251, not 2228, is the nearest sample to the right of 2300
    assert not aspiration_2(2300, fit, samples, st_)
    # improvement too small
    st_.last_new_min = (2228, 23, 0.001 * fit.range)
    assert not aspiration_2(2197, fit, samples, st_)
    # new minimum not from the previous iteration
    st_.last_new_min = (2228, 21, 0.0652 * fit.range)
    assert not aspiration_2(2197, fit, samples, st_)
    st_.last_new_min = None
    assert not aspiration_2(2197, fit, samples, st_)


def test_find_non_tabu_points():
    fit = Fit(np.linspace(0, 1, 5000))
    samples = {1: 0.0, 2500: 0.5, 5000: 1.0}
    st_ = _state_with(samples, fit, itr=1)
    assert find_non_tabu_points(set(), fit, samples, st_) == {}
    out = find_non_tabu_points({2510, 4000, 2500}, fit, samples, st_)
    assert out == {4000: "extremum"}
    assert not set(out) & set(samples)


def test_aspiration_2_does_not_release_long_term_tabu():
    fit = Fit(np.linspace(0, 1, 5000))
    samples = {1: 0.0, 2500: 0.5, 5000: 1.0}
    st_ = _state_with(samples, fit, itr=2)
    st_.record_sample(2500, 1, improvement=1.0)
    st_.d_long = {1: 10, 2500: 10, 5000: 10, 3000: 400}
    # 2600 is long-term tabu because of 3000's radius
    assert is_long_term_tabu(st_, 2600)
    assert find_non_tabu_points({2600}, fit, samples, st_) == {}


def test_validation():
    with pytest.raises(ValueError):
        TabuState(100, 20, tenure=0)
    with pytest.raises(ValueError):
        TabuState(100, 20, nu_min=0.3, nu_max=0.2)
    with pytest.raises(ValueError):
        TabuState(100, 20, aspiration_radius="wide")
    with pytest.raises(ValueError):
        manage_tabu_struct(TabuState(100, 20), Fit(np.zeros(100)), set())
