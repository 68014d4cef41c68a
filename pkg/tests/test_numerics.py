import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import t1_fixed_point
from steklov_parallels.errors import NoSignChange
from steklov_parallels.numerics import Bracket, expand_upward, find_root, solve_t1, solve_t2


def test_linear_root():
    f = lambda x: x - 1.0
    assert find_root(f, Bracket.of(f, 0.0, 2.0), tol=1e-12) == pytest.approx(1.0, abs=1e-12)


def test_t1_equation_root():
    f = lambda t: t - 0.5 * (1.0 + math.exp(-2.0 * t))
    root = find_root(f, Bracket.of(f, 0.5, 1.0))
    assert root == pytest.approx(0.639, abs=5e-4)


def test_root_checked_by_substitution():
    f = lambda t: t * t + 0.5 * math.cosh(t) ** 2 - 1.0
    root = find_root(f, Bracket.of(f, 0.0, 1.0), tol=1e-14)
    assert abs(f(root)) < 1e-13


def test_bracket_rejects_same_sign():
    with pytest.raises(NoSignChange):
        Bracket.of(lambda x: x * x + 1.0, -1.0, 1.0)
    with pytest.raises(NoSignChange):
        Bracket(1.0, 0.0, -1.0, 1.0)


def test_zero_endpoint_is_returned():
    f = lambda x: x
    assert find_root(f, Bracket.of(f, 0.0, 1.0)) == 0.0


def test_expand_upward():
    f = lambda x: x - 37.5
    b = expand_upward(f, 0.0)
    assert b.lo < 37.5 < b.hi


def test_t1_at_zero_matches_fixed_point():
    assert solve_t1(0.0) == pytest.approx(t1_fixed_point(0.0), abs=1e-14)
    assert 0.6390 < solve_t1(0.0) < 0.6394


def test_t1_large_a_limit():
    assert abs(solve_t1(20.0) - (0.5 + math.exp(-2.0 * 20.5))) < 1e-10


@pytest.mark.parametrize("a", [-1.0, 0.0, 1.0])
def test_t2_is_reflected_t1(a):
    assert solve_t2(a) == solve_t1(-a)


def test_very_negative_a_does_not_overflow():
    t = solve_t1(-400.0)
    # 2t - 1 = exp(-2 (t + a)) in log form
    assert math.log(2 * t - 1) == pytest.approx(-2.0 * (t - 400.0), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.floats(-30.0, 30.0))
def test_t1_satisfies_equation(a):
    t = solve_t1(a)
    assert t >= 0.5
    if t < 5:
        assert t == pytest.approx(0.5 * (1.0 + math.exp(-2.0 * (t + a))), rel=1e-13)
    else:
        assert math.log(2 * t - 1) == pytest.approx(-2.0 * (t + a), rel=1e-12, abs=1e-12)


def test_t1_strictly_decreasing():
    values = [solve_t1(a) for a in np.linspace(-5, 5, 41)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_fixed_point_oracle_agrees_for_positive_a():
    for a in (0.3, 1.0, 3.0):
        assert solve_t1(a) == pytest.approx(t1_fixed_point(a), abs=1e-14)
