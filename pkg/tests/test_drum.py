import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steklov_parallels.cylinder import mode_eigenvalues, mode_problem
from steklov_parallels.drum import (
    DrumParams,
    F,
    F_prime,
    alpha_to_a,
    crossing_ratio,
    crossing_T,
    drum_eigenvalues,
    drum_profile,
    drum_tau1,
    log_discriminant,
    maximize_F,
    proof_constants,
    scaled_discriminant,
    sweep_a,
    sweep_T,
    tau0_plus,
    tau_n_pair,
)
from steklov_parallels.errors import InputError
from steklov_parallels.numerics import solve_t1

T1_0 = solve_t1(0.0)

positive = st.floats(0.02, 20.0)


def test_params_validation():
    with pytest.raises(InputError):
        DrumParams(0.0, 1.0, 1.0)
    with pytest.raises(InputError):
        DrumParams(1.0, 1.0, -2.0)


def test_critical_drum_branches_equal_one():
    p = DrumParams(1 / T1_0, 1 / T1_0, 2 * T1_0)
    assert tau0_plus(p) == pytest.approx(1.0, rel=1e-14)
    assert tau_n_pair(p, 1)[0] == pytest.approx(1.0, rel=1e-14)
    assert crossing_ratio(1.0, 2 * T1_0) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("f,T", [(1.0, 0.3), (0.2, 2.0), (5.0, 7.0)])
def test_tau0_equal_densities(f, T):
    assert tau0_plus(DrumParams(f, f, T)) == pytest.approx(2 / (T * f), rel=1e-15)


def test_roots_solve_the_quadratic():
    p = DrumParams(0.7, 1.9, 0.8)
    for n in range(1, 6):
        for tau in tau_n_pair(p, n):
            # tau^2 f0 fT sinh(nT) - n tau e^{nT} (f0 + fT) + 2 n^2 e^{nT} = 0, scaled by e^{-nT}
            q = (tau ** 2 * p.f0 * p.fT * math.sinh(n * p.T) * math.exp(-n * p.T)
                 - n * tau * (p.f0 + p.fT) + 2 * n * n)
            assert abs(q) < 1e-10 * (n * tau * (p.f0 + p.fT))


def test_discriminant_forms_agree():
    p = DrumParams(0.3, 1.7, 0.9)
    for n in range(1, 8):
        raw = (p.f0 + p.fT) ** 2 - 8 * p.f0 * p.fT * math.sinh(n * p.T) * math.exp(-n * p.T)
        assert scaled_discriminant(p, n) == pytest.approx(raw, rel=1e-12)
        assert log_discriminant(p, n) == pytest.approx(
            math.log(n * n * math.exp(2 * n * p.T) * raw), rel=1e-12)


def test_huge_modes_stay_finite():
    p = DrumParams(1.0, 2.0, 50.0)
    lo, hi = tau_n_pair(p, 40)
    assert math.isfinite(lo) and math.isfinite(hi) and lo < hi
    assert math.isfinite(log_discriminant(p, 40))


@settings(max_examples=80, deadline=None)
@given(positive, positive, st.floats(0.02, 8.0))
def test_closed_form_matches_cylinder(f0, fT, T):
    p = DrumParams(f0, fT, T)
    c = p.to_config()
    vals = drum_eigenvalues(p, 5)
    for n in range(6):
        ref = sorted(t for m, t in vals if m == n)
        got = mode_eigenvalues(mode_problem(c, n)) / p.mass
        np.testing.assert_allclose(got, ref, rtol=1e-10, atol=1e-300)


def test_from_config_round_trip():
    p = DrumParams(0.25, 0.75, 1.5)
    q = DrumParams.from_config(p.to_config(), mass=p.mass)
    assert q.f0 == pytest.approx(p.f0) and q.fT == pytest.approx(p.fT) and q.T == p.T


def test_drum_tau1():
    p = DrumParams(1.0, 1.0, 0.5)
    assert drum_tau1(p) == min(tau0_plus(p), tau_n_pair(p, 1)[0])


class TestCrossing:
    def test_limits(self):
        assert crossing_ratio(1.0, 1e-6) < 1
        assert crossing_ratio(1.0, 50.0) > 1

    def test_symmetric_crossing(self):
        assert crossing_T(1.0) == pytest.approx(2 * T1_0, rel=1e-12)
        assert crossing_T(1.0) == pytest.approx(1.2784, abs=1e-4)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_defining_property(self, alpha):
        assert abs(crossing_ratio(alpha, crossing_T(alpha)) - 1.0) < 1e-10

    def test_matches_profile_parametrization(self):
        prof = drum_profile(alpha_to_a(2.0))
        assert prof.alpha == pytest.approx(2.0, rel=1e-12)
        assert crossing_T(2.0) == pytest.approx(prof.T, rel=1e-10)

    def test_branch_swap_multiplicity(self):
        p = DrumParams(1.0, 2.0, crossing_T(0.5))
        assert tau0_plus(p) == pytest.approx(tau_n_pair(p, 1)[0], rel=1e-10)


class TestProfile:
    def test_a_zero(self):
        prof = drum_profile(0.0)
        assert prof.alpha == 1.0
        assert prof.T == pytest.approx(2 * T1_0)
        assert prof.F == pytest.approx(2 / T1_0)
        assert prof.tau1_bar == pytest.approx(4 * math.pi / T1_0)

    @pytest.mark.parametrize("a", [0.3, 1.7])
    def test_F_even(self, a):
        assert F(a) == pytest.approx(F(-a), rel=1e-14)

    @pytest.mark.parametrize("a", [-1.2, 0.0, 0.4, 2.5])
    def test_profile_is_critical(self, a):
        # both branches equal 1 at the densities (1/t1, 1/t2)
        p = drum_profile(a).params()
        assert tau0_plus(p) == pytest.approx(1.0, rel=1e-12)
        assert tau_n_pair(p, 1)[0] == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("a", [-1.0, 0.25, 1.0, 3.0])
    def test_F_prime(self, a):
        h = 1e-6
        assert F_prime(a) == pytest.approx((F(a + h) - F(a - h)) / (2 * h), abs=1e-8)


class TestMaximizeF:
    def test_optimum_at_zero(self):
        a, f = maximize_F()
        assert abs(a) < 1e-6
        assert f == pytest.approx(2 / T1_0, rel=1e-12)

    def test_decrease(self):
        assert F(1.0) < F(0.0)
        assert F(0.5) > F(1.0) > F(2.0)

    def test_bound_below_value(self):
        c = proof_constants()
        assert c["bound"] < c["upper"]

    def test_constants_from_rounded_root(self):
        # feeding the rounded t1(0) = 0.639 reproduces the printed constants
        c = proof_constants(0.639)
        assert c["upper"] == pytest.approx(3.12989, abs=5e-6)
        assert c["bound"] == pytest.approx(3.07085, abs=5e-6)

    def test_exact_constants(self):
        c = proof_constants()
        assert c["upper"] == pytest.approx(3.1287531771, abs=1e-9)
        assert c["bound"] == pytest.approx(3.0715804129, abs=1e-9)


def test_sweeps():
    rows = sweep_a(np.linspace(-2, 2, 41))
    best = max(rows, key=lambda r: r["F"])
    assert best["a"] == pytest.approx(0.0, abs=1e-12)
    assert set(rows[0]) == {"a", "t1", "t2", "alpha", "T", "F", "tau1_bar"}
    rows = sweep_T(1.0, [0.5, 2 * T1_0, 3.0])
    assert rows[0]["tau1"] == rows[0]["tau1_minus"]
    assert rows[2]["tau1"] == rows[2]["tau0_plus"]
    assert rows[1]["tau0_plus"] == pytest.approx(rows[1]["tau1_minus"], rel=1e-12)
