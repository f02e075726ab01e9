import math

import pytest
from hypothesis import given, strategies as st

from longpaths import oracles
from longpaths.bounds import (
    BoundParams,
    chernoff_q,
    chernoff_q_conservative,
    chernoff_tail_bound,
    corollary1_bounds,
    hamiltonian_radius,
    min_degree_failure_bound,
    rgg_hamiltonian_bound,
    rgg_long_cycle_bound,
    theorem1_bounds,
)

# frozen from 30-digit evaluations
Q_HALF = 0.153426409720027
Q_NINE_TENTHS = 0.669741490700595


def test_q_reference_values():
    assert chernoff_q(0.5) == pytest.approx(Q_HALF, abs=1e-14)
    assert chernoff_q(0.5) == pytest.approx(0.1535, abs=1e-3)
    assert chernoff_q(0.9) == pytest.approx(Q_NINE_TENTHS, abs=1e-14)
    assert chernoff_q(1.0) == 1.0


def test_q_small_delta():
    assert 0 < chernoff_q(1e-8) < 1e-7


@pytest.mark.parametrize("delta", [0.0, -0.1, 1.0000001, 2.0])
def test_q_domain(delta):
    with pytest.raises(ValueError):
        chernoff_q(delta)


@given(st.floats(1e-6, 1.0))
def test_q_matches_high_precision(delta):
    assert abs(chernoff_q(delta) - float(oracles.chernoff_q_mp(delta))) <= 1e-12


@given(st.floats(1e-4, 0.999), st.floats(1e-4, 0.999))
def test_q_monotone(a, b):
    lo, hi = sorted((a, b))
    assert chernoff_q(lo) <= chernoff_q(hi) + 1e-15


def test_tail_bound_example():
    b = chernoff_tail_bound(100, 0.5)
    assert b.value == pytest.approx(2 * math.exp(-100 * Q_HALF), rel=1e-12)
    assert b.value == pytest.approx(4.3e-7, rel=0.02)
    assert not b.clamped


def test_tail_bound_clamps():
    b = chernoff_tail_bound(1.0, 0.25)
    assert b.clamped and b.value == 1.0 and b.raw > 1


def test_tail_bound_rejects_zero_mean():
    with pytest.raises(ValueError):
        chernoff_tail_bound(0.0, 0.5)


def test_tail_bound_binomial_50_04():
    exact = oracles.binomial_two_sided_tail(50, "0.4", "0.5")
    assert exact <= chernoff_tail_bound(20.0, 0.5).value


GRID = [(n, p, a) for n in (10, 50, 200) for p in ("0.1", "0.5") for a in ("0.25", "0.5", "0.9")]
# the min form of the exponent undercuts the upper tail here (exact tail 8.65e-5)
MIN_FORM_MISSES = {(200, "0.1", "0.9")}


@pytest.mark.parametrize("n,p,a", GRID)
def test_conservative_bound_dominates(n, p, a):
    exact = oracles.binomial_two_sided_tail(n, p, a)
    assert exact <= 2 * math.exp(-chernoff_q_conservative(float(a)) * n * float(p))


@pytest.mark.parametrize("n,p,a", [c for c in GRID if c not in MIN_FORM_MISSES])
def test_min_form_dominates_off_the_known_cell(n, p, a):
    assert oracles.binomial_two_sided_tail(n, p, a) <= chernoff_tail_bound(n * float(p), float(a)).raw


def test_min_form_miss_is_real():
    exact = oracles.binomial_two_sided_tail(200, "0.1", "0.9")
    assert exact == pytest.approx(8.648660726693102e-05, rel=1e-9)
    assert chernoff_tail_bound(20.0, 0.9).value < exact


def test_min_degree_failure_bound():
    b = min_degree_failure_bound(100, 0.5, 0.3, 0.5)
    assert b.raw == pytest.approx(100 * math.exp(-Q_HALF * 15), rel=1e-12)
    assert b.clamped and b.value == 1.0


# -- longest-path bounds ------------------------------------------------------


def test_hamiltonian_probability_arithmetic():
    rep = theorem1_bounds(BoundParams(100, beta1=1, beta2=1, M=2))
    assert rep.regime == "log-regime" and rep.M1 == 2
    assert rep.ham_prob_lower == 0.98
    assert rep.expected_Ln_lower_log == pytest.approx(100 - 0.02)


def test_zero_density_clamps():
    rep = theorem1_bounds(BoundParams(10, p_n=0.0))
    assert rep.raw["expected_Ln_lower"] == -10
    assert rep.expected_Ln_lower == 0 and "expected_Ln_lower" in rep.clamped


def test_prob_lower_dense_case():
    rep = theorem1_bounds(BoundParams(10**4, 0.1, delta=0.5))
    assert rep.prob_lower == 1 - math.exp(-50)
    cor = corollary1_bounds(10**4, 0.1, 0.25)
    assert cor.prob_lower == pytest.approx(1 - math.exp(-25), rel=1e-15)


def test_log_regime_needs_M1_above_one():
    rep = theorem1_bounds(BoundParams(1000, beta1=0.5, beta2=0.5, M=3))
    assert rep.ham_prob_lower is None and rep.notes


def test_params_validate():
    with pytest.raises(ValueError):
        BoundParams(2, 0.5)
    with pytest.raises(ValueError):
        BoundParams(10, 0.5, beta1=0)
    with pytest.raises(ValueError):
        BoundParams(10)
    with pytest.raises(ValueError):
        BoundParams(100, p_n=0.5, M=2)
    assert BoundParams(100, M=2).p_n == pytest.approx(math.sqrt(2 * math.log(100) / 100))


@given(st.integers(3, 10**6), st.floats(0.001, 1), st.floats(0.01, 0.49))
def test_homogeneous_reduction(n, p, d):
    cor = corollary1_bounds(n, p, d)
    thm = theorem1_bounds(BoundParams(n, p, beta1=1 - d, beta2=1, delta=d / (1 - d)))
    for f in ("expected_Ln_lower", "Ln_threshold", "prob_lower"):
        assert cor.raw[f] == pytest.approx(thm.raw[f], rel=1e-9, abs=1e-9)


@given(st.integers(10, 10**5), st.floats(1.5, 8), st.floats(0.05, 0.95))
def test_homogeneous_log_reduction(n, M, frac):
    M1 = 1 + frac * (M - 1)
    p = math.sqrt(M * math.log(n) / n)
    if p > 1:
        return
    cor = corollary1_bounds(n, p, 0.2, M1=M1)
    thm = theorem1_bounds(BoundParams(n, p, beta1=M1 / M, beta2=1, M=M))
    assert cor.ham_prob_lower == pytest.approx(thm.ham_prob_lower, rel=1e-12)


@given(st.integers(3, 10**5), st.floats(0, 1), st.floats(0.01, 1), st.floats(0.01, 1), st.floats(0.01, 0.99))
def test_reports_stay_in_range(n, p, b1, b2, d):
    rep = theorem1_bounds(BoundParams(n, p, b1, b2, d))
    assert 0 <= rep.expected_Ln_lower <= n
    assert 0 <= rep.Ln_threshold <= n
    assert 0 <= rep.prob_lower <= 1


def test_homogeneous_form_domain():
    with pytest.raises(ValueError):
        corollary1_bounds(100, 0.5, 0.5)
    with pytest.raises(ValueError):
        corollary1_bounds(100, 0.5, 0.2, M1=0.9)


# -- RGG bounds ---------------------------------------------------------------


def test_rgg_bounds():
    thr, prob = rgg_long_cycle_bound(100, 0.3, 1.0, 0.5)
    assert thr == pytest.approx(100 - 100 * math.exp(-9))
    assert prob == pytest.approx(1 - math.exp(-4.5))
    assert rgg_hamiltonian_bound(2.0, 3.0) == pytest.approx(1 - 3 * math.exp(-2))
    assert rgg_hamiltonian_bound(-4.0) == 0.0


def test_hamiltonian_radius():
    n = 2000
    r = hamiltonian_radius(n, 10.0)
    assert n * r * r == pytest.approx(math.log(n) + 7 * math.log(math.log(n)) + 10)
    with pytest.raises(ValueError):
        hamiltonian_radius(n, -100)
