import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ratwave.bank import check_linear, check_quadratic, haar_bank
from ratwave.daubechies import generate
from ratwave.errors import BudgetExceeded
from ratwave.params import PhiParam
from ratwave.rationalize import (
    ApproxStrategy,
    approximate_phi,
    bank_parameter,
    best_rational,
    dyadic_round,
    rationalize_bank,
    rebuild,
    screen,
    simplest_in_interval,
)
from ratwave.tables import TABLE1

GAMMA = 0.26794919
D2 = generate(2)


def _min_den_scan(x, eps):
    fx, e = F(x), F(eps)
    q = 1
    while True:
        p = math.ceil((fx - e) * q)
        if p <= (fx + e) * q:
            return F(p, q)
        q += 1


def _closest_scan(x, qmax):
    fx = F(x)
    best = None
    for q in range(1, qmax + 1):
        for p in (math.floor(fx * q), math.ceil(fx * q)):
            c = F(p, q)
            if best is None or abs(c - fx) < abs(best - fx):
                best = c
    return best


def test_best_rational_examples():
    assert best_rational(1 / 3, epsilon=1e-9) == F(1, 3)
    assert best_rational(1 / 3, epsilon=0.01) == F(1, 3)
    assert best_rational(GAMMA, max_denominator=4) == F(1, 4)
    assert best_rational(GAMMA, epsilon=1e-3) == F(11, 41)
    assert best_rational(GAMMA, epsilon=1e-3) == _min_den_scan(GAMMA, 1e-3)
    assert best_rational(-GAMMA, epsilon=1e-3) == F(-11, 41)


def test_best_rational_needs_one_bound():
    with pytest.raises(ValueError):
        best_rational(0.5)
    with pytest.raises(ValueError):
        best_rational(0.5, epsilon=0.1, max_denominator=3)


@given(st.floats(-20, 20, allow_nan=False), st.floats(1e-4, 0.5))
@settings(max_examples=150)
def test_epsilon_form_is_minimal_denominator(x, eps):
    r = best_rational(x, epsilon=eps)
    assert abs(F(x) - r) <= F(eps)
    assert r.denominator == _min_den_scan(x, eps).denominator


@given(st.floats(-5, 5, allow_nan=False), st.integers(1, 60))
@settings(max_examples=100)
def test_denominator_form_is_closest(x, q):
    r = best_rational(x, max_denominator=q)
    assert r.denominator <= q
    assert abs(r - F(x)) == abs(_closest_scan(x, q) - F(x))


def test_simplest_in_interval_edges():
    assert simplest_in_interval(F(-1, 3), F(1, 5)) == 0
    assert simplest_in_interval(2, 2) == 2
    assert simplest_in_interval(F(7, 3), F(12, 5)) == F(7, 3)


@pytest.mark.parametrize("bits, want", [(2, F(-1, 4)), (6, F(-17, 64)), (9, F(-137, 512))])
def test_dyadic_examples(bits, want):
    phi = PhiParam(1, (-GAMMA,), "float64")
    assert approximate_phi(phi, ApproxStrategy("dyadic", bits=bits)).gammas == (want,)


def test_dyadic_round_half_up():
    assert dyadic_round(F(1, 8), 2) == F(1, 4)
    assert dyadic_round(F(-1, 8), 2) == 0


def test_strategy_parsing():
    assert ApproxStrategy.parse("dyadic:6") == ApproxStrategy("dyadic", bits=6)
    assert ApproxStrategy.parse("best:1e-3").epsilon == 1e-3
    assert ApproxStrategy.parse("maxden:50").max_denominator == 50
    s = ApproxStrategy.parse("screen:0.02,100")
    assert (s.epsilon, s.d_max) == (0.02, 100)
    for text in ("dyadic:6", "maxden:50", "screen:0.02,100"):
        assert str(ApproxStrategy.parse(text)) == text
    for bad in ("dyadic:0", "best:-1", "maxden:0", "screen:0.1,1", "nope:3", "dyadic", "screen:0.1"):
        with pytest.raises(ValueError):
            ApproxStrategy.parse(bad)


@pytest.mark.parametrize("col", TABLE1.columns, ids=lambda c: f"dyadic{c.bits}")
def test_table1_columns(col):
    r = rationalize_bank(D2, f"dyadic:{col.bits}")
    assert r.bank.h0 == col.h0
    assert r.max_tap_denominator == col.h0[0].denominator


def test_table1_denominators_are_sums_of_squares():
    for col, (p, q) in zip(TABLE1.columns, [(1, 4), (17, 64), (137, 512)]):
        assert col.h0[0].denominator == p * p + q * q


def test_monotone_fidelity():
    results = [rationalize_bank(D2, f"dyadic:{k}") for k in (2, 6, 9)]
    dist = [r.input_distance for r in results]
    m1 = [abs(r.moment_report[1]) for r in results]
    assert dist[0] > dist[1] > dist[2]
    assert m1 == [F(1, 17), F(33, 4385), F(337, 280913)]
    assert m1[0] > m1[1] > m1[2]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("strategy", ["dyadic:4", "best:1e-3", "maxden:50"])
def test_any_strategy_gives_exact_bank(n, strategy):
    r = rationalize_bank(generate(n), strategy)
    assert check_quadratic(r.bank).is_exact()
    assert check_linear(r.bank) == (2, 0)
    assert r.phi_q.n == n - 1


@given(st.integers(-300, 300), st.integers(1, 300))
@settings(max_examples=100)
def test_genus2_closed_form(p, q):
    assume(math.gcd(p, q) == 1)
    r = rebuild(PhiParam(1, (F(-p, q),)), 2)
    d = p * p + q * q
    assert r.bank.h0 == (F(q * q - p * q, d), F(q * q + p * q, d), F(p * p + p * q, d), F(p * p - p * q, d))


def test_haar_rationalizes_to_itself():
    for s in ("dyadic:3", "best:0.1", "maxden:2"):
        r = rationalize_bank(haar_bank("float64"), s)
        assert r.bank == haar_bank() and r.max_tap_denominator == 1


# -- screening ---------------------------------------------------------------


def test_screen_d2_prefers_17():
    results = screen(D2, 0.02, 100)
    assert results[0].max_tap_denominator == 17
    assert results[0].phi_q.gammas == (F(-1, 4),)
    assert [r.max_tap_denominator for r in results] == sorted(r.max_tap_denominator for r in results)
    assert all(r.max_tap_denominator <= 100 for r in results)


def test_screen_d2_is_exhaustive():
    # brute force over every reduced p/q with q <= 40: taps denominator <= 100 and within epsilon
    gamma = bank_parameter(D2).gammas[0]
    want = set()
    for q in range(1, 41):
        for p in range(-q, q + 1):
            if math.gcd(p, q) == 1 and abs(F(p, q) - F(gamma)) <= F(0.02):
                r = rebuild(PhiParam(1, (F(p, q),)), 2)
                if r.max_tap_denominator <= 100:
                    want.add(F(p, q))
    assert {r.phi_q.gammas[0] for r in screen(D2, 0.02, 100)} == want


def test_screen_exact_irrational_is_empty():
    assert screen(D2, 0, 10**6) == []


def test_screen_haar():
    (r,) = screen(haar_bank("float64"), 0.1, 10)
    assert r.bank == haar_bank() and r.max_tap_denominator == 1


def test_screen_deterministic_and_genus3():
    d3 = generate(3)
    a = screen(d3, 0.05, 6000)
    b = screen(d3, 0.05, 6000)
    assert [r.phi_q for r in a] == [r.phi_q for r in b]
    assert a, "expected at least one candidate"
    assert all(check_quadratic(r.bank).is_exact() for r in a)
    keys = [(r.max_tap_denominator, r.moment_report.max_abs(1)) for r in a]
    assert keys == sorted(keys)


def test_screen_budget():
    with pytest.raises(BudgetExceeded):
        screen(generate(3), 0.5, 10**6, max_candidates=5)


def test_screen_strategy_through_rationalize():
    r = rationalize_bank(D2, "screen:0.02,100")
    assert r.max_tap_denominator == 17
