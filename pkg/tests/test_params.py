import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fractions
from ratwave.daubechies import generate
from ratwave.bank import to_param
from ratwave.errors import DegeneratePair, RoundTripMismatch
from ratwave.laurent import LaurentPoly
from ratwave.params import (
    ParamPair,
    PhiParam,
    build_theta,
    coprod,
    correct_to_canonical,
    pair_roundtrip_check,
    prod,
    prod_branches,
    roundtrip_check,
    solve_system,
    uncorrected_pair,
)
from ratwave.scalars import FLOAT


def pair(alpha, beta, lo=0):
    return ParamPair(LaurentPoly(alpha, lo), LaurentPoly(beta, lo))


PAIR_17 = pair([F(16, 17), F(1, 17)], [F(4, 17), F(-4, 17)])


@st.composite
def rational_phis(draw, max_n=5, bound=100):
    n = draw(st.integers(1, max_n))
    return PhiParam(n, tuple(draw(st.lists(fractions(bound), min_size=n, max_size=n))))


# -- build_theta -------------------------------------------------------------


def test_theta_pattern_n1():
    g = F(3, 7)
    sys = build_theta(PhiParam(1, (g,)))
    assert sys.theta == ((0, g), (g, 0))


def test_theta_pattern_n2():
    g1, g2 = F(2, 3), F(-5, 11)
    sys = build_theta(PhiParam(2, (g1, g2)))
    assert sys.theta == ((0, g1, g2), (g1, g2, 0), (g2, 0, 0))
    assert sys.rhs == (1, 0, 0)


def test_theta_and_delta_for_quarter():
    sys = build_theta(PhiParam(1, (F(-1, 4),)))
    assert sys.theta == ((0, F(-1, 4)), (F(-1, 4), 0))
    assert sys.delta == ((F(17, 16), 0), (0, F(17, 16)))


@given(rational_phis(max_n=6))
@settings(max_examples=40)
def test_delta_is_symmetric_with_eigenvalues_at_least_one(phi):
    import numpy as np

    sys = build_theta(phi)
    d = [[float(v) for v in row] for row in sys.delta]
    assert d == [list(r) for r in zip(*d)]
    assert np.linalg.eigvalsh(np.array(d)).min() >= 1 - 1e-9


# -- solve_system ------------------------------------------------------------


def test_solve_zero_theta():
    x, y = solve_system(build_theta(PhiParam.zero(3)))
    assert x == [1, 0, 0, 0]
    assert y == [0, 0, 0, 0]


def test_solve_quarter():
    x, y = solve_system(build_theta(PhiParam(1, (F(-1, 4),))))
    assert x == [F(16, 17), 0]
    assert y == [0, F(-4, 17)]


def _brute_norm(xs, ys):
    # sum_{i,j} (x_i x_j + y_i y_j) z^{i-j}, accumulated term by term
    out = {}
    for i in range(len(xs)):
        for j in range(len(xs)):
            out[i - j] = out.get(i - j, 0) + xs[i] * xs[j] + ys[i] * ys[j]
    return {k: v for k, v in out.items() if v != 0}


@given(rational_phis(max_n=5))
@settings(max_examples=60)
def test_solution_satisfies_system_and_lemma_constant(phi):
    sys = build_theta(phi)
    x, y = solve_system(sys)
    n = len(x)
    for i in range(n):
        assert sum(sys.delta[i][j] * x[j] for j in range(n)) == sys.rhs[i]
    norm = _brute_norm(x, y)
    assert set(norm) <= {0}
    assert norm.get(0, 0) == x[0]
    assert x[0] == sum(x) ** 2 + sum(y) ** 2


# -- correct_to_canonical ----------------------------------------------------


def test_correct_identity():
    assert correct_to_canonical(pair([1], [])) == pair([1], [])


def test_correct_quarter_example():
    uncorrected = ParamPair(LaurentPoly([F(16, 17)]), LaurentPoly([0, F(-4, 17)]))
    assert correct_to_canonical(uncorrected) == PAIR_17


def test_correct_float_haar():
    r = 1 / math.sqrt(2)
    out = correct_to_canonical(ParamPair(LaurentPoly([r]), LaurentPoly([r])))
    assert out.alpha.allclose(LaurentPoly([1.0]), 1e-12)
    assert out.beta.allclose(LaurentPoly.zero(FLOAT), 1e-12)


def test_correct_degenerate():
    with pytest.raises(DegeneratePair):
        correct_to_canonical(pair([], []))


# -- coprod ------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 5])
def test_coprod_zero(n):
    assert coprod(PhiParam.zero(n)) == pair([1], [])


def test_coprod_examples():
    assert coprod(PhiParam(1, (F(-1, 4),))) == PAIR_17
    out = coprod(PhiParam(1, (F(-17, 64),)))
    assert out == pair([F(4096, 4385), F(289, 4385)], [F(1088, 4385), F(-1088, 4385)])


@given(rational_phis(max_n=5))
@settings(max_examples=60)
def test_coprod_lands_in_canonical_set(phi):
    p = coprod(phi)
    one = LaurentPoly.constant(1)
    assert p.norm_poly() == one
    assert p.at_one() == (1, 0)
    assert p.alpha.in_range(0, phi.n) and p.beta.in_range(0, phi.n)
    f = phi.as_poly()
    phi1 = f * p.alpha - p.beta.tilde()
    phi2 = f * p.beta + p.alpha.tilde()
    assert phi1.neg_part().is_zero() and phi2.neg_part().is_zero()
    # determinant of the product is 1
    assert p.alpha * phi2 - p.beta * phi1 == one
    assert p.at_zero() != (0, 0)


# -- prod --------------------------------------------------------------------


def test_prod_examples():
    assert prod(pair([1], [])) == PhiParam(0, ())
    assert prod(pair([1], []), 2) == PhiParam.zero(2)
    assert prod(PAIR_17) == PhiParam(1, (F(-1, 4),))


def test_prod_float_d2():
    phi = prod(to_param(generate(2)))
    assert phi.n == 1
    assert abs(phi.gammas[0] + (2 - math.sqrt(3))) <= 1e-12
    back = coprod(phi)
    assert back.residual(to_param(generate(2))) <= 1e-12


def test_prod_degenerate():
    with pytest.raises(DegeneratePair):
        prod(pair([0, 1], [0, 0, 1]))


def test_prod_rejects_small_nominal_degree():
    with pytest.raises(ValueError):
        prod(PAIR_17, 0)


@given(rational_phis(max_n=4), fractions(20), fractions(20))
@settings(max_examples=50)
def test_prod_invariant_under_rotation(phi, p, q):
    if p == 0 and q == 0:
        return
    canonical = coprod(phi)
    rotated = canonical.times(((p, q), (-q, p)))
    assert prod(rotated, phi.n) == prod(correct_to_canonical(rotated), phi.n) == phi


@given(rational_phis(max_n=4), fractions(20), fractions(20))
@settings(max_examples=50)
def test_branch_consistency(phi, p, q):
    if p == 0 or q == 0:
        return
    rotated = coprod(phi).times(((p, q), (-q, p)))
    via_alpha, via_beta = prod_branches(rotated, phi.n)
    if via_alpha is not None and via_beta is not None:
        assert via_alpha == via_beta


# -- round trips -------------------------------------------------------------


def test_roundtrip_zero():
    assert roundtrip_check(PhiParam.zero(3))


@given(rational_phis(max_n=8))
@settings(max_examples=80)
def test_roundtrip_exact(phi):
    assert roundtrip_check(phi)


def test_pair_roundtrip_haar():
    r = 1 / math.sqrt(2)
    u = pair_roundtrip_check(ParamPair(LaurentPoly([r]), LaurentPoly([r])))
    for got, want in zip(sum(u.matrix(), ()), (r, r, -r, r)):
        assert abs(got - want) <= 1e-12


def test_pair_roundtrip_rational_rotation():
    u = pair_roundtrip_check(PAIR_17.times(((F(3, 5), F(4, 5)), (F(-4, 5), F(3, 5)))))
    assert (u.u11, u.u12, u.c) == (F(3, 5), F(4, 5), 1)


def test_pair_roundtrip_mismatch():
    with pytest.raises(RoundTripMismatch):
        pair_roundtrip_check(pair([1, 1], []))


def test_phi_json_roundtrip():
    phi = PhiParam(3, (F(-1, 2), 0, F(7, 64)))
    assert phi.to_json() == {"n": 3, "gammas": ["-1/2", "0", "7/64"]}
    assert PhiParam.from_json(phi.to_json()) == phi
    assert ParamPair.from_json(PAIR_17.to_json()) == PAIR_17


def test_uncorrected_constant_is_x0():
    p, c = uncorrected_pair(PhiParam(2, (F(1, 3), F(-2, 5))))
    assert p.norm_poly() == LaurentPoly.constant(c)
