from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenseries import DomainError, LambdaPoly
from degenseries import families as fam
from degenseries.verify import DEFAULT_LAMBDAS

import oracles

L = LambdaPoly.symbol()
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_bell_and_fubini_examples():
    assert fam.bell_poly(2)(Fraction(2), Fraction(1, 3)) == Fraction(16, 3)
    assert fam.bell_poly(3)(1, 0) == 5
    assert fam.fubini_poly(3)(1, 0) == 13
    assert fam.fubini_poly(2)(1, Fraction(1, 3)) == Fraction(8, 3)
    assert fam.fubini_poly(0)(5, Fraction(1, 3)) == 1
    assert fam.bell_poly(2).coeffs[1] == 1 - L


def test_bernoulli_examples():
    lam = Fraction(1, 3)
    assert fam.bernoulli_carlitz(0, lam) == 1
    assert fam.bernoulli_carlitz(1, lam) == (lam - 1) / 2
    assert fam.bernoulli_carlitz(2, lam) == (1 - lam**2) / 6
    assert fam.bernoulli_carlitz(2, 0) == Fraction(1, 6)


def test_euler_example():
    half = Fraction(1, 2)
    assert [fam.euler_degenerate(n, half, 0) for n in range(3)] == [1, Fraction(-1, 2), Fraction(1, 4)]


def test_poly_bernoulli_examples():
    p = fam.PolyBernoulliParams(2, 1, Fraction(1, 2))
    assert fam.poly_bernoulli(p) == Fraction(5, 12)
    assert fam.poly_bernoulli(fam.PolyBernoulliParams(2, 1, 0)) == Fraction(1, 6)


def test_h_series_rejects_minus_one():
    with pytest.raises(DomainError):
        fam.h_series(-1, 1, 0, 4)


@pytest.mark.parametrize("lam", DEFAULT_LAMBDAS)
def test_gf_paths_agree(lam):
    x = Fraction(-2, 3)
    for n in range(11):
        assert fam.bell_poly(n)(x, lam) == fam.bell_via_gf(n, lam, x)
        assert fam.fubini_poly(n)(x, lam) == fam.fubini_via_gf(n, lam, x)


@pytest.mark.parametrize("lam", DEFAULT_LAMBDAS)
def test_poly_bernoulli_paths_agree(lam):
    x = Fraction(3, 4)
    for k in range(-2, 4):
        for n in range(9):
            assert fam.poly_bernoulli(fam.PolyBernoulliParams(n, k, lam)) == fam.poly_bernoulli_explicit(n, k, lam)
            assert fam.poly_bernoulli(fam.PolyBernoulliParams(n, k, lam, x)) == \
                fam.poly_bernoulli_from_numbers(n, k, lam, x)


def test_poly_bernoulli_k1_factorises():
    # Li_1(1 - e_lam(-t)) = -log(1 - lam t)/lam and e_lam(-t) = 1/e_{-lam}(t)
    for lam in DEFAULT_LAMBDAS:
        weights = [factorial(j) * lam**j / (j + 1) for j in range(8)]
        for n in range(8):
            got = fam.poly_bernoulli(fam.PolyBernoulliParams(n, 1, lam))
            want = sum(comb(n, j) * weights[j] * fam.bernoulli_carlitz(n - j, -lam, 1) for j in range(n + 1))
            assert got == want


@pytest.mark.parametrize("n", range(9))
def test_classical_limits(n):
    x = Fraction(2, 5)
    assert fam.bernoulli_carlitz(n, 0, x) == oracles.bernoulli_poly(n, x)
    assert fam.euler_degenerate(n, 0, x) == oracles.euler_poly(n, x)
    assert fam.bell_poly(n)(x, 0) == oracles.bell_poly(n, x)
    assert fam.fubini_poly(n)(x, 0) == oracles.fubini_poly(n, x)
    for k in range(-2, 4):
        assert fam.poly_bernoulli(fam.PolyBernoulliParams(n, k, 0, x)) == oracles.poly_bernoulli_series(n, k, x)


@pytest.mark.parametrize("n", range(11))
def test_fubini_at_minus_half_three_ways(n):
    for lam in DEFAULT_LAMBDAS:
        fub, bern, stir = fam.fubini_half_identity(n, lam)
        assert fub == bern == stir


@pytest.mark.parametrize("m", range(7))
def test_fubini_geometric(m):
    for lam in DEFAULT_LAMBDAS:
        assert fam.fubini_geometric_identity(m, lam, 12)


@settings(max_examples=50)
@given(st.integers(0, 8), fractions, fractions)
def test_euler_from_fubini(n, lam, x):
    assert fam.euler_fubini_identity(n, lam, x)


@settings(max_examples=50)
@given(fractions.filter(lambda v: v != -1), fractions, fractions, st.integers(0, 6))
def test_h_derivatives(mu, gamma, lam, m):
    assert fam.h_derivative_identity(mu, gamma, lam, m, 8)


@settings(max_examples=30)
@given(fractions, st.integers(0, 6))
def test_symbolic_bell_matches_specialisation(lam, n):
    sym = fam.bell_poly(n)
    assert sym(Fraction(3), lam) == fam.bell_via_gf(n, lam, 3)
