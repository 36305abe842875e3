from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from degenseries import LambdaPoly, TruncatedSeries, UsageError
from degenseries.opcalc import (
    LambdaExpPoly,
    apply_xd_operator,
    dobinski_check,
    eq76_general_check,
    eq78_check,
    rhs_eq78,
    stirling_row_from_operator,
)
from degenseries.stirling import s2_lambda

L = LambdaPoly.symbol()
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
lpolys = st.lists(fractions, max_size=3).map(LambdaPoly)
terms = st.lists(st.tuples(st.tuples(st.integers(-3, 5), st.integers(-3, 3)), lpolys), max_size=5)
exp_polys = terms.map(LambdaExpPoly)


def test_single_application_examples():
    assert apply_xd_operator(LambdaExpPoly.monomial(1)) == LambdaExpPoly.monomial(1, -1)
    assert apply_xd_operator(LambdaExpPoly.monomial(0)) == LambdaExpPoly()
    assert apply_xd_operator(LambdaExpPoly.monomial(2)) == LambdaExpPoly.monomial(2, -1, 2)


def test_stirling_form_examples():
    x2 = LambdaExpPoly.monomial(2)
    assert rhs_eq78(x2, 0) == x2
    assert rhs_eq78(x2, 2) == LambdaExpPoly.monomial(2, -2, 2 * (2 - L))
    assert rhs_eq78(LambdaExpPoly.monomial(0), 3) == LambdaExpPoly()
    assert str(rhs_eq78(x2, 2)) == "(4 - 2*L)*x^(2 - 2*L)"
    with pytest.raises(UsageError):
        rhs_eq78(LambdaExpPoly.monomial(1, 1), 1)


def test_zero_terms_are_dropped():
    p = LambdaExpPoly([((1, 0), L), ((1, 0), -L)])
    assert p.terms == {}
    assert str(p) == "0"


@pytest.mark.parametrize("n", range(9))
def test_operator_power_on_monomials(n):
    for a in range(9):
        assert eq78_check(LambdaExpPoly.monomial(a), n)


@pytest.mark.parametrize("n", range(9))
def test_operator_reproduces_stirling_rows(n):
    assert stirling_row_from_operator(n) == [s2_lambda(n, k) for k in range(n + 1)]


@pytest.mark.parametrize("lam", [0, 1, Fraction(1, 2), Fraction(-1, 3)])
def test_dobinski(lam):
    for n in range(9):
        assert dobinski_check(n, lam, 16)
    assert dobinski_check(2, Fraction(1, 2), 10)


def test_dobinski_needs_order():
    with pytest.raises(UsageError):
        dobinski_check(5, 0, 3)


def test_weighted_coefficients_examples():
    geo = TruncatedSeries([1] * 11, 10, var="x")
    assert eq76_general_check(1, geo, Fraction(1, 4))
    assert eq76_general_check(0, geo, 3)
    assert eq76_general_check(4, TruncatedSeries.exp(12, var="x"), Fraction(2, 5))


@given(exp_polys, exp_polys, fractions)
def test_operator_is_linear(f, g, alpha):
    assert apply_xd_operator(f.scale(alpha) + g) == apply_xd_operator(f).scale(alpha) + apply_xd_operator(g)


@given(st.lists(fractions, max_size=6), st.integers(0, 6))
def test_stirling_form_on_random_polynomials(coeffs, n):
    assert eq78_check(LambdaExpPoly.from_coeffs(coeffs), n)
