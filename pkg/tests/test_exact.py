from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenseries import (
    DomainError,
    LambdaPoly,
    TruncatedSeries,
    UsageError,
    format_lambda_poly,
    parse_rational,
    series_compose,
    series_div,
    series_mul,
    series_pow,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
lpolys = st.lists(fractions, max_size=4).map(LambdaPoly)
ORDER = 6
q_series = st.lists(fractions, min_size=ORDER + 1, max_size=ORDER + 1).map(lambda cs: TruncatedSeries(cs, ORDER))
unit_series = q_series.map(lambda s: s + (1 - s.coeffs[0]))
nilpotent = q_series.map(lambda s: s - s.coeffs[0])


@pytest.mark.parametrize("text,value", [("3", 3), ("-2/4", Fraction(-1, 2)), ("+7/3", Fraction(7, 3)), ("0/5", 0)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1/0", "abc", "1.5", "2//3"])
def test_parse_rational_rejects(text):
    with pytest.raises(UsageError):
        parse_rational(text)


def test_lambda_poly_format():
    L = LambdaPoly.symbol()
    assert format_lambda_poly(3 - 3 * L) == "3 - 3*L"
    assert format_lambda_poly(L - 1) == "-1 + L"
    assert format_lambda_poly(1 - Fraction(3, 2) * L + L**2) == "1 - 3/2*L + L^2"
    assert format_lambda_poly(LambdaPoly()) == "0"


def test_lambda_poly_evaluation_and_division():
    L = LambdaPoly.symbol()
    p = (L - 1) * (L - 2)
    assert p(Fraction(1, 2)) == Fraction(3, 4)
    assert (p / 2).at(3) == 1
    with pytest.raises(DomainError):
        _ = p / L
    assert LambdaPoly.const(5) == 5
    assert hash(LambdaPoly.const(Fraction(1, 3))) == hash(Fraction(1, 3))


def test_series_examples():
    e = TruncatedSeries.exp(4)
    assert (e * e).coeffs == TruncatedSeries.exp(4, scale=2).coeffs
    geo = series_div(TruncatedSeries.one(3), TruncatedSeries([1, -1], 3))
    assert geo.coeffs == (1, 1, 1, 1)
    with pytest.raises(DomainError):
        series_div(TruncatedSeries.one(3), TruncatedSeries([0, 1], 3))
    with pytest.raises(DomainError):
        series_compose(e, TruncatedSeries([1, 1], 4))
    with pytest.raises(UsageError):
        series_pow(e, -1)
    with pytest.raises(UsageError):
        e + TruncatedSeries.one(5)


def test_lambda_ring_series():
    L = LambdaPoly.symbol()
    s = TruncatedSeries([1, L], 2)
    assert (s * s).coeffs == (1, 2 * L, L**2)
    assert s.evaluate_lambda(Fraction(1, 2)).coeffs == (1, Fraction(1, 2), 0)


@given(lpolys, lpolys, lpolys)
def test_lambda_poly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(lpolys, lpolys, fractions)
def test_lambda_poly_evaluation_is_a_homomorphism(a, b, v):
    assert (a * b)(v) == a(v) * b(v)
    assert (a + b)(v) == a(v) + b(v)


@settings(max_examples=60)
@given(q_series, q_series, q_series)
def test_series_ring_axioms(a, b, c):
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=60)
@given(q_series, unit_series)
def test_division_inverts_multiplication(a, u):
    assert series_div(series_mul(a, u), u) == a


@settings(max_examples=40)
@given(q_series, nilpotent, nilpotent)
def test_composition_is_associative(f, g, h):
    assert series_compose(series_compose(f, g), h) == series_compose(f, series_compose(g, h))


@settings(max_examples=40)
@given(unit_series, st.integers(0, 5))
def test_power_matches_repeated_product(u, k):
    prod = TruncatedSeries.one(ORDER)
    for _ in range(k):
        prod = prod * u
    assert series_pow(u, k) == prod


@given(q_series, unit_series)
def test_coefficients_stay_canonical(a, u):
    for c in series_div(a, u).coeffs:
        assert isinstance(c, Fraction)
        assert c == Fraction(c.numerator, c.denominator)
