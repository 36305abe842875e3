from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from degenseries import DomainError, LambdaPoly, TruncatedSeries
from degenseries.basics import (
    binomial_convolution_check,
    degenerate_exp,
    degenerate_log,
    falling_factorial_lambda,
    scaled_convolution_check,
    scaling_identity_check,
)
from degenseries.verify import DEFAULT_LAMBDAS

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=9)
nonzero = fractions.filter(bool)


def test_falling_factorial_examples():
    assert falling_factorial_lambda(5, 0, 3) == 1
    assert falling_factorial_lambda(2, 3, Fraction(1, 2)) == 2 * Fraction(3, 2) * 1
    L = LambdaPoly.symbol()
    assert falling_factorial_lambda(3, 2, L) == 9 - 3 * L


def test_degenerate_exp_examples():
    assert degenerate_exp(1, 1, 3).coeffs == (1, 1, 0, 0)
    assert degenerate_exp(2, Fraction(1, 2), 3).coeffs == (1, 2, Fraction(3, 2), Fraction(1, 2))


def test_degenerate_log_examples():
    assert degenerate_log(0, 3).coeffs == (0, 1, Fraction(-1, 2), Fraction(1, 3))
    L = LambdaPoly.symbol()
    logs = degenerate_log(L, 3).coeffs
    assert logs[2] == (L - 1) / 2
    assert logs[3] == (L - 1) * (L - 2) / 6


def test_scaling_and_convolution_examples():
    assert scaling_identity_check(2, 3, 2, Fraction(1, 2))
    assert falling_factorial_lambda(6, 2, Fraction(1, 2)) == 33
    assert binomial_convolution_check(1, 2, 1, 2, Fraction(1, 3))
    with pytest.raises(DomainError):
        scaling_identity_check(0, 1, 2, 1)
    with pytest.raises(DomainError):
        scaled_convolution_check(1, 0, 1, 2, 1)


@given(fractions, st.integers(0, 12))
def test_lambda_zero_gives_powers(x, n):
    assert falling_factorial_lambda(x, n, 0) == x**n


@given(nonzero, nonzero, st.integers(0, 8), fractions)
def test_scaling_identity(z, k, p, lam):
    assert scaling_identity_check(z, k, p, lam)


@given(fractions, nonzero, fractions, st.integers(0, 8), fractions)
def test_convolutions(y, z, k, m, lam):
    assert binomial_convolution_check(y, z, k, m, lam)
    assert scaled_convolution_check(y, z, k, m, lam)


@pytest.mark.parametrize("lam", DEFAULT_LAMBDAS)
def test_log_and_exp_are_inverse(lam):
    N = 16
    t = TruncatedSeries.variable(N)
    e_minus_one = degenerate_exp(1, lam, N) - 1
    log = degenerate_log(lam, N)
    assert log.compose(e_minus_one) == t
    assert e_minus_one.compose(log) == t


def test_log_and_exp_are_inverse_symbolically():
    L = LambdaPoly.symbol()
    N = 8
    e_minus_one = degenerate_exp(1, L, N) - 1
    assert degenerate_log(L, N).compose(e_minus_one) == TruncatedSeries.variable(N).to_lambda_ring()
