"""Degenerate Bell, Fubini, Bernoulli, Euler and poly-Bernoulli polynomials.

Bell and Fubini polynomials are kept symbolic in the parameter (their
coefficients are Stirling sums).  Everything that needs series division is
computed at a rational parameter value.  Each family has a generating
function path so the Stirling-sum formulas can be cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .basics import degenerate_exp, degenerate_exp_scaled, falling_factorial_lambda
from .errors import DomainError
from .exact import LambdaPoly, TruncatedSeries, binomial, factorial, series_div
from .stirling import s2_lambda


def default_order(n: int) -> int:
    return max(16, n + 2)


@dataclass(frozen=True)
class PolyInX:
    """Polynomial in ``x`` whose coefficients are LambdaPoly (symbolic) or Fractions."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d >= 0 and not self.coeffs[d]:
            d -= 1
        return d

    def specialize(self, lam) -> "PolyInX":
        return PolyInX(tuple(c(lam) if isinstance(c, LambdaPoly) else Fraction(c) for c in self.coeffs))

    def __call__(self, x, lam=None):
        """Evaluate at ``x``; with ``lam`` given the parameter is fixed first."""
        p = self.specialize(lam) if lam is not None else self
        acc = Fraction(0)
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc

    def as_series(self, lam, N: int, var: str = "x") -> TruncatedSeries:
        return TruncatedSeries(self.specialize(lam).coeffs, N, var=var)


@dataclass(frozen=True)
class PolyBernoulliParams:
    n: int
    k: int
    lam: Fraction
    x: Fraction = Fraction(0)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")


# -- Bell ---------------------------------------------------------------------

def bell_poly(n: int) -> PolyInX:
    return PolyInX(tuple(s2_lambda(n, k) for k in range(n + 1)))


def bell_gf_series(lam, x, N: int) -> TruncatedSeries:
    """``exp(x (e_lam(t) - 1))`` through ``t^N``."""
    inner = degenerate_exp(1, lam, N) - 1
    return TruncatedSeries.exp(N, x).compose(inner)


def bell_via_gf(n: int, lam, x, N: int | None = None) -> Fraction:
    return bell_gf_series(lam, x, N or default_order(n)).egf_coefficient(n)


# -- Fubini -------------------------------------------------------------------

def fubini_poly(n: int) -> PolyInX:
    return PolyInX(tuple(s2_lambda(n, k) * factorial(k) for k in range(n + 1)))


def fubini_gf_series(lam, x, N: int) -> TruncatedSeries:
    """``1 / (1 - x (e_lam(t) - 1))`` through ``t^N``."""
    den = 1 - (degenerate_exp(1, lam, N) - 1) * Fraction(x)
    return series_div(TruncatedSeries.one(N), den)


def fubini_via_gf(n: int, lam, x, N: int | None = None) -> Fraction:
    return fubini_gf_series(lam, x, N or default_order(n)).egf_coefficient(n)


# -- Carlitz Bernoulli and Euler --------------------------------------------

def bernoulli_gf_series(lam, x, N: int) -> TruncatedSeries:
    """``t / (e_lam(t) - 1) * e_lam^x(t)``; the division uses ``(e_lam(t) - 1)/t``."""
    q = (degenerate_exp(1, lam, N + 1) - 1).shift_down()
    kernel = series_div(TruncatedSeries.one(N), q)
    return kernel * degenerate_exp(x, lam, N)


def bernoulli_carlitz(n: int, lam, x=0, N: int | None = None) -> Fraction:
    return bernoulli_gf_series(lam, x, N or default_order(n)).egf_coefficient(n)


def euler_gf_series(lam, x, N: int) -> TruncatedSeries:
    """``2 / (e_lam(t) + 1) * e_lam^x(t)``."""
    kernel = series_div(TruncatedSeries((2,), N), degenerate_exp(1, lam, N) + 1)
    return kernel * degenerate_exp(x, lam, N)


def euler_degenerate(n: int, lam, x=0, N: int | None = None) -> Fraction:
    return euler_gf_series(lam, x, N or default_order(n)).egf_coefficient(n)


# -- polylogarithm and poly-Bernoulli -----------------------------------------

def _inverse_power(j: int, k: int) -> Fraction:
    return Fraction(1, j**k) if k >= 0 else Fraction(j ** (-k))


def polylog_compose(k: int, u: TruncatedSeries) -> TruncatedSeries:
    """``Li_k(u) = sum_{j>=1} u^j / j^k`` truncated at the order of ``u``."""
    if u.coeffs[0]:
        raise DomainError("polylogarithm argument must have zero constant term")
    acc = TruncatedSeries.zero(u.order, u.ring, u.var)
    power = u
    for j in range(1, u.order + 1):
        acc = acc + power * _inverse_power(j, k)
        power = power * u
    return acc


def poly_bernoulli_gf_series(k: int, lam, x, N: int) -> TruncatedSeries:
    """``Li_k(1 - e_lam(-t)) / (1 - e_lam(-t)) * e_lam^x(-t)`` through ``t^N``."""
    u = 1 - degenerate_exp_scaled(1, lam, -1, N + 1)
    ratio = series_div(polylog_compose(k, u).shift_down(), u.shift_down())
    return ratio * degenerate_exp_scaled(x, lam, -1, N)


def poly_bernoulli(params: PolyBernoulliParams, N: int | None = None) -> Fraction:
    series = poly_bernoulli_gf_series(params.k, params.lam, params.x, N or default_order(params.n))
    return series.egf_coefficient(params.n)


def poly_bernoulli_explicit(n: int, k: int, lam) -> Fraction:
    """``sum_j (-1)^(n-j) j! / (j+1)^k * S2(n, j)`` at the given parameter."""
    return sum(
        (
            (-1) ** (n - j) * factorial(j) * _inverse_power(j + 1, k) * s2_lambda(n, j)(lam)
            for j in range(n + 1)
        ),
        Fraction(0),
    )


def poly_bernoulli_from_numbers(n: int, k: int, lam, x) -> Fraction:
    """``sum_l C(n,l) (-1)^(n-l) beta^(k)_l (x)_{n-l,lam}``, built from the numbers at ``x = 0``."""
    return sum(
        (
            binomial(n, l) * (-1) ** (n - l) * poly_bernoulli(PolyBernoulliParams(l, k, Fraction(lam)))
            * falling_factorial_lambda(x, n - l, lam)
            for l in range(n + 1)
        ),
        Fraction(0),
    )


# -- identities tying the families together -----------------------------------

def fubini_half_identity(n: int, lam) -> tuple[Fraction, Fraction, Fraction]:
    """Three expressions for ``F_{n,lam}(-1/2)``.

    Fubini polynomial at -1/2, the Bernoulli difference
    ``2/(n+1) (beta_{n+1,lam} - 2^(n+1) beta_{n+1,lam/2})`` and the Stirling sum
    ``sum_p (-1)^p p! / 2^p S2(n, p)``.
    """
    lam = Fraction(lam)
    half = Fraction(-1, 2)
    fub = fubini_poly(n)(half, lam)
    bern = Fraction(2, n + 1) * (
        bernoulli_carlitz(n + 1, lam) - 2 ** (n + 1) * bernoulli_carlitz(n + 1, lam / 2)
    )
    stir = sum(
        (Fraction((-1) ** p * factorial(p), 2**p) * s2_lambda(n, p)(lam) for p in range(n + 1)),
        Fraction(0),
    )
    return fub, bern, stir


def fubini_geometric_coefficients(m: int, lam, N: int) -> list[Fraction]:
    """Coefficients of ``1/(1-x) F_{m,lam}(x/(1-x))`` through ``x^N``."""
    geometric = TruncatedSeries([1] * (N + 1), N, var="x")
    u = geometric - 1
    composed = fubini_poly(m).as_series(lam, N).compose(u)
    return list((geometric * composed).coeffs)


def fubini_geometric_identity(m: int, lam, N: int) -> bool:
    """``1/(1-x) F_{m,lam}(x/(1-x)) == sum_n (n)_{m,lam} x^n`` through ``x^N``."""
    if N < m:
        raise ValueError("order must be at least m")
    got = fubini_geometric_coefficients(m, lam, N)
    return all(got[n] == falling_factorial_lambda(n, m, lam) for n in range(N + 1))


def h_series(mu, gamma, lam, N: int) -> TruncatedSeries:
    """``1 / (mu e_lam(gamma t) + 1)``."""
    mu = Fraction(mu)
    if mu == -1:
        raise DomainError("mu = -1 makes the constant term vanish")
    den = degenerate_exp_scaled(1, lam, gamma, N) * mu + 1
    return series_div(TruncatedSeries.one(N), den)


def h_derivative_sides(mu, gamma, lam, m: int, N: int) -> tuple[Fraction, Fraction]:
    """m-th derivative at 0 of ``1/(mu e_lam(gamma t) + 1)`` and its Fubini closed form."""
    mu, gamma = Fraction(mu), Fraction(gamma)
    if N < m:
        raise ValueError("order must be at least m")
    lhs = h_series(mu, gamma, lam, N).egf_coefficient(m)
    rhs = gamma**m / (1 + mu) * fubini_poly(m)(-mu / (1 + mu), lam)
    return lhs, rhs


def h_derivative_identity(mu, gamma, lam, m: int, N: int) -> bool:
    lhs, rhs = h_derivative_sides(mu, gamma, lam, m, N)
    return lhs == rhs


def euler_fubini_sides(n: int, lam, x) -> tuple[Fraction, Fraction]:
    """``E_{n,lam}(x)`` from its generating function, and ``sum_m C(n,m) F_{m,lam}(-1/2) (x)_{n-m,lam}``."""
    lhs = euler_degenerate(n, lam, x)
    rhs = sum(
        (
            binomial(n, m) * fubini_poly(m)(Fraction(-1, 2), lam) * falling_factorial_lambda(x, n - m, lam)
            for m in range(n + 1)
        ),
        Fraction(0),
    )
    return lhs, rhs


def euler_fubini_identity(n: int, lam, x) -> bool:
    lhs, rhs = euler_fubini_sides(n, lam, x)
    return lhs == rhs


def coefficients_egf(series: TruncatedSeries, upto: int) -> Sequence[Fraction]:
    return [series.egf_coefficient(n) for n in range(upto + 1)]
