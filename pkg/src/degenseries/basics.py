"""λ-falling factorials, degenerate exponential and degenerate logarithm.

Scalar arguments may be Fractions or :class:`LambdaPoly` values; the product
formulas only need ring operations, so passing ``LambdaPoly.symbol()`` as the
parameter yields the symbolic result.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError
from .exact import LambdaPoly, TruncatedSeries, binomial, factorial


def _coerce(v):
    return v if isinstance(v, LambdaPoly) else Fraction(v)


def falling_factorial_lambda(x, n: int, lam):
    """``x (x - lam) (x - 2 lam) ... (x - (n-1) lam)``; the empty product is 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x, lam = _coerce(x), _coerce(lam)
    out = Fraction(1)
    for j in range(n):
        out = out * (x - j * lam)
    return out


def falling_factorial(x, n: int):
    return falling_factorial_lambda(x, n, 1)


def lambda_binomial(t, p: int, lam):
    return falling_factorial_lambda(t, p, lam) / factorial(p)


def degenerate_exp(x, lam, N: int) -> TruncatedSeries:
    """``e_lam^x(t)`` through ``t^N``: coefficient ``n`` is ``(x)_{n,lam} / n!``."""
    x, lam = _coerce(x), _coerce(lam)
    coeffs = []
    ff = Fraction(1)
    for n in range(N + 1):
        coeffs.append(ff / factorial(n))
        ff = ff * (x - n * lam)
    return TruncatedSeries(coeffs, N)


def degenerate_exp_scaled(x, lam, scale, N: int) -> TruncatedSeries:
    """``e_lam^x(scale * t)``."""
    base = degenerate_exp(x, lam, N)
    scale = _coerce(scale)
    return TruncatedSeries((c * scale**n for n, c in enumerate(base.coeffs)), N)


def degenerate_log(lam, N: int) -> TruncatedSeries:
    """``log_lam(1 + t) = ((1+t)^lam - 1) / lam``.

    Coefficient ``n >= 1`` is ``(lam-1)(lam-2)...(lam-n+1) / n!``, which is
    the same as ``lam^(n-1) (1)_{n,1/lam} / n!`` for nonzero ``lam`` and stays
    finite at ``lam = 0`` (classical ``log(1+t)``).
    """
    lam = _coerce(lam)
    coeffs = [Fraction(0)]
    prod = Fraction(1)
    for n in range(1, N + 1):
        coeffs.append(prod / factorial(n))
        prod = prod * (lam - n)
    return TruncatedSeries(coeffs, N)


def scaling_identity_check(z, k, p: int, lam) -> bool:
    """``(zk)_{p,lam} == k^p (z)_{p,lam/k} == z^p (k)_{p,lam/z}``."""
    z, k, lam = Fraction(z), Fraction(k), Fraction(lam)
    if z == 0 or k == 0:
        raise DomainError("scaling identity needs nonzero z and k")
    direct = falling_factorial_lambda(z * k, p, lam)
    via_k = k**p * falling_factorial_lambda(z, p, lam / k)
    via_z = z**p * falling_factorial_lambda(k, p, lam / z)
    return direct == via_k == via_z


def binomial_convolution_sides(y, z, k, m: int, lam) -> tuple[Fraction, Fraction]:
    """``(y + zk)_{m,lam}`` and ``sum_l C(m,l) (zk)_{l,lam} (y)_{m-l,lam}``."""
    y, z, k, lam = map(Fraction, (y, z, k, lam))
    lhs = falling_factorial_lambda(y + z * k, m, lam)
    rhs = sum(
        binomial(m, l) * falling_factorial_lambda(z * k, l, lam) * falling_factorial_lambda(y, m - l, lam)
        for l in range(m + 1)
    )
    return lhs, rhs


def binomial_convolution_check(y, z, k, m: int, lam) -> bool:
    lhs, rhs = binomial_convolution_sides(y, z, k, m, lam)
    return lhs == rhs


def scaled_convolution_sides(y, z, k, m: int, lam) -> tuple[Fraction, Fraction]:
    """``(y + zk)_{m,lam}`` and ``sum_p C(m,p) z^p (y)_{m-p,lam} (k)_{p,lam/z}``; z must be nonzero."""
    y, z, k, lam = map(Fraction, (y, z, k, lam))
    if z == 0:
        raise DomainError("z must be nonzero")
    lhs = falling_factorial_lambda(y + z * k, m, lam)
    rhs = sum(
        binomial(m, p) * z**p * falling_factorial_lambda(y, m - p, lam)
        * falling_factorial_lambda(k, p, lam / z)
        for p in range(m + 1)
    )
    return lhs, rhs


def scaled_convolution_check(y, z, k, m: int, lam) -> bool:
    lhs, rhs = scaled_convolution_sides(y, z, k, m, lam)
    return lhs == rhs
