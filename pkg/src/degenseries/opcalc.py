"""Operator ``x^(1-L) D`` acting on sums of generalized monomials ``x^(a + b L)``."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .basics import falling_factorial, falling_factorial_lambda
from .errors import UsageError
from .exact import LambdaPoly, TruncatedSeries, factorial, format_lambda_poly
from .families import bell_poly
from .stirling import s2_lambda

_L = LambdaPoly.symbol()


class LambdaExpPoly:
    """Finite sum ``sum c_{a,b} x^(a + b L)`` with integer ``a, b`` and LambdaPoly ``c``.

    Zero coefficients are never stored, so equality is term-for-term.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], LambdaPoly] = {}
        for (a, b), c in items:
            key = (int(a), int(b))
            acc[key] = acc.get(key, LambdaPoly()) + c
        self.terms = {k: (v if isinstance(v, LambdaPoly) else LambdaPoly.const(v))
                      for k, v in sorted(acc.items()) if v}

    @classmethod
    def monomial(cls, a: int, b: int = 0, coeff=1) -> "LambdaExpPoly":
        return cls({(a, b): coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "LambdaExpPoly":
        """Ordinary polynomial ``sum_a c_a x^a``."""
        return cls({(a, 0): c for a, c in enumerate(coeffs)})

    def is_ordinary(self) -> bool:
        return all(b == 0 and a >= 0 for a, b in self.terms)

    def __add__(self, other: "LambdaExpPoly") -> "LambdaExpPoly":
        return LambdaExpPoly(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "LambdaExpPoly") -> "LambdaExpPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "LambdaExpPoly":
        return LambdaExpPoly({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaExpPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __repr__(self) -> str:
        return f"LambdaExpPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.terms.items():
            exp = format_lambda_poly(LambdaPoly((a, b)))
            parts.append(f"({format_lambda_poly(c)})*x^({exp})")
        return " + ".join(parts)


def apply_xd_operator(f: LambdaExpPoly) -> LambdaExpPoly:
    """One application of ``x^(1-L) D``: ``c x^(a+bL)`` becomes ``c (a+bL) x^(a+(b-1)L)``."""
    return LambdaExpPoly({(a, b - 1): c * LambdaPoly((a, b)) for (a, b), c in f.terms.items()})


def iterate_xd_operator(f: LambdaExpPoly, n: int) -> LambdaExpPoly:
    for _ in range(n):
        f = apply_xd_operator(f)
    return f


def rhs_eq78(f: LambdaExpPoly, n: int) -> LambdaExpPoly:
    """``x^(-nL) sum_k S2(n,k) x^k D^k f`` for an ordinary polynomial ``f``."""
    if not f.is_ordinary():
        raise UsageError("the Stirling form of the operator power needs an ordinary polynomial")
    if n < 0:
        raise UsageError("n must be non-negative")
    out = []
    for (a, _), c in f.terms.items():
        for k in range(min(n, a) + 1):
            # x^k D^k x^a = (a)_k x^a
            out.append(((a, -n), c * s2_lambda(n, k) * falling_factorial(a, k)))
    return LambdaExpPoly(out)


def eq78_check(f: LambdaExpPoly, n: int) -> bool:
    return iterate_xd_operator(f, n) == rhs_eq78(f, n)


def stirling_row_from_operator(n: int) -> list[LambdaPoly]:
    """Recover ``S2(n, 0..n)`` from ``(x^(1-L) D)^n x^a`` for ``a = 0..n``.

    The operator sends ``x^a`` to ``(a)_{n,L} x^(a-nL)``; since
    ``(a)_{n,L} = sum_k S2(n,k) (a)_k`` and ``(a)_k`` vanishes for ``k > a``,
    the row is solved by forward substitution.
    """
    row: list[LambdaPoly] = []
    for a in range(n + 1):
        image = iterate_xd_operator(LambdaExpPoly.monomial(a), n)
        value = image.terms.get((a, -n), LambdaPoly())
        known = sum((row[k] * falling_factorial(a, k) for k in range(a)), LambdaPoly())
        row.append((value - known) / factorial(a))
    return row


def dobinski_sides(n: int, lam, N: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``sum_l (l)_{n,lam} x^l / l!`` and ``phi_{n,lam}(x) e^x``, both through ``x^N``."""
    lhs = TruncatedSeries((falling_factorial_lambda(l, n, lam) / factorial(l) for l in range(N + 1)), N, var="x")
    rhs = bell_poly(n).as_series(lam, N) * TruncatedSeries.exp(N, var="x")
    return lhs, rhs


def dobinski_check(n: int, lam, N: int) -> bool:
    if N < n:
        raise UsageError("order must be at least n")
    lhs, rhs = dobinski_sides(n, lam, N)
    guard = N - n
    return lhs.coeffs[: guard + 1] == rhs.coeffs[: guard + 1]


def weighted_coefficient_sides(n: int, g: TruncatedSeries, lam) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Coefficient side ``sum_k c_k (k)_{n,lam} x^k`` and operator side ``sum_k S2(n,k) x^k D^k g``."""
    lam = Fraction(lam)
    N = g.order
    lhs = TruncatedSeries((c * falling_factorial_lambda(k, n, lam) for k, c in enumerate(g.coeffs)), N, var="x")
    rhs = TruncatedSeries.zero(N, var="x")
    deriv = g
    for k in range(n + 1):
        if k:
            deriv = deriv.derivative()
        shifted = TruncatedSeries([0] * k + list(deriv.coeffs), N, var="x")
        rhs = rhs + shifted * s2_lambda(n, k)(lam)
    return lhs, rhs


def eq76_general_check(n: int, g: TruncatedSeries, lam) -> bool:
    lhs, rhs = weighted_coefficient_sides(n, g, lam)
    guard = g.order - n
    return lhs.coeffs[: guard + 1] == rhs.coeffs[: guard + 1]
