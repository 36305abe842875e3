"""Exact scalars, polynomials in the deformation parameter, and truncated power series.

Scalars are :class:`fractions.Fraction`.  :class:`LambdaPoly` is a dense
polynomial in the symbol ``L`` (the deformation parameter) with rational
coefficients.  :class:`TruncatedSeries` is a power series cut at a fixed order
whose coefficients live in one of those two rings.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, UsageError

Rational = Fraction
Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"-p/q"`` or ``"p"`` into a Fraction.

    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not _RATIONAL_RE.match(text):
        raise UsageError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise UsageError(f"zero denominator in {text!r}") from None


def format_rational(value: Scalar) -> str:
    return str(Fraction(value))


def factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


class LambdaPoly:
    """Dense polynomial in the deformation parameter over the rationals.

    Immutable. ``coeffs[i]`` is the coefficient of ``L**i``; trailing zeros are
    trimmed so the zero polynomial has no coefficients and degree ``-1``.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash: int | None = None

    @classmethod
    def symbol(cls) -> "LambdaPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Scalar) -> "LambdaPoly":
        return cls((c,))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def constant_term(self) -> Fraction:
        return self._coeffs[0] if self._coeffs else Fraction(0)

    def __call__(self, lam: Scalar) -> Fraction:
        lam = Fraction(lam)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * lam + c
        return acc

    at = __call__

    @staticmethod
    def _lift(other) -> "LambdaPoly | None":
        if isinstance(other, LambdaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LambdaPoly((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self._coeffs, o._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LambdaPoly":
        return LambdaPoly(-c for c in self._coeffs)

    def __pos__(self) -> "LambdaPoly":
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LambdaPoly(c * other for c in self._coeffs)
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return LambdaPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero constant stays inside the ring
        if isinstance(other, LambdaPoly):
            if not other.is_constant() or other.is_zero():
                raise DomainError("division by a non-constant or zero polynomial")
            other = other.constant_term()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise DomainError("division by zero")
        return LambdaPoly(c / other for c in self._coeffs)

    def __pow__(self, k: int) -> "LambdaPoly":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = LambdaPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            # agree with Fraction hashing for constants so dict keys mix cleanly
            self._hash = hash(self.constant_term()) if len(self._coeffs) <= 1 else hash(self._coeffs)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"LambdaPoly({self})"

    def __str__(self) -> str:
        return format_lambda_poly(self)


def format_lambda_poly(p: LambdaPoly | Scalar, symbol: str = "L") -> str:
    """Canonical text form: increasing powers, explicit signs, e.g. ``1 - 3/2*L + L^2``."""
    if not isinstance(p, LambdaPoly):
        return format_rational(p)
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = format_rational(mag)
        else:
            mono = symbol if i == 1 else f"{symbol}^{i}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


def format_value(v) -> str:
    return format_lambda_poly(v) if isinstance(v, LambdaPoly) else format_rational(v)


RING_Q = "Q"
RING_QL = "Q[L]"


def _ring_of(values: Sequence) -> str:
    return RING_QL if any(isinstance(v, LambdaPoly) for v in values) else RING_Q


class TruncatedSeries:
    """Power series ``c_0 + c_1 t + ... + c_N t^N`` with everything above ``N`` discarded.

    Coefficients are either all Fractions (ring ``Q``) or all LambdaPoly
    (ring ``Q[L]``).  Missing coefficients are zero-padded and excess ones
    dropped, so ``len(coeffs) == order + 1`` always holds.
    """

    __slots__ = ("order", "coeffs", "ring", "var")

    def __init__(self, coeffs: Iterable, order: int | None = None, ring: str | None = None,
                 var: str = "t"):
        cs = list(coeffs)
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise UsageError("series order must be non-negative")
        if ring is None:
            ring = _ring_of(cs)
        if ring == RING_QL:
            cs = [c if isinstance(c, LambdaPoly) else LambdaPoly.const(c) for c in cs]
            zero = LambdaPoly()
        elif ring == RING_Q:
            if any(isinstance(c, LambdaPoly) for c in cs):
                raise UsageError("LambdaPoly coefficient in a rational series")
            cs = [Fraction(c) for c in cs]
            zero = Fraction(0)
        else:
            raise UsageError(f"unknown coefficient ring {ring!r}")
        cs = cs[: order + 1]
        cs.extend([zero] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)
        self.ring = ring
        self.var = var

    # constructors

    @classmethod
    def zero(cls, order: int, ring: str = RING_Q, var: str = "t") -> "TruncatedSeries":
        return cls((), order, ring, var)

    @classmethod
    def one(cls, order: int, ring: str = RING_Q, var: str = "t") -> "TruncatedSeries":
        return cls((1,), order, ring, var)

    @classmethod
    def variable(cls, order: int, ring: str = RING_Q, var: str = "t") -> "TruncatedSeries":
        return cls((0, 1), order, ring, var)

    @classmethod
    def exp(cls, order: int, scale: Scalar = 1, var: str = "t") -> "TruncatedSeries":
        """Classical ``exp(scale * t)``."""
        scale = Fraction(scale)
        cs, term = [], Fraction(1)
        for n in range(order + 1):
            cs.append(term)
            term = term * scale / (n + 1)
        return cls(cs, order, RING_Q, var)

    # access

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _zero(self):
        return LambdaPoly() if self.ring == RING_QL else Fraction(0)

    def _check(self, other: "TruncatedSeries") -> None:
        if not isinstance(other, TruncatedSeries):
            raise UsageError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise UsageError(f"order mismatch: {self.order} vs {other.order}")
        if other.ring != self.ring:
            raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _new(self, coeffs) -> "TruncatedSeries":
        return TruncatedSeries(coeffs, self.order, self.ring, self.var)

    def with_order(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, order, self.ring, self.var)

    def to_lambda_ring(self) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, self.order, RING_QL, self.var)

    def evaluate_lambda(self, lam: Scalar) -> "TruncatedSeries":
        """Specialise a ``Q[L]`` series at a rational value of the parameter."""
        if self.ring == RING_Q:
            return self
        return TruncatedSeries((c(lam) for c in self.coeffs), self.order, RING_Q, self.var)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LambdaPoly)):
            return self._new((self.coeffs[0] + other,) + self.coeffs[1:])
        self._check(other)
        return self._new(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return self._new(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LambdaPoly)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LambdaPoly)):
            if isinstance(other, LambdaPoly) and self.ring == RING_Q:
                raise UsageError("cannot scale a rational series by a LambdaPoly")
            return self._new(c * other for c in self.coeffs)
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LambdaPoly)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_div(self, other)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DomainError("division of a series by zero")
            return self._new(c / other for c in self.coeffs)
        return NotImplemented

    def __pow__(self, k: int) -> "TruncatedSeries":
        return series_pow(self, k)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        return series_compose(self, inner)

    def shift_down(self) -> "TruncatedSeries":
        """``(f - f(0)) / t`` at one order lower."""
        return TruncatedSeries(self.coeffs[1:], self.order - 1, self.ring, self.var)

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative; the top coefficient is unknown and padded with zero."""
        return self._new(c * (i + 1) for i, c in enumerate(self.coeffs[1:]))

    def egf_coefficient(self, n: int):
        """``n!`` times the coefficient of ``t^n`` (exponential generating function reading)."""
        return self.coeffs[n] * factorial(n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.order, self.ring, self.coeffs) == (other.order, other.ring, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.order, self.ring, self.coeffs))

    def __repr__(self) -> str:
        body = ", ".join(format_value(c) for c in self.coeffs)
        return f"TruncatedSeries([{body}], order={self.order}, ring={self.ring})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order."""
    a._check(b)
    ac, bc = a.coeffs, b.coeffs
    N = a.order
    out = [a._zero() for _ in range(N + 1)]
    for i, x in enumerate(ac):
        if not x:
            continue
        for j in range(N + 1 - i):
            y = bc[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return a._new(out)


def _unit_inverse(c):
    if isinstance(c, LambdaPoly):
        if c.is_zero() or not c.is_constant():
            raise DomainError("constant term is not a unit of Q[L]")
        return Fraction(1) / c.constant_term()
    if c == 0:
        raise DomainError("constant term of the divisor is zero")
    return Fraction(1) / c


def series_div(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """Quotient with unit-constant divisor, solved coefficient by coefficient."""
    num._check(den)
    inv = _unit_inverse(den.coeffs[0])
    dc = den.coeffs
    out: list = []
    for n in range(num.order + 1):
        acc = num.coeffs[n]
        for i in range(1, n + 1):
            if dc[i]:
                acc = acc - dc[i] * out[n - i]
        out.append(acc * inv)
    return num._new(out)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(t))`` for an inner series without constant term (Horner scheme)."""
    outer._check(inner)
    if inner.coeffs[0]:
        raise DomainError("inner series of a composition must have zero constant term")
    acc = outer._new((outer.coeffs[-1],))
    for c in reversed(outer.coeffs[:-1]):
        acc = series_mul(acc, inner) + c
    return acc


def series_pow(base: TruncatedSeries, k: int) -> TruncatedSeries:
    if not isinstance(k, int) or k < 0:
        raise UsageError("series power needs a non-negative integer exponent")
    out = TruncatedSeries.one(base.order, base.ring, base.var)
    sq = base
    while k:
        if k & 1:
            out = series_mul(out, sq)
        k >>= 1
        if k:
            sq = series_mul(sq, sq)
    return out
