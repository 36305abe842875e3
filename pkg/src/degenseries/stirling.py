"""Degenerate Stirling numbers of both kinds.

Second kind comes from the recurrence

    S2(n+1, k) = S2(n, k-1) + (k - n L) S2(n, k),    S2(0, 0) = 1,

with the alternating-sum formula as an independent check.  First kind is the
change of basis from ordinary falling factorials ``(x)_n`` to λ-falling
factorials ``(x)_{k,L}``, solved by back substitution on monomial expansions.
Both tables are symbolic in ``L`` and cached; rational queries evaluate the
cached polynomial.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .basics import falling_factorial_lambda
from .exact import LambdaPoly, binomial, factorial

FIRST = "first"
SECOND = "second"

_L = LambdaPoly.symbol()
_ZERO = LambdaPoly()
_ONE = LambdaPoly.const(1)


class StirlingTable:
    """Triangular table of LambdaPoly entries ``(n, k)``, ``0 <= k <= n <= max_n``.

    Growth is serialised by a lock; rows already built are never modified, so
    readers need no synchronisation.
    """

    def __init__(self, kind: str):
        if kind not in (FIRST, SECOND):
            raise ValueError(f"unknown Stirling kind {kind!r}")
        self.kind = kind
        self.rows: list[tuple[LambdaPoly, ...]] = []
        self._lock = threading.Lock()

    @property
    def max_n(self) -> int:
        return len(self.rows) - 1

    def ensure(self, max_n: int) -> None:
        if max_n <= self.max_n:
            return
        with self._lock:
            grow = _grow_second if self.kind == SECOND else _grow_first
            while self.max_n < max_n:
                self.rows.append(grow(self.rows))

    def __call__(self, n: int, k: int) -> LambdaPoly:
        if n < 0:
            raise ValueError("n must be non-negative")
        if k < 0 or k > n:
            return _ZERO
        self.ensure(n)
        return self.rows[n][k]

    def row(self, n: int) -> tuple[LambdaPoly, ...]:
        self.ensure(n)
        return self.rows[n]


def _grow_second(rows: list) -> tuple[LambdaPoly, ...]:
    if not rows:
        return (_ONE,)
    n = len(rows) - 1
    prev = rows[-1]
    out = []
    for k in range(n + 2):
        left = prev[k - 1] if k >= 1 else _ZERO
        here = prev[k] if k <= n else _ZERO
        out.append(left + (k - n * _L) * here)
    return tuple(out)


def _falling_in_x(n: int, step: LambdaPoly) -> list[LambdaPoly]:
    """Monomial coefficients (in ``x``) of ``x (x - step) ... (x - (n-1) step)``."""
    poly = [_ONE]
    for j in range(n):
        shift = j * step
        nxt = [_ZERO] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - shift * c
        poly = nxt
    return poly


def _grow_first(rows: list) -> tuple[LambdaPoly, ...]:
    n = len(rows)
    residual = _falling_in_x(n, _ONE)
    out = [_ZERO] * (n + 1)
    for k in range(n, -1, -1):
        c = residual[k]
        out[k] = c
        if c:
            basis = _falling_in_x(k, _L)
            for i, b in enumerate(basis):
                residual[i] = residual[i] - c * b
    return tuple(out)


_TABLES = {FIRST: StirlingTable(FIRST), SECOND: StirlingTable(SECOND)}


def table(kind: str) -> StirlingTable:
    return _TABLES[kind]


def s2_lambda(n: int, k: int) -> LambdaPoly:
    return _TABLES[SECOND](n, k)


def s1_lambda(n: int, k: int) -> LambdaPoly:
    return _TABLES[FIRST](n, k)


def s2_at(n: int, k: int, lam) -> Fraction:
    return s2_lambda(n, k)(lam)


def s1_at(n: int, k: int, lam) -> Fraction:
    return s1_lambda(n, k)(lam)


def s2_lambda_explicit(n: int, k: int, lam) -> Fraction:
    """``(1/k!) sum_l C(k,l) (-1)^(k-l) (l)_{n,lam}``."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    total = sum(
        binomial(k, l) * (-1) ** (k - l) * falling_factorial_lambda(l, n, lam)
        for l in range(k + 1)
    )
    return Fraction(total) / factorial(k)


def orthogonality_defect(n: int, k: int) -> LambdaPoly:
    """``sum_m S2(n,m) S1(m,k) - delta(n,k)``; identically zero when the tables are consistent."""
    total = sum((s2_lambda(n, m) * s1_lambda(m, k) for m in range(k, n + 1)), _ZERO)
    return total - (1 if n == k else 0)


def signed_factorial_sum_sides(n: int) -> tuple[LambdaPoly, LambdaPoly]:
    """Both sides of ``sum_k S2(n,k) (-1)^(k-1) (k-1)! = (-1)^(n-1) L^(n-1) (n-1)!`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    lhs = sum((s2_lambda(n, k) * ((-1) ** (k - 1) * factorial(k - 1)) for k in range(1, n + 1)), _ZERO)
    rhs = _L ** (n - 1) * ((-1) ** (n - 1) * factorial(n - 1))
    return lhs, rhs


def classical_s2(n: int, k: int) -> int:
    """Classical Stirling numbers of the second kind, ``S(n+1,k) = S(n,k-1) + k S(n,k)``."""
    return _classical(n, k, second=True)


def classical_s1(n: int, k: int) -> int:
    """Signed classical Stirling numbers of the first kind, ``s(n+1,k) = s(n,k-1) - n s(n,k)``."""
    return _classical(n, k, second=False)


_CLASSICAL: dict[bool, list[list[int]]] = {True: [[1]], False: [[1]]}


def _classical(n: int, k: int, second: bool) -> int:
    if k < 0 or k > n:
        return 0
    rows = _CLASSICAL[second]
    while len(rows) <= n:
        m = len(rows) - 1
        prev = rows[-1]
        nxt = []
        for j in range(m + 2):
            left = prev[j - 1] if j >= 1 else 0
            here = prev[j] if j <= m else 0
            nxt.append(left + (j if second else -m) * here)
        rows.append(nxt)
    return rows[n][k]
