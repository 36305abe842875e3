"""Finite-support degenerate power series and the alternating binomial transform.

A :class:`DegenerateSeries` is ``f(t) = sum_k a_k (t)_{k,lam}`` with finitely
many ``a_k``.  Its n-th transform ``sum_k C(n,k) (-1)^k f(y + z k)`` vanishes
once ``n`` exceeds the support, which turns every weighted sum over ``n``
below into a finite one.  The registry pairs each transform identity with an
independent right-hand side built from Stirling numbers and the polynomial
families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from . import families
from .basics import falling_factorial_lambda, lambda_binomial
from .errors import DomainError, UsageError
from .exact import binomial, factorial, format_rational
from .stirling import classical_s1, classical_s2, s1_lambda, s2_lambda

# Sums over the transform index run this far past the support; the extra
# terms must vanish, so truncation is checked rather than assumed.
TAIL = 2


@dataclass(frozen=True)
class DegenerateSeries:
    coeffs: tuple
    lam: Fraction

    def __init__(self, coeffs, lam):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise UsageError("a degenerate series needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "lam", Fraction(lam))

    @property
    def support(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def basis(cls, m: int, lam, scale=1) -> "DegenerateSeries":
        """``scale * (t)_{m,lam}``."""
        return cls([0] * m + [scale], lam)

    def __call__(self, t) -> Fraction:
        return eval_dseries(self, t)


def eval_dseries(f: DegenerateSeries, t) -> Fraction:
    t = Fraction(t)
    total = Fraction(0)
    ff = Fraction(1)
    for k, a in enumerate(f.coeffs):
        if a:
            total += a * ff
        ff *= t - k * f.lam
    return total


def dseries_derivative_at_zero(f: DegenerateSeries) -> Fraction:
    """``f'(0) = sum_{k>=1} a_k (-1)^(k-1) lam^(k-1) (k-1)!``."""
    return sum(
        (a * (-1) ** (k - 1) * f.lam ** (k - 1) * factorial(k - 1) for k, a in enumerate(f.coeffs) if k >= 1),
        Fraction(0),
    )


def finite_difference(f: DegenerateSeries, n: int, y, z) -> Fraction:
    """``sum_{k=0}^n C(n,k) (-1)^k f(y + z k)``."""
    y, z = Fraction(y), Fraction(z)
    return sum(((-1) ** k * binomial(n, k) * eval_dseries(f, y + z * k) for k in range(n + 1)), Fraction(0))


@dataclass
class IdentityCheckResult:
    identity_id: str
    params: dict
    lhs: Fraction
    rhs: Fraction
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.lhs == self.rhs

    def to_record(self, suite: str = "transform") -> dict:
        return {
            "suite": suite,
            "id": self.identity_id,
            "params": {k: _fmt_param(v) for k, v in self.params.items()},
            "pass": self.passed,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


def _fmt_param(v):
    if isinstance(v, (list, tuple)):
        return [format_rational(c) for c in v]
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    return format_rational(v)


# -- helpers for right-hand sides --------------------------------------------

def _s2(p: int, n: int, lam) -> Fraction:
    return s2_lambda(p, n)(lam)


def _scaled_lambda(p: Mapping) -> Fraction:
    if p["z"] == 0:
        raise DomainError("z must be nonzero when lam/z appears")
    return p["lam"] / p["z"]


def _f(p: Mapping) -> DegenerateSeries:
    return DegenerateSeries(p["a"], p["lam"])


def _weighted_transform(p: Mapping, weight: Callable[[int], Fraction], y=None, start: int = 0) -> Fraction:
    """``sum_{n>=start} weight(n) * transform_n`` through the support plus ``TAIL``."""
    f = _f(p)
    y = p.get("y", 0) if y is None else y
    return sum(
        (weight(n) * finite_difference(f, n, y, p["z"]) for n in range(start, f.support + TAIL + 1)),
        Fraction(0),
    )


def _inner_stirling(p: Mapping, m: int, y, kernel: Callable[[int], Fraction]) -> Fraction:
    """``sum_{q=0}^m C(m,q) (y)_{m-q,lam} z^q kernel(q)``."""
    lam, z = p["lam"], p["z"]
    return sum(
        (binomial(m, q) * falling_factorial_lambda(y, m - q, lam) * z**q * kernel(q) for q in range(m + 1)),
        Fraction(0),
    )


@lru_cache(maxsize=4096)
def _bell_at(m: int, lam: Fraction, x: Fraction) -> Fraction:
    return families.bell_poly(m)(x, lam)


@lru_cache(maxsize=4096)
def _fubini_at(m: int, lam: Fraction, x: Fraction) -> Fraction:
    return families.fubini_poly(m)(x, lam)


@lru_cache(maxsize=1024)
def _poly_bernoulli_series(r: int, lam: Fraction, x: Fraction, N: int):
    return families.poly_bernoulli_gf_series(r, lam, x, N)


@lru_cache(maxsize=1024)
def _bernoulli_series(lam: Fraction, N: int):
    return families.bernoulli_gf_series(lam, 0, N)


@lru_cache(maxsize=1024)
def _euler_series(lam: Fraction, x: Fraction, N: int):
    return families.euler_gf_series(lam, x, N)


def poly_bernoulli_value(m: int, r: int, lam, x) -> Fraction:
    return _poly_bernoulli_series(r, Fraction(lam), Fraction(x), families.default_order(m)).egf_coefficient(m)


def bernoulli_number(m: int, lam) -> Fraction:
    return _bernoulli_series(Fraction(lam), families.default_order(m)).egf_coefficient(m)


def euler_value(m: int, lam, x) -> Fraction:
    return _euler_series(Fraction(lam), Fraction(x), families.default_order(m)).egf_coefficient(m)


# -- identity sides ------------------------------------------------------------

def _t1_lhs(p):
    n, m, y, z, lam = p["n"], p["m"], p["y"], p["z"], p["lam"]
    return sum(((-1) ** k * binomial(n, k) * falling_factorial_lambda(y + z * k, m, lam) for k in range(n + 1)),
               Fraction(0))


def _t1_rhs(p):
    n, lz = p["n"], _scaled_lambda(p)
    return (-1) ** n * factorial(n) * _inner_stirling(p, p["m"], p["y"], lambda q: _s2(q, n, lz))


def _t3_lhs(p):
    return finite_difference(_f(p), p["n"], p["y"], p["z"])


def _t3_rhs(p):
    n, lz = p["n"], _scaled_lambda(p)
    total = sum(
        (a * _inner_stirling(p, m, p["y"], lambda q: _s2(q, n, lz)) for m, a in enumerate(p["a"]) if a),
        Fraction(0),
    )
    return (-1) ** n * factorial(n) * total


def _t3y0_lhs(p):
    return finite_difference(_f(p), p["n"], 0, p["z"])


def _t3y0_rhs(p):
    n, z, lz = p["n"], p["z"], _scaled_lambda(p)
    return (-1) ** n * factorial(n) * sum((a * _s2(m, n, lz) * z**m for m, a in enumerate(p["a"])), Fraction(0))


def _t4_lhs(p):
    return _t1_lhs({**p, "m": p["n"]})


def _t4_rhs(p):
    n = p["n"]
    return (-1) ** n * factorial(n) * p["z"] ** n


def _l5_lhs(p):
    n, lam = p["n"], p["lam"]
    return sum(((-1) ** (k - 1) * factorial(k - 1) * _s2(n, k, lam) for k in range(1, n + 1)), Fraction(0))


def _l5_rhs(p):
    n, lam = p["n"], p["lam"]
    return (-1) ** (n - 1) * lam ** (n - 1) * factorial(n - 1)


def _t6_lhs(p):
    return _weighted_transform(p, lambda n: Fraction(1, n), y=0, start=1)


def _t6_rhs(p):
    return -p["z"] * dseries_derivative_at_zero(_f(p))


def _l8_lhs(p):
    n, q, z, lam = p["n"], p["p"], p["z"], p["lam"]
    return sum(((-1) ** k * binomial(n, k) * lambda_binomial(z * k, q, lam) for k in range(n + 1)), Fraction(0))


def _l8_rhs(p):
    n, q, z = p["n"], p["p"], p["z"]
    return (-1) ** n * Fraction(factorial(n), factorial(q)) * _s2(q, n, _scaled_lambda(p)) * z**q


def _t9_lhs(p):
    n, q, z = p["n"], p["p"], p["z"]
    return sum((classical_s2(m, n) * classical_s1(q, m) * z**m for m in range(n, q + 1)), Fraction(0))


def _t9_rhs(p):
    n, q, z, lam = p["n"], p["p"], p["z"], p["lam"]
    lz = _scaled_lambda(p)
    return sum((_s2(m, n, lz) * s1_lambda(q, m)(lam) * z**m for m in range(n, q + 1)), Fraction(0))


def _t10_lhs(p):
    x = p["x"]
    return _weighted_transform(p, lambda n: x**n / factorial(n))


def _t10_rhs(p):
    lz, x = _scaled_lambda(p), p["x"]
    return sum(
        (a * _inner_stirling(p, m, p["y"], lambda q: _bell_at(q, lz, -x)) for m, a in enumerate(p["a"]) if a),
        Fraction(0),
    )


def _t10y0_lhs(p):
    x = p["x"]
    return _weighted_transform(p, lambda n: x**n / factorial(n), y=0)


def _t10y0_rhs(p):
    lz, x, z = _scaled_lambda(p), p["x"], p["z"]
    return sum((a * z**m * _bell_at(m, lz, -x) for m, a in enumerate(p["a"])), Fraction(0))


def _e33_lhs(p):
    return _weighted_transform(p, lambda n: Fraction((-1) ** n, factorial(n)), y=0)


def _e33_rhs(p):
    lz, z = _scaled_lambda(p), p["z"]
    return sum((a * z**m * _bell_at(m, lz, Fraction(1)) for m, a in enumerate(p["a"])), Fraction(0))


def _binom_transform(p, n):
    q, z, lam = p["p"], p["z"], p["lam"]
    return sum(((-1) ** k * binomial(n, k) * lambda_binomial(z * k, q, lam) for k in range(n + 1)), Fraction(0))


def _e34_lhs(p):
    x = p["x"]
    return sum((x**n / factorial(n) * _binom_transform(p, n) for n in range(p["p"] + TAIL + 1)), Fraction(0))


def _e34_rhs(p):
    q, z = p["p"], p["z"]
    return z**q / factorial(q) * _bell_at(q, _scaled_lambda(p), -p["x"])


def _t11_lhs(p):
    x = p["x"]
    return _weighted_transform(p, lambda n: x**n)


def _t11_rhs(p):
    lz, x = _scaled_lambda(p), p["x"]
    return sum(
        (a * _inner_stirling(p, m, p["y"], lambda q: _fubini_at(q, lz, -x)) for m, a in enumerate(p["a"]) if a),
        Fraction(0),
    )


def _t11y0_lhs(p):
    x = p["x"]
    return _weighted_transform(p, lambda n: x**n, y=0)


def _t11y0_rhs(p):
    lz, x, z = _scaled_lambda(p), p["x"], p["z"]
    return sum((a * z**m * _fubini_at(m, lz, -x) for m, a in enumerate(p["a"])), Fraction(0))


def _t11binom_lhs(p):
    x = p["x"]
    return sum((x**n * _binom_transform(p, n) for n in range(p["p"] + TAIL + 1)), Fraction(0))


def _t11binom_rhs(p):
    q, z = p["p"], p["z"]
    return z**q / factorial(q) * _fubini_at(q, _scaled_lambda(p), -p["x"])


def _t12_lhs(p):
    x = p["x"]
    return _weighted_transform(p, lambda n: x**n / n, y=0, start=1)


def _t12_rhs(p):
    lz, x, z = _scaled_lambda(p), p["x"], p["z"]
    return sum(
        (
            a * z**m * sum(((-1) ** q * factorial(q - 1) * _s2(m, q, lz) * x**q for q in range(1, m + 1)), Fraction(0))
            for m, a in enumerate(p["a"]) if m >= 1
        ),
        Fraction(0),
    )


def _inv_pow(j: int, r: int) -> Fraction:
    return Fraction(1, j**r) if r >= 0 else Fraction(j ** (-r))


def _t13_lhs(p):
    r = p["r"]
    return _weighted_transform(p, lambda n: _inv_pow(n + 1, r))


def _t13_rhs(p):
    r, z, y = p["r"], p["z"], p["y"]
    lz = _scaled_lambda(p)
    return sum(
        (a * (-1) ** m * z**m * poly_bernoulli_value(m, r, lz, y / z) for m, a in enumerate(p["a"]) if a),
        Fraction(0),
    )


def _t13y0_lhs(p):
    r = p["r"]
    return _weighted_transform(p, lambda n: _inv_pow(n + 1, r), y=0)


def _t13y0_rhs(p):
    r, z = p["r"], p["z"]
    lz = _scaled_lambda(p)
    return sum(
        (a * (-1) ** m * z**m * poly_bernoulli_value(m, r, lz, 0) for m, a in enumerate(p["a"]) if a),
        Fraction(0),
    )


def _e43_lhs(p):
    r, x = p["r"], p["x"]
    return _weighted_transform(p, lambda n: x**n * _inv_pow(n + 1, r))


def _e43_kernel(p, q, lz):
    r, x = p["r"], p["x"]
    return sum(
        ((-1) ** j * factorial(j) * _s2(q, j, lz) * x**j * _inv_pow(j + 1, r) for j in range(q + 1)),
        Fraction(0),
    )


def _e43_rhs(p):
    lz = _scaled_lambda(p)
    return sum(
        (a * _inner_stirling(p, m, p["y"], lambda q: _e43_kernel(p, q, lz)) for m, a in enumerate(p["a"]) if a),
        Fraction(0),
    )


def _e44_lhs(p):
    r, x = p["r"], p["x"]
    return _weighted_transform(p, lambda n: x**n * _inv_pow(n + 1, r), y=0)


def _e44_rhs(p):
    lz, z = _scaled_lambda(p), p["z"]
    return sum((a * z**m * _e43_kernel(p, m, lz) for m, a in enumerate(p["a"])), Fraction(0))


def _e53_lhs(p):
    m, r, y, lam = p["m"], p["r"], p["y"], p["lam"]
    f = DegenerateSeries.basis(m, lam)
    return sum((_inv_pow(n + 1, r) * finite_difference(f, n, y, 1) for n in range(m + TAIL + 1)), Fraction(0))


def _e53_rhs(p):
    m = p["m"]
    return (-1) ** m * poly_bernoulli_value(m, p["r"], p["lam"], p["y"])


def t14_weight(m: int, lam) -> Fraction:
    """``(-lam)^m (1)_{m+1,1/lam} / (m+1)!`` written as ``(-1)^m (lam-1)...(lam-m) / (m+1)!``."""
    lam = Fraction(lam)
    prod = Fraction(1)
    for j in range(1, m + 1):
        prod *= lam - j
    return (-1) ** m * prod / factorial(m + 1)


def _t14_lhs(p):
    n, lam = p["n"], p["lam"]
    total = Fraction(0)
    for m in range(n + TAIL + 3):
        inner = sum(((-1) ** k * binomial(m, k) * falling_factorial_lambda(k, n, lam) for k in range(m + 1)),
                    Fraction(0))
        total += t14_weight(m, lam) * inner
    return total


def _t14_rhs(p):
    return bernoulli_number(p["n"], p["lam"])


def _e58_lhs(p):
    return _weighted_transform(p, lambda n: Fraction(1, 2**n), y=0)


def _e58_rhs(p):
    lz, z = _scaled_lambda(p), p["z"]
    total = Fraction(0)
    for m, a in enumerate(p["a"]):
        if a:
            diff = bernoulli_number(m + 1, lz) - 2 ** (m + 1) * bernoulli_number(m + 1, lz / 2)
            total += a * z**m * Fraction(2, m + 1) * diff
    return total


def _e69_lhs(p):
    return _weighted_transform({**p, "z": Fraction(1)}, lambda n: Fraction(1, 2**n))


def _e69_rhs(p):
    return sum((a * euler_value(m, p["lam"], p["y"]) for m, a in enumerate(p["a"]) if a), Fraction(0))


def _e71_lhs(p):
    m, lam = p["m"], p["lam"]
    f = DegenerateSeries.basis(m, lam)
    half = Fraction(1, 2)
    return sum((half**n * finite_difference(f, n, half, 1) for n in range(m + TAIL + 1)), Fraction(0))


def _e71_rhs(p):
    return euler_value(p["m"], p["lam"], Fraction(1, 2))


@dataclass(frozen=True)
class Identity:
    identity_id: str
    anchor: str
    params: tuple[str, ...]
    lhs: Callable[[Mapping], Fraction]
    rhs: Callable[[Mapping], Fraction]
    needs_nonzero_z: bool = True


def _reg(*items: Identity) -> dict[str, Identity]:
    return {i.identity_id: i for i in items}


REGISTRY: dict[str, Identity] = _reg(
    Identity("T1", "alternating sum of (y+zk)_{m,lam} via degenerate S2", ("n", "m", "y", "z", "lam"), _t1_lhs, _t1_rhs),
    Identity("T3", "n-th difference of a degenerate series", ("a", "n", "y", "z", "lam"), _t3_lhs, _t3_rhs),
    Identity("T3.y0", "n-th difference at y = 0", ("a", "n", "z", "lam"), _t3y0_lhs, _t3y0_rhs),
    Identity("T4", "n-th difference of (y+zk)_{n,lam} is constant", ("n", "y", "z", "lam"), _t4_lhs, _t4_rhs, needs_nonzero_z=False),
    Identity("L5", "signed factorial sum of S2(n,k)", ("n", "lam"), _l5_lhs, _l5_rhs, needs_nonzero_z=False),
    Identity("T6", "1/n-weighted transform gives -z f'(0)", ("a", "z", "lam"), _t6_lhs, _t6_rhs, needs_nonzero_z=False),
    Identity("L8", "difference of lambda-binomial coefficients", ("n", "p", "z", "lam"), _l8_lhs, _l8_rhs),
    Identity("T9", "classical against degenerate Stirling products", ("n", "p", "z", "lam"), _t9_lhs, _t9_rhs),
    Identity("T10", "exponential-weighted transform gives Bell values", ("a", "x", "y", "z", "lam"), _t10_lhs, _t10_rhs),
    Identity("T10.y0", "exponential weights at y = 0", ("a", "x", "z", "lam"), _t10y0_lhs, _t10y0_rhs),
    Identity("E33", "exponential weights at x = -1", ("a", "z", "lam"), _e33_lhs, _e33_rhs),
    Identity("E34", "exponential weights on a lambda-binomial", ("p", "x", "z", "lam"), _e34_lhs, _e34_rhs),
    Identity("T11", "geometric-weighted transform gives Fubini values", ("a", "x", "y", "z", "lam"), _t11_lhs, _t11_rhs),
    Identity("T11.y0", "geometric weights at y = 0", ("a", "x", "z", "lam"), _t11y0_lhs, _t11y0_rhs),
    Identity("T11.binom", "geometric weights on a lambda-binomial", ("p", "x", "z", "lam"), _t11binom_lhs, _t11binom_rhs),
    Identity("T12", "x^n/n weights give signed factorial Stirling sums", ("a", "x", "z", "lam"), _t12_lhs, _t12_rhs),
    Identity("T13", "1/(n+1)^r weights give poly-Bernoulli values", ("a", "r", "y", "z", "lam"), _t13_lhs, _t13_rhs),
    Identity("T13.y0", "1/(n+1)^r weights at y = 0", ("a", "r", "z", "lam"), _t13y0_lhs, _t13y0_rhs),
    Identity("E43", "weighted transform with x^n/(n+1)^r", ("a", "r", "x", "y", "z", "lam"), _e43_lhs, _e43_rhs),
    Identity("E44", "weighted transform with x^n/(n+1)^r, y = 0", ("a", "r", "x", "z", "lam"), _e44_lhs, _e44_rhs),
    Identity("E53", "1/(n+1)^r weights on (t)_{m,lam}, z = 1", ("m", "r", "y", "lam"), _e53_lhs, _e53_rhs,
             needs_nonzero_z=False),
    Identity("T14", "Bernoulli numbers from weighted S2 sums", ("n", "lam"), _t14_lhs, _t14_rhs, needs_nonzero_z=False),
    Identity("E58", "Fubini at -1/2 via Bernoulli differences", ("a", "z", "lam"), _e58_lhs, _e58_rhs),
    Identity("E69", "Euler-weighted transform", ("a", "y", "lam"), _e69_lhs, _e69_rhs, needs_nonzero_z=False),
    Identity("E71", "Euler polynomial at 1/2", ("m", "lam"), _e71_lhs, _e71_rhs, needs_nonzero_z=False),
)

_INT_PARAMS = {"n", "m", "p", "r"}


def _normalise(identity: Identity, params: Mapping) -> dict:
    missing = [k for k in identity.params if k not in params]
    if missing:
        raise UsageError(f"{identity.identity_id}: missing parameters {missing}")
    out: dict = {}
    for k in identity.params:
        v = params[k]
        if k == "a":
            out[k] = tuple(Fraction(c) for c in v)
            if not out[k]:
                raise UsageError("coefficient list 'a' is empty")
        elif k in _INT_PARAMS:
            if isinstance(v, Fraction) and v.denominator != 1:
                raise DomainError(f"{k} must be an integer")
            out[k] = int(v)
            if k != "r" and out[k] < 0:
                raise DomainError(f"{k} must be non-negative")
        else:
            out[k] = Fraction(v)
    if identity.needs_nonzero_z and out.get("z", 1) == 0:
        raise DomainError(f"{identity.identity_id}: z must be nonzero")
    if identity.identity_id == "L5" and out["n"] < 1:
        raise DomainError("L5 needs n >= 1")
    if identity.identity_id == "T9" and out["p"] < out["n"]:
        raise DomainError("T9 is checked for p >= n")
    return out


def verify_identity(identity_id: str, params: Mapping, registry: Mapping[str, Identity] | None = None
                    ) -> IdentityCheckResult:
    registry = REGISTRY if registry is None else registry
    try:
        identity = registry[identity_id]
    except KeyError:
        raise UsageError(f"unknown identity {identity_id!r}") from None
    p = _normalise(identity, params)
    return IdentityCheckResult(identity_id, p, Fraction(identity.lhs(p)), Fraction(identity.rhs(p)))
