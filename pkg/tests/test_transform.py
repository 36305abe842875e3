from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degenseries import DomainError, UsageError
from degenseries.transform import (
    REGISTRY,
    TAIL,
    DegenerateSeries,
    finite_difference,
    t14_weight,
    verify_identity,
)

from oracles import newton_difference

small = st.fractions(min_value=-4, max_value=4, max_denominator=5)
nonzero = small.filter(bool)
coeff_lists = st.lists(small, min_size=1, max_size=6)


def test_theorem4_example():
    res = verify_identity("T4", {"n": 2, "y": 1, "z": 3, "lam": Fraction(1, 2)})
    assert res.lhs == res.rhs == 18
    assert res.passed


def test_signed_factorial_example():
    res = verify_identity("L5", {"n": 2, "lam": 1})
    assert res.lhs == res.rhs == -1


def test_bernoulli_weight_example():
    res = verify_identity("T14", {"n": 1, "lam": Fraction(2, 7)})
    assert res.lhs == res.rhs == Fraction(-5, 14)
    assert t14_weight(0, Fraction(1, 3)) == 1


def test_record_shape():
    rec = verify_identity("T1", {"n": 2, "m": 3, "y": 1, "z": 2, "lam": Fraction(1, 2)}).to_record("transform")
    assert set(rec) == {"suite", "id", "params", "pass", "lhs", "rhs"}
    assert rec["pass"] is True


def test_errors():
    with pytest.raises(UsageError):
        verify_identity("nope", {})
    with pytest.raises(UsageError):
        verify_identity("T1", {"n": 1})
    with pytest.raises(DomainError):
        verify_identity("T1", {"n": 1, "m": 1, "y": 0, "z": 0, "lam": 1})
    with pytest.raises(DomainError):
        verify_identity("T9", {"n": 3, "p": 1, "z": 1, "lam": 1})


@settings(max_examples=60)
@given(coeff_lists, small, st.integers(0, 8), small, nonzero)
def test_difference_matches_brute_force(coeffs, lam, n, y, z):
    f = DegenerateSeries(coeffs, lam)
    assert finite_difference(f, n, y, z) == newton_difference(coeffs, lam, n, y, z)


@settings(max_examples=60)
@given(coeff_lists, small, small, nonzero, st.integers(1, 4))
def test_difference_vanishes_past_support(coeffs, lam, y, z, extra):
    f = DegenerateSeries(coeffs, lam)
    assert finite_difference(f, f.support + extra, y, z) == 0


@settings(max_examples=60)
@given(coeff_lists, coeff_lists, small, small, st.integers(0, 6), small, nonzero)
def test_difference_is_linear(a, b, alpha, lam, n, y, z):
    size = max(len(a), len(b))
    a, b = a + [0] * (size - len(a)), b + [0] * (size - len(b))
    combo = DegenerateSeries([alpha * u + v for u, v in zip(a, b)], lam)
    lhs = finite_difference(combo, n, y, z)
    rhs = alpha * finite_difference(DegenerateSeries(a, lam), n, y, z) + finite_difference(
        DegenerateSeries(b, lam), n, y, z)
    assert lhs == rhs


def _params(identity, draw):
    out = {}
    for name in identity.params:
        if name == "a":
            out[name] = draw(st.lists(small, min_size=1, max_size=5))
        elif name in ("n", "m"):
            out[name] = draw(st.integers(1 if identity.identity_id == "L5" else 0, 6))
        elif name == "p":
            out[name] = draw(st.integers(0, 6))
        elif name == "r":
            out[name] = draw(st.integers(-2, 3))
        elif name == "z":
            out[name] = draw(nonzero)
        else:
            out[name] = draw(small)
    if identity.identity_id == "T9" and out["p"] < out["n"]:
        out["n"], out["p"] = out["p"], out["n"]
    return out


@pytest.mark.parametrize("identity_id", sorted(REGISTRY))
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_registry_identity_holds(identity_id, data):
    identity = REGISTRY[identity_id]
    params = _params(identity, data.draw)
    res = verify_identity(identity_id, params)
    assert res.lhs == res.rhs, params


def test_tail_is_positive():
    assert TAIL >= 1
