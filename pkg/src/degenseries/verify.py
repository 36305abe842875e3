"""Verification suites and the JSON report.

Each suite walks a deterministic parameter grid (seeded, so reports are
byte-identical for equal configs) and emits one record per check with the
exact left- and right-hand sides.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping

from . import __version__, families, transform
from .basics import (
    binomial_convolution_sides,
    degenerate_exp,
    degenerate_log,
    falling_factorial_lambda,
    scaled_convolution_sides,
)
from .errors import UsageError
from .exact import LambdaPoly, TruncatedSeries, binomial, factorial, format_rational, format_value
from .opcalc import (
    LambdaExpPoly,
    dobinski_sides,
    weighted_coefficient_sides,
    iterate_xd_operator,
    rhs_eq78,
    stirling_row_from_operator,
)
from .stirling import (
    classical_s1,
    classical_s2,
    signed_factorial_sum_sides,
    orthogonality_defect,
    s1_lambda,
    s2_lambda,
    s2_lambda_explicit,
)

SCHEMA = 1
SUITES = ("basics", "stirling", "families", "transform", "opcalc")
DEFAULT_LAMBDAS = tuple(Fraction(v) for v in ("0", "1", "-1", "1/2", "-1/3", "2/5", "7/3"))
DEFAULT_SEED = 20190917
R_VALUES = (-2, -1, 0, 1, 2, 3)


def default_seed() -> int:
    env = os.environ.get("DEGEN_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"DEGEN_SEED must be an integer, got {env!r}") from None


@dataclass
class SuiteConfig:
    suites: tuple[str, ...] = SUITES
    max_n: int = 8
    truncation: int = 16
    lambda_samples: tuple[Fraction, ...] = DEFAULT_LAMBDAS
    seed: int = field(default_factory=default_seed)
    output_path: str | None = None
    inject_fault: str | None = None

    def __post_init__(self):
        suites: list[str] = []
        for s in self.suites:
            if s == "all":
                suites.extend(x for x in SUITES if x not in suites)
            elif s in SUITES:
                if s not in suites:
                    suites.append(s)
            else:
                raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES + ('all',))}")
        self.suites = tuple(x for x in SUITES if x in suites)
        if self.max_n < 1:
            raise UsageError("max_n must be at least 1")
        if self.truncation < self.max_n + 2:
            raise UsageError("truncation must be at least max_n + 2")
        samples: list[Fraction] = []
        for v in self.lambda_samples:
            v = Fraction(v)
            if v not in samples:
                samples.append(v)
        if not samples:
            raise UsageError("lambda_samples must not be empty")
        self.lambda_samples = tuple(samples)
        if self.inject_fault is not None and self.inject_fault not in transform.REGISTRY:
            raise UsageError(f"cannot inject a fault into unknown identity {self.inject_fault!r}")

    def echo(self) -> dict:
        return {
            "suites": list(self.suites),
            "max_n": self.max_n,
            "truncation": self.truncation,
            "lambda_samples": [format_rational(v) for v in self.lambda_samples],
            "seed": self.seed,
            "inject_fault": self.inject_fault,
        }


def _fmt(v):
    if isinstance(v, TruncatedSeries):
        return [format_value(c) for c in v.coeffs]
    if isinstance(v, (list, tuple)):
        return [_fmt(c) for c in v]
    if isinstance(v, LambdaExpPoly):
        return str(v)
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, str)):
        return v
    return format_value(v)


def record(suite: str, identity_id: str, params: Mapping, lhs, rhs) -> dict:
    return {
        "suite": suite,
        "id": identity_id,
        "params": {k: _fmt(v) for k, v in params.items()},
        "pass": lhs == rhs,
        "lhs": _fmt(lhs),
        "rhs": _fmt(rhs),
    }


class Grid:
    """Deterministic parameter pools derived from a config."""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.lams = list(cfg.lambda_samples)
        self.values = list(cfg.lambda_samples)
        self.nonzero = [v for v in self.values if v != 0] or [Fraction(1)]

    def pool(self, name: str) -> list[Fraction]:
        if name == "lam":
            return self.lams
        if name == "z":
            return self.nonzero
        return self.values

    def tuples(self, names: Iterable[str]) -> list[tuple[Fraction, ...]]:
        """Latin-style sweep so every pool value hits every slot, plus two seeded draws."""
        names = list(names)
        if not names:
            return [()]
        pools = [self.pool(n) for n in names]
        width = max(len(p) for p in pools)
        out: list[tuple[Fraction, ...]] = []
        for i in range(width):
            t = tuple(p[(i * (j + 1) + j) % len(p)] for j, p in enumerate(pools))
            if t not in out:
                out.append(t)
        for _ in range(2):
            t = tuple(self.rng.choice(p) for p in pools)
            if t not in out:
                out.append(t)
        return out

    def lambda_points(self, count: int) -> list[Fraction]:
        """``count`` distinct rationals, starting with the configured samples."""
        pts = list(self.lams)
        j = 1
        while len(pts) < count:
            cand = Fraction(j, 3) if j % 2 else Fraction(-j, 7)
            if cand not in pts:
                pts.append(cand)
            j += 1
        return pts[:count]

    def coefficient_lists(self) -> list[tuple[Fraction, ...]]:
        supports = sorted({0, 1, 2, max(self.cfg.max_n // 2, 1), self.cfg.max_n})
        out = []
        for m in supports:
            a = [Fraction(self.rng.randint(-5, 5), self.rng.randint(1, 4)) for _ in range(m + 1)]
            if a[-1] == 0:
                a[-1] = Fraction(1)
            out.append(tuple(a))
        return out


# -- suites -------------------------------------------------------------------

def suite_basics(cfg: SuiteConfig, grid: Grid) -> list[dict]:
    recs = []
    N = cfg.truncation
    for (z, k, lam) in grid.tuples(("z", "z", "lam")):
        for p in range(cfg.max_n + 1):
            direct = falling_factorial_lambda(z * k, p, lam)
            recs.append(record("basics", "E14.k", {"z": z, "k": k, "p": p, "lam": lam},
                               direct, k**p * falling_factorial_lambda(z, p, lam / k)))
            recs.append(record("basics", "E14.z", {"z": z, "k": k, "p": p, "lam": lam},
                               direct, z**p * falling_factorial_lambda(k, p, lam / z)))
    for (y, z, k, lam) in grid.tuples(("y", "z", "x", "lam")):
        for m in range(cfg.max_n + 1):
            params = {"y": y, "z": z, "k": k, "m": m, "lam": lam}
            recs.append(record("basics", "E13", params, *binomial_convolution_sides(y, z, k, m, lam)))
            recs.append(record("basics", "E15", params, *scaled_convolution_sides(y, z, k, m, lam)))
    for lam in grid.lams:
        ident = TruncatedSeries.variable(N)
        dexp_m1 = degenerate_exp(1, lam, N) - 1
        dlog = degenerate_log(lam, N)
        recs.append(record("basics", "log.exp", {"lam": lam, "order": N}, dlog.compose(dexp_m1), ident))
        recs.append(record("basics", "exp.log", {"lam": lam, "order": N}, dexp_m1.compose(dlog), ident))
        for x in grid.values:
            for n in range(cfg.max_n + 1):
                recs.append(record("basics", "ffl.lambda0", {"x": x, "n": n},
                                   falling_factorial_lambda(x, n, 0), x**n))
    return recs


def suite_stirling(cfg: SuiteConfig, grid: Grid) -> list[dict]:
    recs = []
    top = cfg.max_n
    for n in range(top + 1):
        pts = grid.lambda_points(n + 2)
        for k in range(n + 1):
            for lam in pts:
                recs.append(record("stirling", "S2.explicit", {"n": n, "k": k, "lam": lam},
                                   s2_lambda(n, k)(lam), s2_lambda_explicit(n, k, lam)))
            recs.append(record("stirling", "orthogonality", {"n": n, "k": k},
                               orthogonality_defect(n, k), LambdaPoly()))
            recs.append(record("stirling", "S2.classical", {"n": n, "k": k},
                               s2_lambda(n, k)(0), classical_s2(n, k)))
            recs.append(record("stirling", "S1.classical", {"n": n, "k": k},
                               s1_lambda(n, k)(0), classical_s1(n, k)))
        if n >= 1:
            lhs, rhs = signed_factorial_sum_sides(n)
            recs.append(record("stirling", "L5", {"n": n}, lhs, rhs))
    return recs


def suite_families(cfg: SuiteConfig, grid: Grid) -> list[dict]:
    recs = []
    N = cfg.truncation
    top = cfg.max_n + 2
    xs = grid.values
    for lam in grid.lams:
        for x in xs:
            bell = families.bell_gf_series(lam, x, N)
            fub = families.fubini_gf_series(lam, x, N)
            for n in range(min(top, N) + 1):
                params = {"n": n, "lam": lam, "x": x}
                recs.append(record("families", "bell.gf", params,
                                   families.bell_poly(n)(x, lam), bell.egf_coefficient(n)))
                recs.append(record("families", "fubini.gf", params,
                                   families.fubini_poly(n)(x, lam), fub.egf_coefficient(n)))
    for k in R_VALUES:
        for lam in grid.lams:
            numbers = families.poly_bernoulli_gf_series(k, lam, 0, N)
            for n in range(cfg.max_n + 1):
                recs.append(record("families", "polybernoulli.explicit", {"n": n, "k": k, "lam": lam},
                                   numbers.egf_coefficient(n), families.poly_bernoulli_explicit(n, k, lam)))
        for (lam, x) in grid.tuples(("lam", "x")):
            numbers = families.poly_bernoulli_gf_series(k, lam, 0, N)
            poly = families.poly_bernoulli_gf_series(k, lam, x, N)
            for n in range(cfg.max_n + 1):
                conv = sum(
                    (binomial(n, l) * (-1) ** (n - l) * numbers.egf_coefficient(l)
                     * falling_factorial_lambda(x, n - l, lam) for l in range(n + 1)),
                    Fraction(0),
                )
                recs.append(record("families", "polybernoulli.shift", {"n": n, "k": k, "lam": lam, "x": x},
                                   poly.egf_coefficient(n), conv))
    for n in range(top + 1):
        for lam in grid.lambda_points(n + 2):
            fub, bern, stir = families.fubini_half_identity(n, lam)
            recs.append(record("families", "T15.bernoulli", {"n": n, "lam": lam}, fub, bern))
            recs.append(record("families", "T15.stirling", {"n": n, "lam": lam}, fub, stir))
    for m in range(min(6, cfg.max_n) + 1):
        for lam in grid.lams:
            got = families.fubini_geometric_coefficients(m, lam, N)
            want = [falling_factorial_lambda(n, m, lam) for n in range(N + 1)]
            recs.append(record("families", "T16", {"m": m, "lam": lam, "order": N}, got, want))
    for (lam, x) in grid.tuples(("lam", "x")):
        for n in range(cfg.max_n + 1):
            lhs, rhs = families.euler_fubini_sides(n, lam, x)
            recs.append(record("families", "T17", {"n": n, "lam": lam, "x": x}, lhs, rhs))
    mus = [v for v in grid.values if v != -1]
    for (mu, gamma, lam) in grid.tuples(("x", "z", "lam")):
        if mu not in mus:
            mu = Fraction(1, 2)
        series = families.h_series(mu, gamma, lam, N)
        for m in range(cfg.max_n + 1):
            rhs = gamma**m / (1 + mu) * families.fubini_poly(m)(-mu / (1 + mu), lam)
            recs.append(record("families", "h.derivative", {"mu": mu, "gamma": gamma, "lam": lam, "m": m},
                               series.egf_coefficient(m), rhs))
    for lam in grid.lams:
        h = families.h_series(1, 1, lam, N)
        euler = families.euler_gf_series(lam, 0, N)
        recs.append(record("families", "h.euler", {"lam": lam, "order": N}, h * 2, euler))
    return recs


def _registry_with_fault(identity_id: str) -> dict:
    reg = dict(transform.REGISTRY)
    base = reg[identity_id]
    reg[identity_id] = replace(base, rhs=lambda p, _rhs=base.rhs: _rhs(p) + 1)
    return reg


def transform_grid(cfg: SuiteConfig, grid: Grid, identity: transform.Identity) -> list[dict]:
    """Parameter dicts for one registry entry."""
    names = identity.params
    rational = [n for n in names if n in ("x", "y", "z", "lam")]
    ints = [n for n in names if n in ("n", "m", "p", "r")]
    top = cfg.max_n
    int_ranges = {"n": range(top + 1), "m": range(top + 1), "p": range(top + 1), "r": R_VALUES}
    if identity.identity_id == "L5":
        int_ranges["n"] = range(1, top + 1)
    if identity.identity_id == "T4":
        # full product over the sample grid
        combos = [(y, z, lam) for y in grid.values for z in grid.nonzero for lam in grid.lams]
    else:
        combos = grid.tuples(rational)
    fs = grid.coefficient_lists() if "a" in names else [None]
    out = []

    def int_combos(keys):
        if not keys:
            yield {}
            return
        head, rest = keys[0], keys[1:]
        for v in int_ranges[head]:
            for tail in int_combos(rest):
                yield {head: v, **tail}

    for ivals in int_combos(ints):
        if identity.identity_id == "T9" and ivals["p"] < ivals["n"]:
            continue
        for a in fs:
            for combo in combos:
                p = dict(zip(rational, combo))
                p.update(ivals)
                if a is not None:
                    p["a"] = a
                out.append({k: p[k] for k in names})
    return out


def suite_transform(cfg: SuiteConfig, grid: Grid, registry: Mapping | None = None) -> list[dict]:
    if registry is None:
        registry = _registry_with_fault(cfg.inject_fault) if cfg.inject_fault else transform.REGISTRY
    recs = []
    for identity_id in transform.REGISTRY:
        for params in transform_grid(cfg, grid, registry[identity_id]):
            res = transform.verify_identity(identity_id, params, registry)
            recs.append(res.to_record("transform"))
    return recs


def suite_opcalc(cfg: SuiteConfig, grid: Grid) -> list[dict]:
    recs = []
    top = cfg.max_n
    N = cfg.truncation
    for a in range(top + 1):
        mono = LambdaExpPoly.monomial(a)
        for n in range(top + 1):
            recs.append(record("opcalc", "E78", {"a": a, "n": n}, iterate_xd_operator(mono, n), rhs_eq78(mono, n)))
    for n in range(top + 1):
        recs.append(record("opcalc", "E78.recurrence", {"n": n},
                           stirling_row_from_operator(n), [s2_lambda(n, k) for k in range(n + 1)]))
    for lam in grid.lams:
        for n in range(top + 1):
            lhs, rhs = dobinski_sides(n, lam, N)
            g = N - n
            recs.append(record("opcalc", "E72.dobinski", {"n": n, "lam": lam, "order": N},
                               list(lhs.coeffs[: g + 1]), list(rhs.coeffs[: g + 1])))
    rand = TruncatedSeries([Fraction(grid.rng.randint(-4, 4), grid.rng.randint(1, 3)) for _ in range(N + 1)], N)
    gs = {"exp": TruncatedSeries.exp(N), "geometric": TruncatedSeries([1] * (N + 1), N), "seeded": rand}
    for name, g in gs.items():
        for lam in grid.lams:
            for n in range(top + 1):
                lhs, rhs = weighted_coefficient_sides(n, g, lam)
                guard = N - n
                recs.append(record("opcalc", "E76", {"g": name, "n": n, "lam": lam},
                                   list(lhs.coeffs[: guard + 1]), list(rhs.coeffs[: guard + 1])))
    return recs


# -- notes on printed formulas that were read differently ---------------------

def _note_t6() -> dict:
    f = transform.DegenerateSeries([0, 1], 0)
    z = Fraction(1)
    lhs = sum((transform.finite_difference(f, n, 0, z) / n for n in range(1, 4)), Fraction(0))
    printed = -z * sum(
        (a * (-1) ** m * f.lam ** (m - 1) * factorial(m - 1) for m, a in enumerate(f.coeffs) if m >= 1),
        Fraction(0),
    )
    return {
        "id": "T6",
        "subject": "sign of the closed form for the 1/n-weighted transform",
        "printed": "-z * sum a_m (-1)^m lam^(m-1) (m-1)!",
        "checked": "-z * f'(0) = z * sum a_m (-1)^m lam^(m-1) (m-1)!",
        "evidence": {"a": ["0", "1"], "z": "1", "lam": "0", "lhs": format_rational(lhs),
                     "printed_rhs": format_rational(printed)},
    }


def _note_e58() -> dict:
    a, z, lam = (Fraction(0), Fraction(1)), Fraction(3), Fraction(1, 2)
    lhs = transform.verify_identity("E58", {"a": a, "z": z, "lam": lam}).lhs
    lz = lam / z
    printed = sum(
        (c * z**m * Fraction(2, m + 1) * (transform.bernoulli_number(m + 1, lz)
                                          - 2 ** (m + 1) * transform.bernoulli_number(m + 1, lam / 2**z))
         for m, c in enumerate(a) if c),
        Fraction(0),
    )
    return {
        "id": "E58",
        "subject": "second Bernoulli parameter in the Fubini-at-minus-one-half transform",
        "printed": "beta_{m+1, lam/2^z}",
        "checked": "beta_{m+1, lam/(2z)}",
        "evidence": {"a": ["0", "1"], "z": "3", "lam": "1/2", "lhs": format_rational(lhs),
                     "printed_rhs": format_rational(printed)},
    }


def _note_e71() -> dict:
    m, lam, half = 2, Fraction(1, 3), Fraction(1, 2)
    f = transform.DegenerateSeries.basis(m, lam)
    printed = sum((half**m * transform.finite_difference(f, n, half, 1) for n in range(m + 1)), Fraction(0))
    return {
        "id": "E71",
        "subject": "weight in the finite form of the Euler polynomial at 1/2",
        "printed": "(1/2)^m",
        "checked": "(1/2)^n",
        "evidence": {"m": m, "lam": "1/3", "euler": format_rational(transform.euler_value(m, lam, half)),
                     "printed_value": format_rational(printed)},
    }


STATIC_NOTES = {
    "T9": {
        "id": "T9",
        "subject": "index range of the classical versus degenerate Stirling product sums",
        "printed": "n >= p >= 0",
        "checked": "p >= n >= 0 (both sums run m = n..p)",
    },
    "E9": {
        "id": "E9",
        "subject": "polylogarithm summand",
        "printed": "x^k / n^k",
        "checked": "x^n / n^k (forced by Li_1(x) = -log(1-x))",
    },
    "E29": {
        "id": "E29",
        "subject": "power of t in the classical Stirling expansion of ((1+t)^z - 1)^n / n!",
        "printed": "t^n / p!",
        "checked": "t^p / p!",
    },
    "E74": {
        "id": "E74",
        "subject": "coefficient index in the operator applied to a power series",
        "printed": "a_k (k)_{n,lam}",
        "checked": "a_n (k)_{n,lam}",
    },
}


def suite_notes(suite: str) -> list[dict]:
    if suite == "transform":
        return [_note_t6(), STATIC_NOTES["T9"], _note_e58(), _note_e71()]
    if suite == "families":
        return [STATIC_NOTES["E9"]]
    if suite == "stirling":
        return [STATIC_NOTES["E29"]]
    if suite == "opcalc":
        return [STATIC_NOTES["E74"]]
    return []


_RUNNERS = {
    "basics": suite_basics,
    "stirling": suite_stirling,
    "families": suite_families,
    "transform": suite_transform,
    "opcalc": suite_opcalc,
}


def run_suites(cfg: SuiteConfig, registry: Mapping | None = None) -> dict:
    records: list[dict] = []
    notes: list[dict] = []
    by_suite: dict[str, dict] = {}
    for suite in cfg.suites:
        grid = Grid(replace(cfg))
        if suite == "transform":
            recs = suite_transform(cfg, grid, registry)
        else:
            recs = _RUNNERS[suite](cfg, grid)
        failures = sum(1 for r in recs if not r["pass"])
        by_suite[suite] = {"total": len(recs), "passed": len(recs) - failures, "failures": failures}
        records.extend(recs)
        notes.extend(suite_notes(suite))
    failures = sum(1 for r in records if not r["pass"])
    return {
        "schema": SCHEMA,
        "tool": {"name": "degenseries", "version": __version__},
        "config": cfg.echo(),
        "summary": {"total": len(records), "passed": len(records) - failures, "failures": failures,
                    "by_suite": by_suite},
        "notes": notes,
        "records": records,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
