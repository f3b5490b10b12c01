"""
Named verification suites.

Each suite returns a :class:`SuiteResult` with hard-check counts, failures and
soft ("flagged") findings.  Hard failures fail a run; soft findings only do so
under ``strict``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .arith import count_x, count_y, is_prime, make_modulus, radical
from .asymptotics import (
    check_lemma22, check_theorem1, check_Y0_lower, check_Y0_upper, f_value,
    k_constant, lambda_constant, lower_window, upper_window,
)
from .engine import (
    DEFAULT_CONFIG, Backend, NumericConfig, constant_C, rho_at,
    rho_prime_closed_form, rho_series,
)
from .errors import VerificationError
from .explorer import residue_ordering, scan_monotonicity, verify_theorem32
from .oracle import count_coprime_order_direct, count_coprime_order_partitions

__all__ = [
    "SuiteResult", "SUITES", "run_suite", "squarefree_upto",
    "ORACLE_MODULI", "suite_oracle", "suite_theorem1", "suite_lemma22",
    "suite_y0", "suite_theorem32", "suite_monotonicity", "suite_constants",
    "random_y0_tuples",
]

ORACLE_MODULI = (2, 3, 4, 5, 6, 7, 10, 12, 15, 30)
DEFAULT_SEED = 42


def squarefree_upto(limit: int) -> list[int]:
    return [m for m in range(1, limit + 1) if radical(m) == m]


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    flagged: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def passed(self, strict: bool = False) -> bool:
        return self.ok and not (strict and self.flagged)

    def check(self, cond: bool, what) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(what)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "checks": self.checks,
            "failures": [str(f) for f in self.failures[:50]],
            "failure_count": len(self.failures),
            "flagged": [str(f) for f in self.flagged],
            "details": self.details,
            "ok": self.ok,
        }


def suite_oracle(nmax: int = 9, pmax: int = 40, mmax: int = 30,
                 cfg: NumericConfig = DEFAULT_CONFIG) -> SuiteResult:
    """Engine vs direct enumeration (n <= nmax) and vs cycle types (n <= pmax)."""
    res = SuiteResult("oracle")
    for m in ORACLE_MODULI:
        series = rho_series(m, nmax, cfg, Backend.EXACT)
        for n in range(nmax + 1):
            got = series[n] * math.factorial(n)
            res.check(got == count_coprime_order_direct(n, m), ("direct", n, m))
    for m in squarefree_upto(mmax):
        series = rho_series(m, pmax, cfg, Backend.EXACT)
        for n in range(pmax + 1):
            got = series[n] * math.factorial(n)
            res.check(got == count_coprime_order_partitions(n, m), ("partitions", n, m))
    res.details = {"direct_moduli": list(ORACLE_MODULI), "nmax": nmax, "pmax": pmax}
    return res


def suite_theorem1(moduli=None, nmax: int = 10_000,
                   cfg: NumericConfig = DEFAULT_CONFIG) -> SuiteResult:
    """Ceiling/floor and smooth power bounds for every modulus up to nmax."""
    res = SuiteResult("theorem1")
    moduli = squarefree_upto(30) if moduli is None else moduli
    margins = {}
    for m in moduli:
        C = constant_C(m, cfg)
        report = check_theorem1(rho_series(m, nmax, cfg), C)
        res.checks += report.checked()
        res.failures.extend((m,) + v for v in report.violations)
        margins[m] = report.worst_margin
    res.details = {"nmax": nmax, "worst_margin": margins,
                   "exact_cutoff": cfg.exact_cutoff}
    return res


def suite_lemma22(grid: int = 200, a_max: float = 100.0, tol: float = 1e-12) -> SuiteResult:
    res = SuiteResult("lemma22")
    for i in range(grid):
        y = -1 + (i + 1) / (grid + 1)
        for j in range(grid):
            a = 2 + (a_max - 2) * j / (grid - 1)
            try:
                check_lemma22(y, a, tol)
                res.check(True, None)
            except VerificationError as exc:
                res.check(False, str(exc))
    res.details = {"grid": grid, "a_max": a_max, "tol": tol}
    return res


def random_y0_tuples(samples: int, seed: int = DEFAULT_SEED):
    """(a, b, v, m, phi) with a in [2,100], m in [2,30], phi in [1,m], b in [0,m-1], v in [0,m]."""
    rng = random.Random(seed)
    for _ in range(samples):
        m = rng.randint(2, 30)
        yield rng.randint(2, 100), rng.randint(0, m - 1), rng.randint(0, m), m, rng.randint(1, m)


def suite_y0(samples: int = 10_000, seed: int = DEFAULT_SEED) -> SuiteResult:
    """Exact Y0 factorizations on random tuples, plus every real modulus profile."""
    res = SuiteResult("y0")
    in_window = [0, 0]
    for a, b, v, m, phi in random_y0_tuples(samples, seed):
        for k, (check, window) in enumerate(((check_Y0_upper, upper_window),
                                             (check_Y0_lower, lower_window))):
            try:
                check(a, b, v, m, phi)
                res.check(True, None)
            except VerificationError as exc:
                res.check(False, str(exc))
            in_window[k] += window(a, b, v, m, phi)
    # the tuples the induction actually uses: x_b, y_b of real moduli
    for m in squarefree_upto(30)[1:]:
        mod = make_modulus(m)
        for a in range(2, 12):
            for b in range(m):
                for check, v in ((check_Y0_upper, count_x(mod, b)),
                                 (check_Y0_lower, count_y(mod, b))):
                    try:
                        res.check(check(a, b, v, m, mod.phi) >= 0, (a, b, v, m))
                    except VerificationError as exc:
                        res.check(False, str(exc))
    res.details = {"samples": samples, "seed": seed,
                   "upper_in_window": in_window[0], "lower_in_window": in_window[1]}
    return res


def suite_theorem32(primes=(2, 3, 5, 7, 11, 13), amax: int = 1000,
                    nmax: int = 5000, cfg: NumericConfig = DEFAULT_CONFIG) -> SuiteResult:
    """Closed form vs engine, the plateau, and the monotone-ratio criterion."""
    res = SuiteResult("theorem32")
    for p in primes:
        if not is_prime(p):
            res.check(False, f"{p} is not prime")
            continue
        series = rho_series(p, nmax, cfg, Backend.EXACT)
        for n in range(nmax + 1):
            res.check(series[n] == rho_prime_closed_form(p, n), ("closed_form", p, n))
        for a in range(1, nmax // p):
            block = series.values[a * p:(a + 1) * p]
            res.check(all(v == block[0] for v in block), ("plateau", p, a))
        for key, ok in verify_theorem32(p, amax).items():
            res.check(ok, ("theorem32", p) + key)
    res.details = {"primes": list(primes), "amax": amax, "nmax": nmax}
    return res


ANOMALY = (26, 24, 999, (6, 596, 397))
M6_ORDER = [1, 0, 2, 5, 3, 4]


def suite_monotonicity(amax: int = ANOMALY[2], window_end: int = 2000,
                       cfg: NumericConfig = DEFAULT_CONFIG) -> SuiteResult:
    """(26, 24) run structure and the residue ordering of f(n, 6)."""
    res = SuiteResult("monotonicity")
    m, b, _, lengths = ANOMALY
    report = scan_monotonicity(m, b, amax, cfg, a_lo=0)
    if amax == ANOMALY[2]:
        res.check(tuple(report.run_lengths) == lengths, ("run_lengths", report.run_lengths))
    res.check(not report.unresolved, ("unresolved", report.unresolved))
    order = residue_ordering(6, (6, window_end), cfg)
    res.check(order == M6_ORDER, ("m6_order", order))
    res.details = {
        "anomaly": {"m": m, "b": b, "a_range": [0, amax],
                    "runs": [[d.value, k] for d, k in report.runs]},
        "m6_order": order,
    }
    return res


def suite_constants(pmax: int = 100, kmax: int = 10_000, et_n: int = 100_000,
                    cfg: NumericConfig = DEFAULT_CONFIG) -> SuiteResult:
    res = SuiteResult("constants")
    for p in (p for p in range(2, pmax + 1) if is_prime(p)):
        res.check(abs(lambda_constant(p) - k_constant(p)) <= 1e-10, ("lambda_p", p))
    lo = math.pi**-0.5
    for m in range(2, kmax + 1):
        k = k_constant(m)
        res.check(lo <= k < 1, ("k_bracket", m, k))
    brackets = {}
    for m in squarefree_upto(30):
        C, lam = constant_C(m, cfg), lambda_constant(m)
        res.check(float(C) <= lam <= 1, ("C_lambda", m, float(C), lam))
        brackets[m] = [str(C), lam]
    et = {}
    for p in (2, 3, 5):
        gap = abs(f_value(p, et_n, rho_at(p, et_n, cfg, Backend.FLOAT)) - k_constant(p))
        et[p] = gap
        if gap > 5 / et_n:
            res.flagged.append(("erdos_turan", p, gap))
    res.details = {"C_lambda": brackets, "erdos_turan_gap": et, "et_n": et_n}
    return res


SUITES = {
    "oracle": suite_oracle,
    "theorem1": suite_theorem1,
    "lemma22": suite_lemma22,
    "y0": suite_y0,
    "theorem32": suite_theorem32,
    "monotonicity": suite_monotonicity,
    "constants": suite_constants,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    return SUITES[name](**kwargs)
