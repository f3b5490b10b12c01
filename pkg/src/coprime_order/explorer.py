"""
Residue-class behaviour of f(n, m) = rho(n, m) (n/m)^(1 - phi/m).

Residues are 0-based: class b holds n = a*r + b with 0 <= b < r (r the
radical).  Figure-style labels running over 1..r map r to residue 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from .arith import Modulus, is_prime
from .asymptotics import f_mpfr
from .engine import DEFAULT_CONFIG, NumericConfig, as_modulus, iter_rho
from .errors import DomainError

__all__ = [
    "Direction", "MonotonicityReport", "scan_monotonicity", "compare_f",
    "verify_theorem32", "theorem32_expected", "residue_ordering",
    "residue_spread", "residue_label", "f_values_at",
]


class Direction(str, enum.Enum):
    UP = "up"
    DOWN = "down"
    FLAT = "flat"


def residue_label(b: int, r: int) -> int:
    """Label in 1..r used by figure captions (residue 0 is shown as r)."""
    return b if b else r


@dataclass
class MonotonicityReport:
    modulus: Modulus
    residue: int
    a_lo: int
    a_hi: int
    runs: list = field(default_factory=list)
    # a-values whose comparison with a+1 fell inside the float precision band
    unresolved: list = field(default_factory=list)

    @property
    def label(self) -> int:
        return residue_label(self.residue, self.modulus.radical)

    @property
    def run_lengths(self) -> list[int]:
        return [length for _, length in self.runs]

    @property
    def directions(self) -> list[Direction]:
        return [d for d, _ in self.runs]

    @property
    def eventually_monotonic_from(self) -> int | None:
        """First a of the final run, or None if that run is flat or empty."""
        if not self.runs or self.runs[-1][0] is Direction.FLAT:
            return None
        return self.a_hi - self.runs[-1][1]


def _exact_f_side(mod: Modulus, n1: int, rho1: Fraction, n2: int, rho2: Fraction) -> int:
    # sign of f(n2) - f(n1): f^r is proportional to rho^r n^(r - phi)
    r, e = mod.radical, mod.radical - mod.phi
    lhs = rho2**r * n2**e
    rhs = rho1**r * n1**e
    return (lhs > rhs) - (lhs < rhs)


def compare_f(mod: Modulus, n1: int, rho1, n2: int, rho2, bits: int) -> Direction | None:
    """Direction of f(n1) -> f(n2).

    Two exact inputs always get a definite answer.  With a floating-point input
    a difference within 8 ulps at ``bits`` returns None.
    """
    work = bits + 64
    f1, f2 = f_mpfr(mod, n1, rho1, work), f_mpfr(mod, n2, rho2, work)
    diff = f2 - f1
    scale = max(abs(f1), abs(f2))
    exact = isinstance(rho1, Fraction) and isinstance(rho2, Fraction)
    band = scale * gmpy2.mpfr(2) ** ((16 - work) if exact else (4 - bits))
    if abs(diff) > band:
        return Direction.UP if diff > 0 else Direction.DOWN
    if not exact:
        return None
    side = _exact_f_side(mod, n1, rho1, n2, rho2)
    return {1: Direction.UP, -1: Direction.DOWN, 0: Direction.FLAT}[side]


def f_values_at(mod: Modulus | int, ns, cfg: NumericConfig = DEFAULT_CONFIG) -> dict:
    """rho(n) for each requested n, from one hybrid pass up to max(ns)."""
    mod = as_modulus(mod)
    wanted = set(ns)
    out = {}
    stream = iter_rho(mod, cfg)
    for n in range(max(wanted) + 1):
        value = next(stream)
        if n in wanted:
            out[n] = value
    return out


def scan_monotonicity(
    mod: Modulus | int,
    b: int,
    a_hi: int,
    cfg: NumericConfig = DEFAULT_CONFIG,
    a_lo: int | None = None,
) -> MonotonicityReport:
    """Maximal runs of f(a r + b) for a_lo <= a <= a_hi.

    Compares consecutive a; the run lengths therefore sum to a_hi - a_lo.
    a_lo defaults to 0, or 1 when b = 0 (f is undefined at n = 0).
    """
    mod = as_modulus(mod)
    r = mod.radical
    if not 0 <= b < r:
        raise DomainError(f"residue {b} outside [0, {r - 1}]")
    if a_lo is None:
        a_lo = 0 if b else 1
    if a_lo * r + b < 1 or a_hi <= a_lo:
        raise DomainError("need a_hi > a_lo and a_lo*r + b >= 1")
    ns = [a * r + b for a in range(a_lo, a_hi + 1)]
    rho = f_values_at(mod, ns, cfg)
    report = MonotonicityReport(mod, b, a_lo, a_hi)
    runs: list = []
    for i in range(len(ns) - 1):
        n1, n2 = ns[i], ns[i + 1]
        d = compare_f(mod, n1, rho[n1], n2, rho[n2], cfg.float_precision_bits)
        if d is None:
            report.unresolved.append(a_lo + i)
            d = Direction.FLAT
        if runs and runs[-1][0] is d:
            runs[-1][1] += 1
        else:
            runs.append([d, 1])
    report.runs = [(d, length) for d, length in runs]
    return report


def theorem32_expected(p: int, b: int, a: int) -> Direction | None:
    """Direction claimed for f(ap+b) -> f((a+1)p+b), or None where no claim is made."""
    half = (p - 1) // 2
    if b <= half:
        return Direction.UP if a * p + b >= 1 else None
    # decreasing branch needs a >= (p - 1)/2
    return Direction.DOWN if 2 * a >= p - 1 else None


def verify_theorem32(p: int, a_hi: int) -> dict[tuple[int, int], bool]:
    """Exact check of the monotone-ratio criterion for every (b, a) with a < a_hi.

    f(n+p)/f(n) > 1 exactly when ((a+1)p - 1)^p / ((a+1)p)^p exceeds
    (ap + b)/(ap + b + p); both sides are compared as integers.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    out = {}
    for b in range(p):
        for a in range(a_hi):
            expected = theorem32_expected(p, b, a)
            if expected is None:
                continue
            x = (a + 1) * p
            lhs = (x - 1) ** p * (a * p + b + p)
            rhs = x**p * (a * p + b)
            if expected is Direction.UP:
                out[(b, a)] = lhs > rhs
            else:
                out[(b, a)] = lhs < rhs
    return out


def residue_ordering(
    mod: Modulus | int,
    n_window: tuple[int, int],
    cfg: NumericConfig = DEFAULT_CONFIG,
) -> list[int]:
    """Residues sorted from highest to lowest f at the last n of each class in the window."""
    mod = as_modulus(mod)
    r = mod.radical
    n_lo, n_hi = n_window
    if n_lo < r or n_hi - n_lo + 1 < r:
        raise DomainError("window must start at n >= r and span a full residue cycle")
    last = {n % r: n for n in range(n_hi - r + 1, n_hi + 1)}
    rho = f_values_at(mod, last.values(), cfg)
    bits = cfg.float_precision_bits + 64
    score = {b: f_mpfr(mod, n, rho[n], bits) for b, n in last.items()}
    return sorted(score, key=lambda b: score[b], reverse=True)


def residue_spread(mod: Modulus | int, a: int, cfg: NumericConfig = DEFAULT_CONFIG) -> float:
    """max_b f(a r + b) - min_b f(a r + b)."""
    mod = as_modulus(mod)
    if a < 1:
        raise DomainError("a must be >= 1")
    r = mod.radical
    ns = [a * r + b for b in range(r)]
    rho = f_values_at(mod, ns, cfg)
    bits = cfg.float_precision_bits + 64
    fs = [f_mpfr(mod, n, rho[n], bits) for n in ns]
    return float(max(fs) - min(fs))
