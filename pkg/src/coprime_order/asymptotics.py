"""
Asymptotic constants and the inequalities behind the two-sided power bound

    C(m) floor(n/m)^y <= rho(n, m) <= ceil(n/m)^y,    y = phi(m)/m - 1,

together with the smooth (n/m)^y forms and the algebraic steps of the
inductive proof (the Y0 factorizations and the binomial-series sandwich).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from .arith import Modulus, divisors, moebius, totient
from .engine import RhoSeries, as_modulus, to_mpfr
from .errors import DomainError, VerificationError

__all__ = [
    "gamma_real", "k_constant", "kappa", "lambda_constant", "f_value", "f_mpfr",
    "BoundsReport", "check_theorem1", "compare_power_bound",
    "lemma22_terms", "check_lemma22", "y0_upper_definitional", "y0_upper_factored",
    "y0_lower_definitional", "y0_lower_factored", "check_Y0_upper", "check_Y0_lower",
    "upper_window", "lower_window",
]

# Lanczos approximation, g = 7, 9 terms
_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2 * math.pi)


def _lanczos(x: float) -> float:
    # valid for x >= 1/2
    z = x - 1
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * acc


def gamma_real(x: float) -> float:
    """Gamma function on (0, 2], via Lanczos and the reflection identity."""
    x = float(x)
    if not 0 < x <= 2:
        raise DomainError(f"gamma_real is defined here on (0, 2], got {x}")
    if x == 1 or x == 2:
        return 1.0
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * _lanczos(1 - x))
    return _lanczos(x)


def k_constant(m: int) -> float:
    """1 / Gamma(1 - 1/m), the leading constant for prime moduli."""
    if m < 2:
        raise DomainError("k(m) needs m >= 2")
    return 1 / gamma_real(1 - 1 / m)


def kappa(m: int) -> float:
    """Pouyanne's constant: prod_{d | m} d^(-mu(d)/d) / Gamma(phi(m)/m)."""
    if m < 1:
        raise DomainError("m must be positive")
    log_prod = sum(-moebius(d) / d * math.log(d) for d in divisors(m))
    return math.exp(log_prod) / gamma_real(totient(m) / m)


def lambda_constant(m: int) -> float:
    """kappa_m / r^(1 - phi/r) with r the radical; the limit of f(n, m)."""
    mod = as_modulus(m)
    r = mod.radical
    return kappa(m) / r ** (1 - mod.phi / r)


def f_value(mod: Modulus | int, n: int, rho_n) -> float:
    """Rescaled proportion rho(n) (n/r)^(1 - phi/r)."""
    if n < 1:
        raise DomainError("f(n, m) needs n >= 1")
    mod = as_modulus(mod)
    return float(rho_n) * (n / mod.radical) ** float(-mod.y)


def f_mpfr(mod: Modulus, n: int, rho_n, bits: int) -> gmpy2.mpfr:
    """f(n, m) evaluated at ``bits`` precision."""
    ctx = gmpy2.context(precision=bits)
    q = ctx.div(gmpy2.mpz(n), gmpy2.mpz(mod.radical))
    e = ctx.div(gmpy2.mpz(-mod.y.numerator), gmpy2.mpz(mod.y.denominator))
    return ctx.mul(to_mpfr(rho_n, bits), ctx.pow(q, e))


def _exact_power_side(value: Fraction, base: Fraction, coef: Fraction, mod: Modulus) -> int:
    # sign of value - coef * base^y using integer powers: y = (phi - r)/r
    r, e = mod.radical, mod.radical - mod.phi
    lhs = value**r * base**e
    rhs = coef**r
    return (lhs > rhs) - (lhs < rhs)


def compare_power_bound(
    value,
    base: Fraction,
    mod: Modulus,
    coef: Fraction = Fraction(1),
    bits: int = 192,
) -> tuple[int | None, float]:
    """Compare ``value`` against ``coef * base**y``.

    Returns (sign, slack) with slack = value - bound as a float.  For an exact
    ``value`` the sign is certified (falling back to integer powers when the
    high-precision estimate is too close to call); for an mpfr ``value`` the
    sign is None and the caller judges the slack.
    """
    if base == 1 or mod.y == 0:
        bound = coef
        if isinstance(value, Fraction):
            diff = value - bound
        else:
            diff = Fraction(*value.as_integer_ratio()) - bound
        sign = (diff > 0) - (diff < 0)
        return (sign if isinstance(value, Fraction) else None), float(diff)
    ctx = gmpy2.context(precision=bits)
    y = ctx.div(gmpy2.mpz(mod.y.numerator), gmpy2.mpz(mod.y.denominator))
    bound = ctx.mul(to_mpfr(coef, bits), ctx.pow(to_mpfr(base, bits), y))
    slack = ctx.sub(to_mpfr(value, bits), bound)
    if not isinstance(value, Fraction):
        return None, float(slack)
    if abs(slack) > gmpy2.mpfr(2) ** (16 - bits):
        return (1 if slack > 0 else -1), float(slack)
    return _exact_power_side(value, base, coef, mod), float(slack)


_KINDS = ("upper", "lower", "smooth_upper", "smooth_lower")


@dataclass
class BoundsReport:
    """Per-n verdicts on the ceiling/floor and smooth power bounds.

    Flag lists are indexed by n - n_lo; lower-side and smooth flags are None
    for n < radical, where they do not apply.
    """
    modulus: Modulus
    n_lo: int
    n_hi: int
    C: Fraction
    upper_ok: list = field(default_factory=list)
    lower_ok: list = field(default_factory=list)
    smooth_upper_ok: list = field(default_factory=list)
    smooth_lower_ok: list = field(default_factory=list)
    margins: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    float_margin: float = 2.0**-64

    @property
    def worst_margin(self) -> float:
        return min(self.margins.values()) if self.margins else 0.0

    @property
    def all_ok(self) -> bool:
        return not self.violations

    def checked(self) -> int:
        flags = (self.upper_ok, self.lower_ok, self.smooth_upper_ok, self.smooth_lower_ok)
        return sum(f is not None for fl in flags for f in fl)


def check_theorem1(
    series: RhoSeries,
    C: Fraction,
    n_lo: int = 1,
    n_hi: int | None = None,
    float_margin: float = 2.0**-64,
) -> BoundsReport:
    """Check both power bounds on every n of ``series`` in [n_lo, n_hi].

    The ceiling-form upper bound is checked for all n >= 1, the floor-form
    lower bound and both smooth forms for n >= radical.  Exact entries get a
    certified verdict.  Floating-point entries pass only with slack above
    ``float_margin``, except where the bound is attained by definition
    (ceil(n/r) = 1, floor(n/r) = 1, or r = 1); there they may undershoot by
    the backend's accuracy, 2^(10 - bits).
    """
    mod = series.modulus
    r = mod.radical
    n_hi = series.n_max if n_hi is None else n_hi
    if n_lo < 1 or n_hi > series.n_max:
        raise DomainError("range must lie within [1, n_max]")
    bits = max(series.precision_bits or 128, 128) + 64
    float_tol = 2.0 ** (10 - (series.precision_bits or 128))
    C = Fraction(C)
    report = BoundsReport(mod, n_lo, n_hi, C, float_margin=float_margin)
    lists = dict(zip(_KINDS, (report.upper_ok, report.lower_ok,
                              report.smooth_upper_ok, report.smooth_lower_ok)))

    def record(kind: str, n: int, value, base: Fraction, coef: Fraction, above: bool):
        sign, slack = compare_power_bound(value, base, mod, coef, bits)
        if not above:
            sign = None if sign is None else -sign
            slack = -slack
        if sign is not None:
            ok = sign >= 0
        elif base == 1 or mod.y == 0:
            ok = slack >= -float_tol
        else:
            ok = slack > float_margin
        lists[kind].append(ok)
        report.margins[kind] = min(report.margins.get(kind, math.inf), slack)
        if not ok:
            report.violations.append((n, kind, slack))

    for n in range(n_lo, n_hi + 1):
        value = series.values[n]
        record("upper", n, value, Fraction(-(-n // r)), Fraction(1), above=False)
        if n < r:
            for kind in _KINDS[1:]:
                lists[kind].append(None)
            continue
        record("lower", n, value, Fraction(n // r), C, above=True)
        record("smooth_upper", n, value, Fraction(n, r), Fraction(1), above=False)
        record("smooth_lower", n, value, Fraction(n, r), C, above=True)
    return report


def lemma22_terms(y: float, a: float) -> tuple[float, float, float]:
    """(L, M, U) = (1 - (y+1)/a (1 - y/a), ((a-1)/a)^(y+1), 1 - (y+1)/a)."""
    y, a = float(y), float(a)
    if not (-1 < y < 0 and a >= 2):
        raise DomainError("need -1 < y < 0 and a >= 2")
    lower = 1 - (y + 1) / a * (1 - y / a)
    middle = ((a - 1) / a) ** (y + 1)
    upper = 1 - (y + 1) / a
    return lower, middle, upper


def check_lemma22(y: float, a: float, tol: float = 1e-12) -> tuple[float, float, float]:
    """Evaluate (L, M, U) and require 0 < L <= M < U, with ``tol`` on L <= M.

    The binomial-series argument behind the chain expands (1 + x)^(y+1) at
    x = -1/a and bounds the tail using x0 = -1/2 <= x.
    """
    lower, middle, upper = lemma22_terms(y, a)
    if not (0 < lower and lower <= middle + tol and middle < upper):
        raise VerificationError(f"chain fails at y={y}, a={a}: {lower}, {middle}, {upper}")
    return lower, middle, upper


def _fr(*args):
    return [Fraction(v) for v in args]


def y0_upper_definitional(a, b, x_b, m, phi) -> Fraction:
    """1 - Y for Y = (1 - phi/(am))(1 - (b - a phi + a x_b)/((a-1)(am-b))) + x_b/(am-b)."""
    a, b, x_b, m, phi = _fr(a, b, x_b, m, phi)
    big_y = (1 - phi / (a * m)) * (1 - (b - a * phi + a * x_b) / ((a - 1) * (a * m - b))) \
        + x_b / (a * m - b)
    return 1 - big_y


def y0_upper_factored(a, b, x_b, m, phi) -> Fraction:
    a, b, x_b, m, phi = _fr(a, b, x_b, m, phi)
    return (m - phi) * (b + x_b - phi) / (m * (a - 1) * (a * m - b))


def y0_lower_definitional(a, b, y_b, m, phi) -> Fraction:
    """Y - 1 for the lower-bound factor Y in a, b, y_b, m, phi."""
    a, b, y_b, m, phi = _fr(a, b, y_b, m, phi)
    big_y = (1 - phi / (a * m) * (1 + (m - phi) / (a * m))) \
        * (1 + (b + a * phi - a * y_b) / ((a - 1) * (a * m + b))) + y_b / (a * m + b)
    return big_y - 1


def y0_lower_factored(a, b, y_b, m, phi) -> Fraction:
    a, b, y_b, m, phi = _fr(a, b, y_b, m, phi)
    return (m - phi) * (a * m * (b - y_b) + phi * (y_b - b + m - phi)) \
        / (m * m * a * (a - 1) * (a * m + b))


def upper_window(a, b, x_b, m, phi) -> bool:
    return a >= 2 and 0 <= b < m and phi <= min(b + x_b, m)


def lower_window(a, b, y_b, m, phi) -> bool:
    return a >= 2 and 0 <= b < m and m >= phi and phi - m + b <= y_b <= b


def _guard(a, b, m, sign: int) -> None:
    if a == 1 or a * m + sign * b == 0 or m == 0:
        raise DomainError("Y0 is undefined for these arguments")


def check_Y0_upper(a: int, b: int, x_b: int, m: int, phi: int) -> Fraction:
    """Factored Y0 of the upper-bound step, after checking it equals 1 - Y exactly.

    Also requires Y0 >= 0 whenever (a, b, x_b, m, phi) lies in the constraint
    window a >= 2, 0 <= b < m, phi <= min(b + x_b, m).
    """
    _guard(a, b, m, -1)
    factored = y0_upper_factored(a, b, x_b, m, phi)
    if y0_upper_definitional(a, b, x_b, m, phi) != factored:
        raise VerificationError(f"upper Y0 identity fails at {(a, b, x_b, m, phi)}")
    if upper_window(a, b, x_b, m, phi) and factored < 0:
        raise VerificationError(f"upper Y0 negative at {(a, b, x_b, m, phi)}")
    return factored


def check_Y0_lower(a: int, b: int, y_b: int, m: int, phi: int) -> Fraction:
    """Factored Y0 of the lower-bound step, after checking it equals Y - 1 exactly."""
    _guard(a, b, m, 1)
    if a == 0:
        raise DomainError("Y0 is undefined for a = 0")
    factored = y0_lower_factored(a, b, y_b, m, phi)
    if y0_lower_definitional(a, b, y_b, m, phi) != factored:
        raise VerificationError(f"lower Y0 identity fails at {(a, b, y_b, m, phi)}")
    if lower_window(a, b, y_b, m, phi) and factored < 0:
        raise VerificationError(f"lower Y0 negative at {(a, b, y_b, m, phi)}")
    return factored
