"""
Recurrence engine for rho(n, m), the proportion of Sym(n) with order coprime to m.

Counting permutations by the length k of the cycle through the point 1 gives

    n rho(n) = sum_{1 <= k <= n, (k, m) = 1} rho(n - k),

and subtracting the same identity at n - m collapses the sum to the coprime
residues Phi of the radical:

    n rho(n) = (n - m) rho(n - m) + sum_{k in Phi} rho(n - k)     (n >= m).

The first form seeds rho(1..m-1); the second runs from n = m onwards with a
ring buffer of the last m values.  Three value representations are offered:

* exact rationals (``Fraction``), the default for n <= ``exact_cutoff``;
* exact integers r(n) = |R(n, m)| = n! rho(n), materialised on demand;
* gmpy2 ``mpfr`` floats at a configurable mantissa precision.

By default a series that reaches beyond the cutoff is computed exactly up to
the cutoff and continued in floating point from the exact window.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2

from .arith import Modulus, is_prime, make_modulus
from .errors import DomainError

__all__ = [
    "Backend", "NumericConfig", "DEFAULT_CONFIG", "RhoSeries", "RhoValue",
    "as_modulus", "iter_rho", "iter_rho_exact", "iter_rho_float",
    "iter_count_integer", "rho_series", "rho_at", "rho_prime_closed_form",
    "p_not_m", "constant_C", "to_mpfr",
]

RhoValue = Union[Fraction, "gmpy2.mpfr"]


class Backend(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"
    # exact up to the cutoff, float afterwards
    HYBRID = "hybrid"


@dataclass(frozen=True)
class NumericConfig:
    exact_cutoff: int = 5000
    float_precision_bits: int = 128
    # "rational" keeps a Fraction window; "integer" carries n! rho(n) as an int
    exact_form: str = "rational"

    def __post_init__(self):
        if self.exact_cutoff < 0:
            raise DomainError("exact_cutoff must be >= 0")
        if self.float_precision_bits < 53:
            raise DomainError("float_precision_bits must be >= 53")
        if self.exact_form not in ("rational", "integer"):
            raise DomainError(f"unknown exact_form {self.exact_form!r}")

    def context(self) -> gmpy2.context:
        return gmpy2.context(precision=self.float_precision_bits)


DEFAULT_CONFIG = NumericConfig()


def as_modulus(mod: Modulus | int) -> Modulus:
    return mod if isinstance(mod, Modulus) else make_modulus(mod)


def to_mpfr(value, bits: int) -> gmpy2.mpfr:
    """Round an exact rational (or an mpfr) to ``bits`` of precision."""
    ctx = gmpy2.context(precision=bits)
    if isinstance(value, Fraction):
        return ctx.div(gmpy2.mpz(value.numerator), gmpy2.mpz(value.denominator))
    return ctx.plus(value)


@dataclass(frozen=True)
class RhoSeries:
    """rho(0..n_max) for a fixed modulus.

    ``values[n]`` is a ``Fraction`` for n <= ``exact_upto`` and an ``mpfr``
    above it.
    """
    modulus: Modulus
    n_max: int
    values: tuple
    backend: Backend
    precision_bits: int | None
    exact_upto: int

    def __getitem__(self, n: int):
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def is_exact(self, n: int) -> bool:
        return n <= self.exact_upto

    def as_float(self, n: int) -> float:
        return float(self.values[n])


def _seed_ks(mod: Modulus, n: int) -> Sequence[int]:
    # coprime k <= n; for n < radical these are a prefix of phi_set
    return [k for k in mod.phi_set if k <= n]


def iter_rho_exact(mod: Modulus | int) -> Iterator[Fraction]:
    """Yield rho(0), rho(1), ... as reduced fractions."""
    mod = as_modulus(mod)
    if mod.radical == 1:
        while True:
            yield Fraction(1)
    m = mod.radical
    ring: list[Fraction] = [Fraction(0)] * m
    ring[0] = Fraction(1)
    yield ring[0]
    n = 1
    while n < m:
        s = sum((ring[n - k] for k in _seed_ks(mod, n)), Fraction(0))
        ring[n] = s / n
        yield ring[n]
        n += 1
    phi_set = mod.phi_set
    while True:
        # accumulate over a common denominator to avoid per-add reductions
        terms = [ring[(n - k) % m] for k in phi_set]
        back = ring[n % m]
        terms.append(back * (n - m))
        den = math.lcm(*(t.denominator for t in terms))
        num = sum(t.numerator * (den // t.denominator) for t in terms)
        value = Fraction(num, den * n)
        ring[n % m] = value
        yield value
        n += 1


def iter_count_integer(mod: Modulus | int) -> Iterator[int]:
    """Yield r(n) = |R(n, m)| = n! rho(n) for n = 0, 1, ...

    Multiplying the recurrence by (n-1)! turns every term into an integer:
    rho(n-k) (n-1)! = r(n-k) (n-1)(n-2)...(n-k+1).
    """
    mod = as_modulus(mod)
    if mod.radical == 1:
        fact = 1
        n = 0
        while True:
            yield fact
            n += 1
            fact *= n
    m = mod.radical
    ring = [0] * m
    ring[0] = 1
    yield 1
    n = 1
    while True:
        ks = _seed_ks(mod, n) if n < m else mod.phi_set
        total = 0
        falling = 1
        j = 1
        for k in ks:
            while j < k:
                falling *= n - j
                j += 1
            total += ring[(n - k) % m] * falling
        if n >= m:
            while j <= m:
                falling *= n - j
                j += 1
            total += ring[n % m] * falling
        ring[n % m] = total
        yield total
        n += 1


def _iter_rho_integer(mod: Modulus) -> Iterator[Fraction]:
    fact = 1
    for n, r in enumerate(iter_count_integer(mod)):
        if n:
            fact *= n
        yield Fraction(r, fact)


def iter_rho_float(
    mod: Modulus | int,
    bits: int,
    start: int = 0,
    window: Sequence | None = None,
) -> Iterator[gmpy2.mpfr]:
    """Yield rho(start), rho(start+1), ... as mpfr values of ``bits`` precision.

    ``window`` holds rho(start-w .. start-1) for w = min(start, radical); it is
    required when start > 0.  Summation order is fixed: ascending k over Phi,
    then the (n - m) term.
    """
    mod = as_modulus(mod)
    ctx = gmpy2.context(precision=bits)
    one = gmpy2.mpfr(1, bits)
    if mod.radical == 1:
        while True:
            yield one
    m = mod.radical
    ring = [gmpy2.mpfr(0, bits)] * m
    n = start
    if start == 0:
        ring[0] = one
        yield one
        n = 1
    else:
        if window is None or len(window) < min(start, m):
            raise DomainError("a window of previous values is required to resume")
        tail = list(window)[-min(start, m):]
        for i, v in enumerate(tail):
            idx = start - len(tail) + i
            ring[idx % m] = to_mpfr(v, bits)
    add, mul, div = ctx.add, ctx.mul, ctx.div
    while n < m:
        s = gmpy2.mpfr(0, bits)
        for k in _seed_ks(mod, n):
            s = add(s, ring[n - k])
        ring[n] = div(s, n)
        yield ring[n]
        n += 1
    phi_set = mod.phi_set
    while True:
        s = gmpy2.mpfr(0, bits)
        for k in phi_set:
            s = add(s, ring[(n - k) % m])
        s = add(s, mul(ring[n % m], n - m))
        value = div(s, n)
        ring[n % m] = value
        yield value
        n += 1


def iter_rho(
    mod: Modulus | int,
    cfg: NumericConfig = DEFAULT_CONFIG,
    backend: Backend | str = Backend.HYBRID,
) -> Iterator[RhoValue]:
    """Unbounded stream of rho(n) for n = 0, 1, ... in the requested backend."""
    mod = as_modulus(mod)
    backend = Backend(backend)
    bits = cfg.float_precision_bits
    if backend is Backend.FLOAT:
        yield from iter_rho_float(mod, bits)
        return
    exact = iter_rho_exact(mod) if cfg.exact_form == "rational" else _iter_rho_integer(mod)
    if backend is Backend.EXACT:
        yield from exact
        return
    window: list[Fraction] = []
    keep = max(mod.radical, 1)
    for n in range(cfg.exact_cutoff + 1):
        value = next(exact)
        window.append(value)
        if len(window) > keep:
            del window[0]
        yield value
    yield from iter_rho_float(mod, bits, start=cfg.exact_cutoff + 1, window=window)


def _resolve_backend(n_max: int, cfg: NumericConfig, backend) -> Backend:
    if backend is None:
        return Backend.EXACT if n_max <= cfg.exact_cutoff else Backend.HYBRID
    backend = Backend(backend)
    if backend is Backend.HYBRID and n_max <= cfg.exact_cutoff:
        return Backend.EXACT
    return backend


def _check_n(n: int, name: str = "n") -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {n!r}")


def rho_series(
    mod: Modulus | int,
    n_max: int,
    cfg: NumericConfig = DEFAULT_CONFIG,
    backend: Backend | str | None = None,
) -> RhoSeries:
    """Compute rho(0..n_max).

    With ``backend=None`` the series is exact when n_max <= cfg.exact_cutoff
    and hybrid otherwise.
    """
    _check_n(n_max, "n_max")
    mod = as_modulus(mod)
    backend = _resolve_backend(n_max, cfg, backend)
    stream = iter_rho(mod, cfg, backend)
    values = tuple(next(stream) for _ in range(n_max + 1))
    if backend is Backend.EXACT:
        exact_upto, bits = n_max, None
    elif backend is Backend.FLOAT:
        exact_upto, bits = -1, cfg.float_precision_bits
    else:
        exact_upto, bits = cfg.exact_cutoff, cfg.float_precision_bits
    return RhoSeries(mod, n_max, values, backend, bits, exact_upto)


def rho_at(
    mod: Modulus | int,
    n: int,
    cfg: NumericConfig = DEFAULT_CONFIG,
    backend: Backend | str | None = None,
) -> RhoValue:
    """rho(n) using O(radical) memory."""
    _check_n(n)
    mod = as_modulus(mod)
    backend = _resolve_backend(n, cfg, backend)
    if backend is Backend.EXACT and cfg.exact_form == "integer":
        counts = iter_count_integer(mod)
        for _ in range(n):
            next(counts)
        return Fraction(next(counts), math.factorial(n))
    stream = iter_rho(mod, cfg, backend)
    for _ in range(n):
        next(stream)
    return next(stream)


def rho_prime_closed_form(p: int, n: int) -> Fraction:
    """prod_{i=1}^{floor(n/p)} (1 - 1/(i p)) for prime p."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    _check_n(n)
    return _cycle_free_product(p, n)


def _cycle_free_product(m: int, n: int) -> Fraction:
    num = den = 1
    for i in range(1, n // m + 1):
        num *= i * m - 1
        den *= i * m
    return Fraction(num, den)


def p_not_m(mod: Modulus | int, n: int) -> Fraction:
    """Proportion of Sym(n) with no cycle length divisible by the radical."""
    _check_n(n)
    return _cycle_free_product(as_modulus(mod).radical, n)


def constant_C(mod: Modulus | int, cfg: NumericConfig = DEFAULT_CONFIG) -> Fraction:
    """min rho(n) over radical <= n <= 2 radical - 1; always exact."""
    mod = as_modulus(mod)
    r = mod.radical
    if r == 1:
        return Fraction(1)
    series = rho_series(mod, 2 * r - 1, cfg, Backend.EXACT)
    return min(series.values[r:])
