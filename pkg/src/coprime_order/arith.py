"""
Number-theoretic kernel.

Everything downstream works with the square-free radical of the modulus, since
the proportion of permutations with order coprime to m only depends on the set
of primes dividing m.

>>> mod = make_modulus(12)
>>> mod.radical, mod.primes, mod.phi_set, mod.y
(6, (2, 3), (1, 5), Fraction(-2, 3))
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import DomainError

__all__ = [
    "MAX_MODULUS", "Modulus", "make_modulus", "factorize", "radical",
    "totient", "moebius", "divisors", "is_prime", "count_x", "count_y",
]

# trial division keeps factoring trivial below this
MAX_MODULUS = 2**31 - 1


def _check_positive(n: int, name: str = "m") -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"{name} must be positive, got {n}")
    if n > MAX_MODULUS:
        raise DomainError(f"{name} exceeds {MAX_MODULUS}")


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n as ((p, e), ...) with p ascending."""
    _check_positive(n, "n")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        return False
    return factorize(n) == ((n, 1),)


def radical(n: int) -> int:
    return math.prod(p for p, _ in factorize(n))


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def moebius(d: int) -> int:
    """Moebius function: (-1)^k for a product of k distinct primes, else 0."""
    fac = factorize(d)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(n: int) -> list[int]:
    fac = factorize(n)
    divs = [
        math.prod(p**k for (p, _), k in zip(fac, ks))
        for ks in product(*(range(e + 1) for _, e in fac))
    ]
    return sorted(divs)


@dataclass(frozen=True)
class Modulus:
    """Arithmetic profile of a modulus m, reduced to its radical."""
    m: int
    radical: int
    primes: tuple[int, ...]
    phi_set: tuple[int, ...] = field(repr=False)
    phi: int
    y: Fraction

    @property
    def smallest_prime(self) -> int | None:
        return self.primes[0] if self.primes else None

    @property
    def is_prime(self) -> bool:
        return len(self.primes) == 1


@lru_cache(maxsize=256)
def make_modulus(m: int) -> Modulus:
    """Build the profile of m; non-square-free m is reduced to its radical."""
    _check_positive(m)
    primes = tuple(p for p, _ in factorize(m))
    rad = math.prod(primes)
    phi_set = tuple(k for k in range(1, rad + 1) if math.gcd(k, rad) == 1)
    return Modulus(
        m=m,
        radical=rad,
        primes=primes,
        phi_set=phi_set,
        phi=len(phi_set),
        y=Fraction(len(phi_set), rad) - 1,
    )


def _check_index(mod: Modulus, i: int) -> None:
    if not 0 <= i < mod.radical:
        raise DomainError(f"index {i} outside [0, {mod.radical - 1}]")


def count_x(mod: Modulus, i: int) -> int:
    """Number of coprime residues k with k < radical - i."""
    _check_index(mod, i)
    return bisect_left(mod.phi_set, mod.radical - i)


def count_y(mod: Modulus, i: int) -> int:
    """Number of coprime residues k with k <= i."""
    _check_index(mod, i)
    return bisect_right(mod.phi_set, i)
