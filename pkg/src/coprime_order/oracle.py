"""
Brute-force ground truth for |R(n, m)| and related cycle counts.

Two routes that share nothing with the recurrence engine:

* direct enumeration of every permutation of {0..n-1} (n <= DIRECT_CAP);
* enumeration of cycle types (integer partitions of n), weighting each by the
  size of its conjugacy class, n! / prod_j (j^c_j c_j!).
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .arith import radical
from .errors import DomainError, ResourceCapError

__all__ = [
    "DIRECT_CAP", "PARTITION_CAP", "CycleType", "cycle_lengths", "cycle_types",
    "count_coprime_order_direct", "count_coprime_order_partitions",
    "count_no_cycle_divisible",
]

DIRECT_CAP = 9
PARTITION_CAP = 60


@dataclass(frozen=True)
class CycleType:
    """A partition of n as (part, multiplicity) pairs, parts descending."""
    n: int
    mult: tuple[tuple[int, int], ...]

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(j for j, c in self.mult for _ in range(c))

    @property
    def perm_count(self) -> int:
        den = 1
        for j, c in self.mult:
            den *= j**c * math.factorial(c)
        return math.factorial(self.n) // den

    @property
    def order_lcm(self) -> int:
        return math.lcm(*(j for j, _ in self.mult)) if self.mult else 1

    def order_coprime_to(self, m: int) -> bool:
        return math.gcd(self.order_lcm, m) == 1

    def parts_coprime_to(self, m: int) -> bool:
        return all(math.gcd(j, m) == 1 for j, _ in self.mult)

    def has_part_divisible_by(self, m: int) -> bool:
        return any(j % m == 0 for j, _ in self.mult)


def _check_n(n: int, cap: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    if n > cap:
        raise ResourceCapError(f"n={n} exceeds the enumeration cap {cap}")


def _check_m(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")


def cycle_lengths(perm: tuple[int, ...]) -> list[int]:
    """Cycle lengths of a permutation in one-line notation on {0..n-1}."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return lengths


@lru_cache(maxsize=None)
def _direct_orders(n: int) -> Counter:
    # order of every permutation of Sym(n); one pass serves every m
    orders: Counter = Counter()
    for perm in permutations(range(n)):
        orders[math.lcm(*cycle_lengths(perm)) if n else 1] += 1
    return orders


def count_coprime_order_direct(n: int, m: int) -> int:
    """|R(n, m)| by listing all n! permutations.

    Uses m exactly as given (no reduction to the radical).
    """
    _check_n(n, DIRECT_CAP)
    _check_m(m)
    return sum(c for order, c in _direct_orders(n).items() if math.gcd(order, m) == 1)


def cycle_types(n: int, allowed: Callable[[int], bool] | None = None) -> Iterator[CycleType]:
    """Cycle types of Sym(n) in reverse-lexicographic order.

    ``allowed`` filters admissible part sizes; partitions using any other part
    are never generated.
    """
    _check_n(n, PARTITION_CAP)
    sizes = [j for j in range(n, 0, -1) if allowed is None or allowed(j)]

    def rec(rest: int, idx: int, acc: list[tuple[int, int]]):
        if rest == 0:
            yield CycleType(n, tuple(acc))
            return
        for i in range(idx, len(sizes)):
            j = sizes[i]
            if j > rest:
                continue
            for c in range(rest // j, 0, -1):
                acc.append((j, c))
                yield from rec(rest - c * j, i + 1, acc)
                acc.pop()

    yield from rec(n, 0, [])


def _weighted_count(n: int, allowed: Callable[[int], bool]) -> int:
    # sum of n!/prod(j^c c!) over partitions with admissible parts, carrying
    # the running denominator down the recursion instead of rebuilding it
    sizes = [j for j in range(n, 1, -1) if allowed(j)]
    # fixed points close a branch in one step: c ones contribute 1^c c!
    ones = n >= 1 and allowed(1)
    fact = [math.factorial(i) for i in range(n + 1)]
    fact_n = fact[n]
    total = 0

    def rec(rest: int, idx: int, den: int):
        nonlocal total
        if rest == 0:
            total += fact_n // den
            return
        if ones:
            total += fact_n // (den * fact[rest])
        for i in range(idx, len(sizes)):
            j = sizes[i]
            if j > rest:
                continue
            d = den
            for c in range(1, rest // j + 1):
                d *= j * c
                rec(rest - c * j, i + 1, d)

    rec(n, 0, 1)
    return total


def count_coprime_order_partitions(n: int, m: int) -> int:
    """|R(n, m)| summed over cycle types whose parts are all coprime to rad(m)."""
    _check_n(n, PARTITION_CAP)
    _check_m(m)
    rad = radical(m)
    return _weighted_count(n, lambda j: math.gcd(j, rad) == 1)


def count_no_cycle_divisible(n: int, m: int) -> int:
    """Number of permutations of Sym(n) with no cycle length divisible by m."""
    _check_n(n, PARTITION_CAP)
    _check_m(m)
    return _weighted_count(n, lambda j: j % m != 0)
