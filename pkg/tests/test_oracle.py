import math
from fractions import Fraction

import pytest

from coprime_order.arith import radical
from coprime_order.engine import p_not_m
from coprime_order.errors import DomainError, ResourceCapError
from coprime_order.oracle import (
    CycleType, count_coprime_order_direct, count_coprime_order_partitions,
    count_no_cycle_divisible, cycle_lengths, cycle_types,
)

SQUAREFREE_30 = [m for m in range(1, 31) if radical(m) == m]


@pytest.mark.parametrize("n, m, expected", [(4, 2, 9), (0, 30, 1), (6, 6, 145)])
def test_direct_examples(n, m, expected):
    assert count_coprime_order_direct(n, m) == expected


def test_direct_small_by_hand():
    # Sym(3): identity and two 3-cycles have odd order
    assert count_coprime_order_direct(3, 2) == 3
    assert count_coprime_order_direct(3, 3) == 4


def test_direct_cap():
    with pytest.raises(ResourceCapError):
        count_coprime_order_direct(10, 2)
    with pytest.raises(DomainError):
        count_coprime_order_direct(3, 0)


def test_partition_cap():
    with pytest.raises(ResourceCapError):
        count_coprime_order_partitions(61, 2)
    with pytest.raises(ResourceCapError):
        count_no_cycle_divisible(61, 2)


@pytest.mark.parametrize("n, m, expected", [(6, 6, 145), (9, 3, 179200), (1, 7, 1), (1, 30, 1)])
def test_partition_examples(n, m, expected):
    assert count_coprime_order_partitions(n, m) == expected


def test_no_cycle_examples():
    assert count_no_cycle_divisible(4, 2) == 9
    assert count_no_cycle_divisible(4, 6) == 24
    assert count_no_cycle_divisible(12, 6) == math.factorial(12) * Fraction(55, 72)


def test_cycle_lengths():
    assert sorted(cycle_lengths((1, 2, 0, 4, 3, 5))) == [1, 2, 3]
    assert cycle_lengths(()) == []


def test_cycle_type_counts_sum_to_factorial():
    for n in range(0, 16):
        types = list(cycle_types(n))
        assert sum(t.perm_count for t in types) == math.factorial(n)
        assert len(set(types)) == len(types)


def test_cycle_type_reverse_lex():
    parts = [t.parts for t in cycle_types(5)]
    assert parts == sorted(parts, reverse=True)
    assert parts[0] == (5,) and parts[-1] == (1, 1, 1, 1, 1)


def test_cycle_type_fields():
    t = CycleType(7, ((3, 1), (2, 2)))
    assert t.parts == (3, 2, 2)
    assert t.order_lcm == 6
    assert t.perm_count == math.factorial(7) // (3 * 2**2 * 2)


def test_lcm_and_part_predicates_agree():
    for n in range(0, 14):
        for t in cycle_types(n):
            for m in (1, 2, 3, 4, 6, 10, 12, 30):
                assert t.order_coprime_to(m) == t.parts_coprime_to(radical(m))


def test_weighted_count_matches_explicit_enumeration():
    for n in range(0, 16):
        for m in (1, 2, 3, 6, 7, 10, 30):
            coprime = sum(t.perm_count for t in cycle_types(n) if t.order_coprime_to(m))
            free = sum(t.perm_count for t in cycle_types(n) if not t.has_part_divisible_by(m))
            assert count_coprime_order_partitions(n, m) == coprime
            assert count_no_cycle_divisible(n, m) == free


def test_direct_and_partition_agree():
    for n in range(0, 10):
        for m in range(1, 31):
            assert count_coprime_order_direct(n, m) == count_coprime_order_partitions(n, m)


def test_containment_and_prime_powers():
    # m = 1 is excluded: every cycle length is divisible by 1
    for n in range(0, 31):
        for m in range(2, 31):
            assert count_coprime_order_partitions(n, m) <= count_no_cycle_divisible(n, radical(m))
    for q in (2, 3, 4, 5, 7, 8, 9, 16, 25, 27):
        for n in range(0, 31):
            assert count_coprime_order_partitions(n, q) == count_no_cycle_divisible(n, radical(q))
    assert count_no_cycle_divisible(6, 6) > count_coprime_order_partitions(6, 6)


def test_no_cycle_matches_product_formula():
    for m in SQUAREFREE_30:
        for n in range(0, 41):
            assert count_no_cycle_divisible(n, m) == math.factorial(n) * p_not_m(m, n)


@pytest.mark.slow
def test_no_cycle_matches_product_formula_to_60():
    for m in range(1, 31):
        for n in range(41, 61):
            literal = math.prod(Fraction(i * m - 1, i * m) for i in range(1, n // m + 1))
            assert count_no_cycle_divisible(n, m) == math.factorial(n) * literal
            if radical(m) == m:
                assert literal == p_not_m(m, n)


def test_large_prime_absorption():
    for n in range(0, 9):
        for m in (1, 2, 3, 6, 10):
            for p in (q for q in (11, 13, 17, 19, 23) if q > n):
                assert count_coprime_order_direct(n, m * p) == count_coprime_order_direct(n, m)


def test_direct_sees_non_squarefree_m():
    for n in range(0, 10):
        assert count_coprime_order_direct(n, 4) == count_coprime_order_direct(n, 2)
        assert count_coprime_order_direct(n, 12) == count_coprime_order_direct(n, 6)
