import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings, strategies as st

from coprime_order.arith import make_modulus, radical
from coprime_order.engine import (
    Backend, NumericConfig, constant_C, iter_count_integer, iter_rho_float,
    p_not_m, rho_at, rho_prime_closed_form, rho_series,
)
from coprime_order.errors import DomainError
from coprime_order.oracle import count_coprime_order_direct, count_coprime_order_partitions


def full_sum_rho(m, n_max):
    # independent: the untelescoped recurrence over every coprime k <= n
    r = radical(m)
    rho = [Fraction(1)]
    for n in range(1, n_max + 1):
        rho.append(sum(rho[n - k] for k in range(1, n + 1) if math.gcd(k, r) == 1) / n)
    return rho


def test_prime_two_start():
    series = rho_series(2, 5)
    assert list(series.values) == [1, 1, Fraction(1, 2), Fraction(1, 2), Fraction(3, 8), Fraction(3, 8)]


def test_spot_values():
    assert rho_at(6, 6) == Fraction(29, 144)
    assert rho_at(3, 2) == 1
    assert rho_at(6, 12) == Fraction(32525, 248832)
    # frozen from the cycle-type oracle
    assert rho_at(30, 29) == Fraction(35779980272904689, 835884417024000000)


def test_modulus_one_is_all_ones():
    assert all(v == 1 for v in rho_series(1, 50).values)
    assert rho_at(1, 100) == 1


@pytest.mark.parametrize("p, n, expected", [(2, 5, Fraction(3, 8)), (7, 6, 1), (3, 9, Fraction(40, 81))])
def test_closed_form_examples(p, n, expected):
    assert rho_prime_closed_form(p, n) == expected


def test_closed_form_rejects_composite():
    with pytest.raises(DomainError):
        rho_prime_closed_form(6, 3)


@pytest.mark.parametrize("m, n, expected", [(6, 5, 1), (2, 4, Fraction(3, 8)), (6, 12, Fraction(55, 72))])
def test_p_not_m_examples(m, n, expected):
    assert p_not_m(m, n) == expected


def test_constant_C_examples():
    assert constant_C(1) == 1
    assert constant_C(2) == Fraction(1, 2)
    assert constant_C(6) == Fraction(943, 20736) == rho_at(6, 10)
    for p in (3, 5, 7, 11):
        assert constant_C(p) == 1 - Fraction(1, p)


def test_matches_direct_enumeration():
    for m in (2, 3, 4, 5, 6, 7, 10, 12, 15, 30):
        series = rho_series(m, 8)
        for n in range(9):
            assert series[n] * math.factorial(n) == count_coprime_order_direct(n, m)


def test_matches_cycle_type_oracle():
    for m in (2, 6, 10, 15, 30):
        series = rho_series(m, 30)
        for n in range(31):
            assert series[n] * math.factorial(n) == count_coprime_order_partitions(n, m)


def test_matches_full_sum():
    for m in (1, 2, 3, 6, 10, 30):
        assert list(rho_series(m, 120).values) == full_sum_rho(m, 120)


def test_radical_reduction():
    for m, r in ((4, 2), (12, 6), (18, 6), (60, 30)):
        assert rho_series(m, 80).values == rho_series(r, 80).values


def test_prime_plateau_and_dominance():
    for p in (2, 3, 5, 7):
        series = rho_series(p, 300)
        for n in range(301):
            assert series[n] == rho_prime_closed_form(p, n)
            assert series[n] == series[n - n % p]
    for m in (6, 10, 15, 30):
        series = rho_series(m, 300)
        for n in range(301):
            assert 0 < series[n] <= p_not_m(m, n)


@pytest.mark.parametrize("bits", [53, 128, 256])
def test_float_backend_agrees_with_exact(bits):
    cfg = NumericConfig(float_precision_bits=bits)
    for m in (2, 6, 30):
        exact = rho_series(m, 5000, cfg, Backend.EXACT)
        flt = rho_series(m, 5000, cfg, Backend.FLOAT)
        worst = max(abs(Fraction(*flt[n].as_integer_ratio()) - exact[n]) / exact[n]
                    for n in range(5001))
        assert worst <= 2.0 ** (10 - bits)


def test_integer_form_matches_rational():
    cfg = NumericConfig(exact_form="integer")
    for m in (1, 2, 6, 30):
        assert rho_series(m, 200, cfg, Backend.EXACT).values == rho_series(m, 200).values
        assert rho_at(m, 333, cfg, Backend.EXACT) == rho_at(m, 333)
    counts = iter_count_integer(6)
    assert [next(counts) for _ in range(7)][6] == 145


def test_hybrid_switches_to_float():
    cfg = NumericConfig(exact_cutoff=300, float_precision_bits=128)
    hybrid = rho_series(30, 1200, cfg)
    assert hybrid.backend is Backend.HYBRID and hybrid.exact_upto == 300
    assert isinstance(hybrid[300], Fraction) and not isinstance(hybrid[301], Fraction)
    assert hybrid.is_exact(300) and not hybrid.is_exact(301)
    exact = rho_series(30, 1200, cfg, Backend.EXACT)
    for n in range(301, 1201):
        assert abs(Fraction(*hybrid[n].as_integer_ratio()) - exact[n]) <= exact[n] * 2.0**-118


def test_float_start_window():
    mod = make_modulus(6)
    exact = rho_series(mod, 60).values
    stream = iter_rho_float(mod, 128, start=31, window=list(exact[25:31]))
    for n in range(31, 61):
        assert abs(float(next(stream)) - float(exact[n])) < 1e-15


def test_thread_safety():
    cfgs = [NumericConfig(float_precision_bits=b) for b in (53, 96, 128, 200)] * 3

    def run(cfg):
        return rho_series(30, 3000, cfg, Backend.FLOAT)[3000].precision

    ctx_before = gmpy2.get_context().precision
    with ThreadPoolExecutor(max_workers=6) as pool:
        precisions = list(pool.map(run, cfgs))
    assert precisions == [c.float_precision_bits for c in cfgs]
    assert gmpy2.get_context().precision == ctx_before


def test_domain_errors():
    with pytest.raises(DomainError):
        rho_at(6, -1)
    with pytest.raises(DomainError):
        rho_series(6, 2.5)
    with pytest.raises(DomainError):
        NumericConfig(float_precision_bits=52)
    with pytest.raises(DomainError):
        NumericConfig(exact_form="decimal")
    with pytest.raises(DomainError):
        rho_at(0, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=60), st.integers(min_value=0, max_value=40))
def test_bounded_by_one_and_decreasing_blocks(m, n):
    series = rho_series(m, n + radical(m))
    assert 0 < series[n] <= 1
    # whole-block decrease: rho(n + r) <= rho(n)
    assert series[n + radical(m)] <= series[n]
