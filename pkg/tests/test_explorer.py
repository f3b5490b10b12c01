from fractions import Fraction

import mpmath
import pytest

from coprime_order.engine import NumericConfig, rho_series
from coprime_order.errors import DomainError
from coprime_order.explorer import (
    Direction, compare_f, residue_label, residue_ordering, residue_spread,
    scan_monotonicity, theorem32_expected, verify_theorem32,
)
from coprime_order.arith import make_modulus


def test_prime_two_even_class_rises():
    report = scan_monotonicity(2, 0, 200)
    assert report.runs == [(Direction.UP, 199)]
    assert report.eventually_monotonic_from == 1


def test_prime_five_top_class_falls():
    report = scan_monotonicity(5, 4, 200, a_lo=2)
    assert report.runs == [(Direction.DOWN, 198)]


def test_report_lengths_sum():
    for m, b in ((6, 1), (10, 3), (30, 7)):
        report = scan_monotonicity(m, b, 150)
        assert sum(report.run_lengths) == report.a_hi - report.a_lo
        assert not report.unresolved


def test_anomalous_class_26_24():
    report = scan_monotonicity(26, 24, 999, a_lo=0)
    assert report.directions == [Direction.UP, Direction.DOWN, Direction.UP]
    assert report.run_lengths == [6, 596, 397]
    assert report.eventually_monotonic_from == 602
    assert report.label == 24


def test_residue_label():
    assert residue_label(0, 6) == 6
    assert residue_label(5, 6) == 5


def test_scan_domain():
    with pytest.raises(DomainError):
        scan_monotonicity(6, 6, 10)
    with pytest.raises(DomainError):
        scan_monotonicity(6, 0, 10, a_lo=0)
    with pytest.raises(DomainError):
        scan_monotonicity(6, 1, 3, a_lo=3)


def test_compare_f_exact_tie_and_float_band():
    mod = make_modulus(2)
    assert compare_f(mod, 4, Fraction(3, 8), 4, Fraction(3, 8), 128) is Direction.FLAT
    assert compare_f(mod, 2, Fraction(1, 2), 4, Fraction(3, 8), 128) is Direction.UP
    flt = rho_series(6, 50, NumericConfig(exact_cutoff=0), "float")
    assert compare_f(make_modulus(6), 50, flt[50], 50, flt[50], 128) is None


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_prime_monotone_ratio_criterion(p):
    results = verify_theorem32(p, 1000)
    assert results and all(results.values())


def test_criterion_boundary_cases():
    # the first increasing step of residue 1 mod 3 starts at a = 0
    assert verify_theorem32(3, 5)[(1, 0)]
    assert theorem32_expected(3, 0, 0) is None
    assert theorem32_expected(5, 3, 1) is None
    assert theorem32_expected(5, 3, 2) is Direction.DOWN


def test_criterion_matches_actual_f():
    # independent: evaluate f in mpmath from the product formula
    mpmath.mp.dps = 40
    for p in (2, 3, 5, 7):
        rho = rho_series(p, 60 * p).values
        f = [None] + [mpmath.mpf(rho[n].numerator) / rho[n].denominator
                      * (mpmath.mpf(n) / p) ** (1 - mpmath.mpf(p - 1) / p)
                      for n in range(1, 60 * p + 1)]
        for b in range(p):
            for a in range(59):
                expected = theorem32_expected(p, b, a)
                if expected is None:
                    continue
                n = a * p + b
                went_up = f[n + p] > f[n]
                assert went_up == (expected is Direction.UP), (p, b, a)


def test_residue_order_m6():
    assert residue_ordering(6, (6, 2000)) == [1, 0, 2, 5, 3, 4]


def test_residue_order_trivial():
    assert residue_ordering(2, (2, 400)) == [1, 0]
    assert residue_ordering(1, (1, 50)) == [0]
    with pytest.raises(DomainError):
        residue_ordering(6, (3, 20))


@pytest.mark.parametrize("m", [6, 15, 30])
def test_residue_spread_shrinks(m):
    spreads = [residue_spread(m, a) for a in (5, 20, 80)]
    assert spreads[0] > spreads[1] > spreads[2] > 0


def test_residue_spread_trivial():
    assert residue_spread(1, 10) == 0
    with pytest.raises(DomainError):
        residue_spread(6, 0)


@pytest.mark.xfail(strict=True, reason="several classes mod 6 change direction before a = 300")
def test_every_class_mod_6_is_a_single_run():
    for b in range(6):
        assert len(scan_monotonicity(6, b, 300).runs) == 1


def test_classes_mod_6_observed_structure():
    observed = {b: scan_monotonicity(6, b, 300, a_lo=0 if b else 1).runs for b in (0, 3, 5)}
    assert observed[0] == [(Direction.UP, 4), (Direction.DOWN, 295)]
    assert observed[3] == [(Direction.DOWN, 1), (Direction.UP, 299)]
    assert observed[5] == [(Direction.DOWN, 82), (Direction.UP, 218)]


@pytest.mark.parametrize("m", [6, 15, 30])
def test_residue_spread_far_out(m):
    assert residue_spread(m, 2000) < residue_spread(m, 100)
