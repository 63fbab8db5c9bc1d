import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from arith import (I, ONE, Cyc8, QSeries, cyc8_arith, order_to_cutoff, qseries_div, qseries_double,
                   qseries_exact_div, qseries_ring, qseries_specialize, qseries_tau_derivative,
                   qseries_transpose)


def q1(cutoff, power=1):
    return QSeries({(4 * power, 0, 0): (1, 0, 0, 0)}, cutoff)


# ==========================================
# Q(zeta_8)
# ==========================================

def test_zeta_has_order_eight():
    z = Cyc8.zeta()
    assert z ** 8 == ONE
    assert z ** 4 == Cyc8(-1)
    assert I * I == Cyc8(-1)
    assert Cyc8.zeta(9) == z


def test_field_inverse_and_norm():
    a = Cyc8(1, 1, 0, 0)
    assert a * a.inverse() == ONE
    assert a.norm() == 2
    b = Cyc8(Fraction(1, 3), -2, 5, Fraction(7, 2))
    assert (b / b) == ONE
    assert (3 - b) + b == Cyc8(3)


def test_zero_division_message():
    with pytest.raises(ZeroDivisionError, match="division by zero in coefficient field"):
        Cyc8(0).inverse()


def test_field_operation_dispatch():
    z = Cyc8.zeta()
    assert cyc8_arith(z, z ** 3, "mul") == Cyc8(-1)
    s = cyc8_arith(z, z ** 3, "add")
    assert cyc8_arith(s, s, "mul") == Cyc8(-2)
    assert cyc8_arith(Cyc8(2), op="inv") == Cyc8(Fraction(1, 2))
    assert cyc8_arith(z, op="neg") == Cyc8(0, -1)
    with pytest.raises(ValueError, match="unknown operation"):
        cyc8_arith(z, z, "pow")


def test_string_records():
    value = Cyc8(Fraction(-1, 2), 0, 3, 0)
    assert Cyc8.from_strings(value.to_strings()) == value
    assert value.to_strings()[0] == "-1/2"


# ==========================================
# TRUNCATED SERIES
# ==========================================

def test_order_to_cutoff():
    assert order_to_cutoff(6) == 24
    assert order_to_cutoff(Fraction(1, 2)) == 2
    assert order_to_cutoff("5/4") == 5
    with pytest.raises(ValueError):
        order_to_cutoff("1/3")


def test_truncation_keeps_a_plus_c_up_to_cutoff():
    s = QSeries({(4, 0, 4): (1, 0, 0, 0), (8, 0, 4): (1, 0, 0, 0), (0, 0, 0): (2, 0, 0, 0)}, cutoff=8)
    assert len(s) == 2
    assert s.coeff((8, 0, 4)).is_zero()
    assert s.order == 2


def test_binomial_square():
    one = QSeries.one(12)
    s = (one + q1(12)) ** 2
    assert s.coeff((0, 0, 0)) == 2 - 1
    assert s.coeff((4, 0, 0)) == 2
    assert s.coeff((8, 0, 0)) == 1
    assert s.coeff((12, 0, 0)).is_zero()


def test_geometric_series_division():
    cutoff = 16
    quotient = qseries_div(QSeries.one(cutoff), QSeries.one(cutoff) - q1(cutoff))
    for n in range(5):
        assert quotient.coeff((4 * n, 0, 0)) == 1
    with pytest.raises(ValueError, match="divisor has no unit constant term"):
        qseries_div(QSeries.one(cutoff), q1(cutoff))


def test_exact_division_loses_leading_grade():
    cutoff = 16
    a = q1(cutoff) * (QSeries.one(cutoff) + q1(cutoff))
    quotient = qseries_exact_div(a, q1(cutoff))
    assert quotient.cutoff == 12
    assert quotient == QSeries.one(12) + q1(12)


def test_mixed_coefficients_and_scaling():
    s = QSeries.from_coefficients({(0, 0, 0): Cyc8(0, 1), (4, 2, 4): Fraction(1, 3)}, 8)
    doubled = s.scale(2)
    assert doubled.coeff((0, 0, 0)) == Cyc8(0, 2)
    assert doubled.coeff((4, 2, 4)) == Fraction(2, 3)
    assert (s - s).is_zero()
    assert s.support_ok()


def test_series_operation_dispatch():
    a, b = q1(8), q1(8, 2)
    assert qseries_ring(a, b, "add") == a + b
    assert qseries_ring(a, a, "mul") == b
    assert qseries_ring(a, I, "scale").coeff((4, 0, 0)) == I
    assert qseries_ring(a, op="neg").coeff((4, 0, 0)) == Cyc8(-1)
    with pytest.raises(ValueError, match="unknown operation"):
        qseries_ring(a, b, "div")


def test_derivatives_double_and_transpose():
    s = QSeries({(4, 2, 8): (1, 0, 0, 0)}, 16)
    assert qseries_tau_derivative(s, "d11").coeff((4, 2, 8)) == Fraction(1, 2)
    assert qseries_tau_derivative(s, "d12").coeff((4, 2, 8)) == Fraction(1, 2)
    assert qseries_tau_derivative(s, "d22").coeff((4, 2, 8)) == 1
    assert qseries_double(s).coeff((8, 4, 16)) == 1
    assert qseries_double(s).cutoff == 32
    assert qseries_transpose(s).coeff((8, 2, 4)) == 1
    with pytest.raises(ValueError):
        qseries_tau_derivative(s, "d33")


def test_specializations():
    s = QSeries({(4, 2, 4): (1, 0, 0, 0), (4, -2, 4): (1, 0, 0, 0), (4, 0, 0): (3, 0, 0, 0)}, 8)
    assert qseries_specialize(s, "r_to_one").coeff((4, 0, 4)) == 2
    assert len(qseries_specialize(s, "siegel_q2_slice")) == 1


def test_records_keep_canonical_order():
    s = QSeries({(4, 0, 0): (1, 0, 0, 0), (0, 0, 0): (1, 0, 0, 0), (4, -2, 4): (0, 1, 0, 0)}, 8)
    records = s.to_records()
    assert [(r["A"], r["B"], r["C"]) for r in records] == [(0, 0, 0), (4, 0, 0), (4, -2, 4)]
    assert QSeries.from_records(records, 8) == s
