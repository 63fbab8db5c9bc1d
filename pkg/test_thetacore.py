import sys
from pathlib import Path

import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from arith import Cyc8
from thetacore import (EVEN_CHARS, GENERATORS, ODD_CHARS, TRIPLES, X_PRIME, Y_PRIME, all_pair_partitions,
                       bilinear_rhs, block_diag_matrix, char_parity, descent_violations, genus1_series,
                       is_symplectic, level2_descent_check, monomial_columns, odd_pair_to_quadruple,
                       partition_to_quadruple, reduce_characteristic, s6_image, slash_matrices, sp4_char_action,
                       theta_constant_qexp, theta_genus1_qexp, theta_gradient_qexp, theta_second_order_qexp,
                       theta_square_sign, triple_to_even, word_permutation)


def test_ten_even_and_six_odd_characteristics():
    assert len(set(EVEN_CHARS)) == 10
    assert len(set(ODD_CHARS)) == 6
    assert all(char_parity(c) == "even" for c in EVEN_CHARS)
    assert all(char_parity(c) == "odd" for c in ODD_CHARS)


def test_triples_give_their_even_characteristic():
    for i, (first, second) in TRIPLES.items():
        assert triple_to_even(first) == i
        assert triple_to_even(second) == i


def test_pair_quadruples_and_partitions():
    assert len(odd_pair_to_quadruple(1, 2)) == 4
    with pytest.raises(ValueError):
        odd_pair_to_quadruple(3, 3)
    partitions = all_pair_partitions()
    assert len(partitions) == 15
    assert all(len(partition_to_quadruple(p)) == 4 for p in partitions)


def test_reduce_characteristic_sign():
    assert reduce_characteristic((2, 0), (0, 0)) == ((0, 0, 0, 0), 1)
    assert reduce_characteristic((1, 0), (2, 0)) == ((1, 0, 0, 0), -1)


def test_generators_are_symplectic():
    for m in (*GENERATORS.values(), X_PRIME, Y_PRIME):
        assert is_symplectic(m)
    with pytest.raises(ValueError):
        block_diag_matrix(((2, 0), (0, 1)))
    with pytest.raises(ValueError):
        sp4_char_action(((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), ODD_CHARS[0])


def test_generators_permute_characteristics():
    for m in GENERATORS.values():
        assert sorted(s6_image(m)) == [1, 2, 3, 4, 5, 6]
    assert word_permutation(()) == (1, 2, 3, 4, 5, 6)
    for target in ("theta10", "grad6"):
        for g in "XY":
            perm = slash_matrices(target, g).permutation()
            assert sorted(perm) == list(range(1, len(perm) + 1))


def test_identity_fixes_theta_squares():
    identity = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    assert all(theta_square_sign(identity, j) == 1 for j in range(1, 11))


def test_descent_conditions():
    # theta_1^4 (all rows even) descends; theta_5^2 alone does not
    assert descent_violations(monomial_columns([], {1: 4})) == []
    assert descent_violations(monomial_columns([], {5: 2}))
    assert level2_descent_check(monomial_columns([], {1: 4}))
    assert not level2_descent_check(monomial_columns([], {5: 2}))


def test_theta_constant_first_terms():
    t = theta_constant_qexp(1, order=2)
    assert t.coeff((0, 0, 0)) == 1
    assert t.coeff((4, 0, 0)) == 2
    assert t.coeff((0, 0, 4)) == 2
    assert t.coeff((4, 4, 4)) == 2
    assert t.coeff((4, -4, 4)) == 2
    # theta_5 has characteristic mu = (0, 1): no constant term
    assert theta_constant_qexp(5, order=2).coeff((0, 0, 0)).is_zero()
    with pytest.raises(ValueError):
        theta_constant_qexp(11, order=1)


def test_odd_gradients_vanish_at_constant_term():
    for i in range(1, 7):
        first, second = theta_gradient_qexp(i, order=2)
        assert first.coeff((0, 0, 0)).is_zero()
        assert second.coeff((0, 0, 0)).is_zero()
        assert not (first.is_zero() and second.is_zero())


def test_genus_one_jacobi_quartic():
    cutoff = 40
    t00, t01, t10 = (genus1_series(w, cutoff) for w in ("00", "01", "10"))
    assert t00 ** 4 == t01 ** 4 + t10 ** 4
    assert t01.coeff((4, 0, 0)) == Cyc8(-2)


def test_second_order_duplication():
    for i in range(1, 11):
        square = theta_constant_qexp(i, order=3) ** 2
        assert square == bilinear_rhs(i, 12)


def test_second_order_constants():
    t = theta_second_order_qexp((0, 0), order=2)
    assert t.coeff((0, 0, 0)) == 1
    assert t.coeff((8, 0, 0)) == 2
    assert theta_second_order_qexp((1, 0), order=2).coeff((0, 0, 0)).is_zero()
    with pytest.raises(ValueError, match="not a bit pair"):
        theta_second_order_qexp((2, 0), order=1)


def test_genus_one_wrapper_matches_series():
    assert theta_genus1_qexp("00", order=10) == genus1_series("00", 40)
