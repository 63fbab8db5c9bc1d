import gc
import sys
import weakref
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from arith import Cyc8
from formalg import (LINEAR_RELATIONS, P_SYM, T, XI, add, clear_memo, component, const, declared, double,
                     evaluate, first_nonzero, genus1, grad, is_zero_at, memo_size, mul, pi_scale, power,
                     rankin_cohen, s6_act, specialize, sym, sym_product, theta, theta_exponents, to_sympy,
                     verify_identity, w2_substitution, wedge)
from registry import g_form, x

ORDER = 2


def test_weights_of_atoms():
    assert theta(1).weight == (0, Fraction(1, 2))
    assert grad(3).weight == (1, Fraction(1, 2))
    assert grad(3).p == 1
    chi5 = mul(*[theta(i) for i in range(1, 11)])
    assert chi5.weight == (0, 5)
    with pytest.raises(ValueError):
        theta(0)
    with pytest.raises(ValueError):
        grad(7)


def test_nodes_are_interned():
    assert theta(1) is theta(1)
    assert mul(theta(1), theta(2)) is mul(theta(2), theta(1))
    assert power(theta(3), 4) is x(3)


def test_sum_needs_equal_weights():
    with pytest.raises(ValueError, match="weight mismatch"):
        add(x(1), theta(1))
    with pytest.raises(ValueError):
        mul(grad(1), grad(2))


def test_theta_exponents():
    assert theta_exponents(mul(x(1), theta(2))) == {1: 4, 2: 1}
    assert theta_exponents(rankin_cohen(x(1), x(2))) is None


def test_linear_relations_between_fourth_powers():
    for i, coeffs in LINEAR_RELATIONS.items():
        rhs = add(*[c * x(m) for m, c in coeffs.items()])
        assert verify_identity(x(i), rhs, order=ORDER)["equal"], i


def test_bracket_antisymmetry_and_self_bracket():
    f, g = x(1), mul(theta(2), theta(5), theta(7), theta(9))
    result = verify_identity(rankin_cohen(f, g), -rankin_cohen(g, f), order=ORDER)
    assert result["equal"], result["discrepancy"]
    assert is_zero_at(rankin_cohen(x(3), x(3)), order=ORDER)
    assert rankin_cohen(f, g).weight == (2, 4)


def test_bracket_product_rule():
    # [FG, G] = G [F, G] for scalar F, G
    f, g = x(1), x(2)
    result = verify_identity(rankin_cohen(f * g, g), g * rankin_cohen(f, g), order=ORDER)
    assert result["equal"], result["discrepancy"]


def test_pi_scale_moves_i_into_coefficients():
    result = verify_identity(pi_scale(x(1), 2), -x(1), order=ORDER, stored_only=True)
    assert result["equal"]
    strict = verify_identity(pi_scale(x(1), 2), -x(1), order=ORDER)
    assert not strict["equal"]
    assert strict["discrepancy"] == {"pi_power": [2, 0]}


def test_sym_and_wedge_weights():
    s = sym(grad(1), grad(2))
    assert s.weight == (2, 1)
    w = wedge(grad(1), grad(2))
    assert w.weight == (0, 2)
    with pytest.raises(ValueError):
        wedge(grad(1))
    with pytest.raises(ValueError):
        component(grad(1), 2)


def test_sym_is_commutative():
    a = evaluate(sym(grad(1), grad(4)), order=ORDER)
    b = evaluate(sym(grad(4), grad(1)), order=ORDER)
    assert a.components == b.components


def test_wedge_of_a_gradient_with_itself_vanishes():
    assert is_zero_at(wedge(grad(2), grad(2)), order=ORDER)


def test_descent_claim():
    assert g_form(1, 2).group == "Gamma[2]"
    with pytest.raises(ValueError, match="not a form on Gamma"):
        sym_product([1, 1], mul(theta(5), theta(5)), claim="Gamma[2]")


def test_double_substitutes_two_tau():
    base = evaluate(x(1), order=1).components[0]
    doubled = evaluate(double(x(1)), order=2).components[0]
    assert doubled.coeff((8, 0, 0)) == base.coeff((4, 0, 0))
    assert doubled.coeff((4, 0, 0)).is_zero()


def test_empty_word_is_identity():
    assert s6_act(x(1), ()) is x(1)
    with pytest.raises(ValueError, match="half-integral"):
        s6_act(theta(1), "X")


def test_word_action_preserves_chi5_up_to_phase():
    chi5 = declared(mul(*[theta(i) for i in range(1, 11)]), "Gamma[2]")
    image = s6_act(chi5, "XY")
    lhs = evaluate(image, order=ORDER).components[0]
    rhs = evaluate(chi5, order=ORDER).components[0]
    lead = rhs.lead()
    ratio = lhs.coeff(lead) / rhs.coeff(lead)
    assert lhs == rhs.scale(ratio)


def test_first_nonzero():
    assert first_nonzero(x(1) - x(1), order=ORDER) is None
    index, triple = first_nonzero(x(5), order=ORDER)
    assert index == 0
    assert triple[0] + triple[2] > 0


def test_fricke_substitution_is_an_involution():
    for symbol in (*T, P_SYM, XI):
        assert w2_substitution(w2_substitution(symbol)) == symbol


def test_sympy_translation():
    assert to_sympy(x(1) - 2 * x(2)) == sympy.Symbol("th1") ** 4 - 2 * sympy.Symbol("th2") ** 4
    with pytest.raises(ValueError, match="Fricke image unknown"):
        to_sympy(mul(const(Cyc8(0, 1)), x(1)))


def test_identity_needs_equal_weights():
    with pytest.raises(ValueError, match="weight mismatch: k = 2 vs 4"):
        verify_identity(x(1), x(1) * x(2), order=ORDER)
    with pytest.raises(ValueError, match="weight mismatch: j"):
        verify_identity(x(1), rankin_cohen(x(1), x(2)), order=ORDER)
    # a diagonal restriction is compared with genus-one products of another weight
    restricted = component(specialize(g_form(1, 2), "r_to_one"), 2)
    result = verify_identity(restricted, mul(genus1("00"), genus1("01")), order=1, stored_only=True)
    assert "equal" in result


def test_memo_can_be_cleared():
    evaluate(x(3), order=1)
    assert memo_size() > 0
    assert clear_memo() > 0
    assert memo_size() == 0
    again = evaluate(x(3), order=1)
    assert again.coeff(0, (0, 0, 0)) == Cyc8(1)


def test_unreferenced_nodes_are_released():
    node = const(Fraction(987654, 321))
    ref = weakref.ref(node)
    serial = node.serial
    del node
    gc.collect()
    assert ref() is None
    assert const(Fraction(987654, 321)).serial != serial
