import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from formalg import evaluate, is_zero_at, pi_scale, s6_act, verify_identity
from registry import (FORMS_MAP, H_SIGN_FLIPS, UnknownFormError, complement_evens, f_triples, g_form, get_form,
                      h_12, h_form, is_cusp, list_names, named_form, quadruple_evens, s6_words, word_for_pair)


def test_registered_weights():
    assert get_form("x1").weight == (0, 2)
    assert get_form("chi5").weight == (0, 5)
    assert get_form("chi10").weight == (0, 10)
    assert get_form("G_12").weight == (2, 4)
    assert get_form("Phi1").weight == (2, 5)
    assert get_form("E1").weight == (4, 2)
    assert get_form("F").weight == (6, 3)


def test_unknown_form_suggests_close_names():
    with pytest.raises(UnknownFormError) as info:
        get_form("chi55")
    assert "chi5" in info.value.suggestions
    assert "did you mean" in str(info.value)
    assert isinstance(info.value, KeyError)


def test_indexed_families():
    f = named_form("f[1;1,2,5]")
    assert f.weight == (2, 4)
    assert f.group == "Gamma[2]"
    assert is_cusp("F[1,2,3,4]")
    with pytest.raises(ValueError):
        named_form("F[1,1,3,4]")


def test_cusp_flags():
    assert is_cusp("chi5")
    assert is_cusp("Phi3")
    assert not is_cusp("x1")
    assert set(list_names()) == set(FORMS_MAP)


def test_quadruples_partition_the_evens():
    for i in range(1, 6):
        for j in range(i + 1, 7):
            quad = set(quadruple_evens(i, j))
            rest = set(complement_evens(i, j))
            assert len(quad) == 4 and len(rest) == 6
            assert quad | rest == set(range(1, 11))


def test_ten_triples_for_a_gradient_square():
    assert len(f_triples(1)) == 10
    assert (1, 2, 5) in f_triples(1)


def test_words_reach_every_pair():
    assert len(s6_words()) == 720
    for i in range(1, 6):
        for j in range(i + 1, 7):
            word = word_for_pair(i, j)
            perm = [p for p, w in s6_words().items() if w == word][0]
            assert {perm[0], perm[1]} == {i, j}


def test_theta_square_quadratic_relation():
    # x1 - x4 - x6 - x7 vanishes
    expr = get_form("x1") - get_form("x4") - get_form("x6") - get_form("x7")
    assert is_zero_at(expr, order=2)


def test_chi10_definition():
    result = verify_identity(get_form("chi10"), get_form("chi5") ** 2 * Fraction(-1, 2 ** 14), order=2)
    assert result["equal"], result["discrepancy"]


def test_chi5_is_a_cusp_form():
    chi5 = evaluate(get_form("chi5"), order=2).components[0]
    assert all(a > 0 and c > 0 for a, _, c in chi5.terms)


def test_gradient_pairs_match_brackets_with_one_sign():
    # G_ij = -pi^2 H_ij as stored, with no rescaling
    for i, j in [(1, 2), (1, 3), (3, 4), (5, 6)]:
        result = verify_identity(g_form(i, j), -pi_scale(h_form(i, j), 2), order=1)
        assert result["equal"], (i, j, result["discrepancy"])
    image = s6_act(h_12(), word_for_pair(3, 4))
    assert (3, 4) in H_SIGN_FLIPS
    assert verify_identity(h_form(3, 4), -image, order=1)["equal"]
