import sys
from pathlib import Path

import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from reference_tables import MULTIPLICITY_TABLES
from reptheory import (GENFUNS, S6_LABELS, GenFunction, character_table, class_word, cycle_type, dim_formula,
                       eisenstein_dim, element_words, elliptic_dim, euler_sums, from_row, label, level_one_cusp_dim,
                       modular_character, one_minus, parse_label, relation_representation, sym_power_s21)
from thetacore import word_permutation


def test_labels():
    assert label((4, 1, 1)) == "s[4,1^2]"
    assert label((2, 2, 2)) == "s[2^3]"
    assert parse_label("s[3,1^3]") == (3, 1, 1, 1)
    assert len(S6_LABELS) == 11


def test_character_table_of_s6():
    table = character_table("S6")
    assert table.order == 720
    assert len(table.classes) == 11
    assert sum(table.dim(name) ** 2 for name in table.chars) == 720
    assert table.dim("s[5,1]") == 5
    assert table.dim("s[3,2,1]") == 16
    assert table.dim("s[2^3]") == 5
    assert table.value("s[1^6]", (2, 1, 1, 1, 1)) == -1


def test_row_orthogonality():
    table = character_table("S6")
    for name, row in table.chars.items():
        counts = table.inner(row)
        assert counts[name] == 1
        assert sum(counts.values()) == 1


def test_s3_table():
    table = character_table("S3")
    assert table.order == 6
    assert sorted(table.dim(n) for n in table.chars) == [1, 1, 2]
    with pytest.raises(ValueError):
        character_table("S4")


def test_cycle_type():
    assert cycle_type((2, 1, 3, 4, 5, 6)) == (2, 1, 1, 1, 1)
    assert cycle_type((2, 3, 1, 5, 6, 4)) == (3, 3)


def test_words_cover_s6():
    assert len(element_words()) == 720
    sigma = (2, 3, 1, 5, 6, 4)
    assert word_permutation(class_word(sigma)) == sigma
    assert class_word(range(1, 7)) == []


def test_generating_function_coefficients():
    geometric = GenFunction("geometric", (1,), (1, -1))
    assert geometric.coeffs(5) == [1] * 6
    assert one_minus(2) == [1, 0, -1]
    with pytest.raises(ValueError):
        GenFunction("bad", (1,), (0, 1)).coeffs(2)


def test_scalar_dimensions():
    # five weight-2 generators, one quartic relation, chi5 in weight 5
    assert [dim_formula(0, k) for k in (2, 4, 6, 8)] == [5, 15, 35, 69]
    assert dim_formula(0, 5) == 1
    ring = GENFUNS["ring_gamma2"].coeffs(8)
    assert [ring[k] for k in (2, 4, 5, 6, 8)] == [5, 15, 1, 35, 69]
    with pytest.raises(ValueError, match="formula not applicable"):
        dim_formula(0, 3)


def test_vector_valued_dimensions():
    assert dim_formula(2, 4) == 15
    assert dim_formula(2, 5, "S") == 9
    assert GENFUNS["M2"].coeffs(4)[4] == 15
    assert GENFUNS["Sigma2"].coeffs(5)[5] == 9
    assert dim_formula(3, 6) == 0


def test_multiplicity_genfuns_match_printed_rows():
    for k in (2, 4, 6, 8):
        computed = [GENFUNS[f"mult_{name}"].coeffs(k)[k] for name in S6_LABELS]
        assert computed == MULTIPLICITY_TABLES["M0"][k], k


def test_printed_rows_have_the_right_dimension():
    for k in (2, 4, 6, 8):
        assert from_row(MULTIPLICITY_TABLES["M0"][k]).dimension() == dim_formula(0, k)


def test_sym_power_dimensions():
    for r in range(13):
        m = sym_power_s21(r).counts
        assert m["s[3]"] + 2 * m["s[2,1]"] + m["s[1^3]"] == r + 1


def test_eisenstein_dimensions():
    assert eisenstein_dim(0, 4) == 15
    assert eisenstein_dim(0, 5) == 0
    assert eisenstein_dim(2, 4, printed=True) == 45


def test_alternating_sums_vanish():
    for j in (2, 4):
        assert euler_sums(j) == (0, 0)


def test_level_one_cusp_dimensions():
    assert [elliptic_dim(k) for k in (0, 2, 4, 12, 14, 24)] == [1, 0, 1, 2, 1, 3]
    assert [level_one_cusp_dim(0, k) for k in (4, 8, 10, 12, 20, 35, 37)] == [0, 0, 1, 1, 3, 1, 0]
    assert level_one_cusp_dim(4, 10) == 1
    assert level_one_cusp_dim(2, 9) == 0
    with pytest.raises(ValueError, match="no S6 table"):
        level_one_cusp_dim(6, 8)


def test_modular_character_of_the_fourth_powers():
    from registry import x

    traces = modular_character([x(i) for i in range(1, 6)], 2)
    assert traces == character_table("S6").chars["s[2^3]"]


def test_relations_among_products_of_fourth_powers():
    from registry import x

    # the formal products x_i x_j - x_j x_i span the relations: the exterior square of s[2^3]
    xs = [x(i) for i in range(1, 6)]
    m = relation_representation(xs, xs, 3)
    assert m.nonzero() == {"s[3,1^3]": 1}
    assert m.dimension() == 10
