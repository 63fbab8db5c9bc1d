import sys
from pathlib import Path

import pytest

# Add current directory to path
sys.path.append(str(Path(__file__).parent))

from arith import QSeries
from formalg import FormExpansion
from reference_tables import (D1234_TABLE, GAMMA1_S3_TABLE, MULTIPLICITY_TABLES, PHI1_TABLE,
                              compare_fourier_table, max_order, parse_laurent, retrograde_violations,
                              table_series)
from reptheory import S3_LABELS, S6_LABELS


def test_parse_laurent():
    assert parse_laurent("r**3-3*r+3/r-1/r**3") == {3: 1, 1: -3, -1: 3, -3: -1}
    assert parse_laurent("0") == {}
    assert parse_laurent("-1/r-4-r") == {-1: -1, 0: -4, 1: -1}
    with pytest.raises(ValueError, match="not a Laurent polynomial"):
        parse_laurent("r**(1/2)")


def test_row_shapes():
    for table in MULTIPLICITY_TABLES.values():
        assert all(len(row) == len(S6_LABELS) for row in table.values())
    assert all(len(row) == len(S3_LABELS) for row in GAMMA1_S3_TABLE.values())
    assert all(len(entries) == 3 for _, _, _, entries in PHI1_TABLE)
    assert all(len(entries) == 5 for _, _, _, entries in D1234_TABLE)


def test_table_series_uses_quarter_exponents():
    rows = table_series(PHI1_TABLE)
    assert rows[(4, 4)][0] == {2: -64, -2: 64}
    assert rows[(8, 4)][1] == {}


def test_printed_tables_are_retrograde():
    assert retrograde_violations(PHI1_TABLE) == []
    assert retrograde_violations(D1234_TABLE) == []


def test_max_order():
    assert max_order(PHI1_TABLE) == 8
    assert max_order(D1234_TABLE) == 10


def _first_row_expansion(scale):
    """A weight (2, 5) expansion carrying only the printed [1, 1] row of Phi1, times scale."""
    comps = []
    for b_map in table_series(PHI1_TABLE)[(4, 4)]:
        comps.append(QSeries.from_coefficients({(4, b, 4): scale * v for b, v in b_map.items()}, 8))
    return FormExpansion(2, 5, 0, "Gamma[2]", tuple(comps))


def test_compare_first_row():
    report = compare_fourier_table(_first_row_expansion(1), PHI1_TABLE)
    assert report["rows"] == 1
    assert report["mismatches"] == []


def test_compare_with_normalization():
    expansion = _first_row_expansion(3)
    assert compare_fourier_table(expansion, PHI1_TABLE)["mismatches"]
    report = compare_fourier_table(expansion, PHI1_TABLE, normalize=True)
    assert report["mismatches"] == []
    assert report["lambda"] == ["3/1", "0/1", "0/1", "0/1"]
