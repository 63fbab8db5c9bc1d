"""Printed tables used as fixtures: S6/S3 multiplicities, level-one dimensions, Fourier rows.

Multiplicity rows list the irreducibles in the order of reptheory.S6_LABELS
(s[6], s[5,1], ..., s[1^6]) or reptheory.S3_LABELS.  Fourier tables store
gamma(a, c) and one Laurent polynomial in r per component, where the row
[a, c] holds the coefficients of exp(pi i (a tau11 + b tau12 + c tau22)).
"""
import logging
from fractions import Fraction

import sympy

from arith import Cyc8

log = logging.getLogger(__name__)

R = sympy.Symbol("r")

# ==========================================
# S6 MULTIPLICITY TABLES (Gamma[2])
# ==========================================

MULTIPLICITY_TABLES = {
    "M0": {
        2: [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
        4: [1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0],
        6: [1, 0, 1, 0, 0, 0, 1, 2, 0, 1, 0],
        8: [1, 0, 3, 0, 0, 1, 1, 3, 0, 0, 0],
        10: [2, 0, 3, 0, 0, 2, 3, 4, 0, 2, 0],
        12: [3, 1, 6, 1, 0, 3, 4, 5, 0, 2, 0],
    },
    "S2": {
        5: [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        7: [0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0],
        9: [0, 1, 0, 2, 1, 2, 1, 0, 3, 1, 1],
        11: [0, 2, 1, 4, 3, 5, 2, 0, 4, 1, 1],
        13: [0, 2, 2, 6, 5, 9, 4, 1, 8, 2, 1],
    },
    "M2": {
        4: [0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
        6: [0, 0, 1, 0, 0, 2, 1, 1, 0, 0, 0],
        8: [0, 0, 2, 1, 0, 3, 3, 2, 1, 2, 0],
        10: [1, 2, 5, 3, 0, 5, 5, 3, 2, 3, 0],
        12: [0, 1, 7, 4, 1, 11, 8, 6, 4, 4, 0],
    },
    "M4": {
        2: [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
        4: [0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0],
        6: [0, 0, 2, 0, 0, 3, 2, 2, 1, 2, 0],
        8: [1, 2, 5, 2, 0, 6, 4, 3, 2, 4, 0],
        10: [1, 2, 8, 4, 1, 12, 8, 6, 5, 6, 0],
        12: [2, 5, 14, 8, 3, 20, 13, 9, 8, 8, 0],
    },
    "S4": {
        3: [0] * 11,
        4: [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
        5: [0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0],
        6: [0, 0, 1, 0, 0, 2, 1, 1, 1, 1, 0],
        7: [0, 1, 1, 1, 1, 3, 1, 0, 2, 1, 0],
        8: [0, 1, 3, 2, 0, 5, 3, 2, 2, 3, 0],
        9: [0, 2, 2, 3, 2, 6, 3, 1, 5, 3, 1],
        10: [1, 2, 6, 4, 1, 10, 7, 4, 5, 5, 0],
        11: [0, 4, 5, 7, 4, 12, 5, 2, 8, 4, 1],
        12: [1, 4, 11, 8, 3, 18, 12, 7, 8, 7, 0],
    },
}

# tables resting on conjectural dimension data for cusp forms
CONDITIONAL_TABLES = {"S2", "S4"}

# S3 multiplicities (s[3], s[2,1], s[1^3]) on M_{0,k}(Gamma1[2])
GAMMA1_S3_TABLE = {
    2: [1, 0, 0],
    4: [3, 1, 0],
    6: [4, 1, 0],
    8: [7, 4, 0],
    10: [9, 5, 0],
    12: [14, 10, 1],
}

# (j, k) with dim S_{j,k}(Gamma) = 1, k >= 4
LEVEL_ONE_DIM1 = {
    0: [10, 12, 14, 35, 39, 41, 43],
    2: [14, 21, 23, 25],
    4: [10, 12, 15, 17],
    6: [8, 10, 11, 13],
    8: [8, 9, 11],
    10: [9, 11],
    12: [6, 7],
    14: [7],
    16: [6, 7],
    18: [5, 6],
    20: [5],
    24: [4],
    28: [4],
    30: [4],
    34: [4],
}

def table_row(table, k):
    from reptheory import from_row
    return from_row(MULTIPLICITY_TABLES[table][k])


# ==========================================
# FOURIER TABLES
# ==========================================

PHI1_TABLE = [
    (1, 1, 64, ["-r+1/r", "-r-1/r", "-r+1/r"]),
    (2, 1, 1280, ["r-1/r", "0", "0"]),
    (2, 2, 1280, ["r**3-3*r+3/r-1/r**3", "2*r**3-2*r-2/r+2/r**3", "r**3-3*r+3/r-1/r**3"]),
    (3, 1, 64, ["3*r**3-13*r+13/r-3/r**3", "3*r**3+9*r+9/r+3/r**3", "r**3+9*r-9/r-1/r**3"]),
    (3, 2, 1280, ["-4*r**3+12*r-12/r+4/r**3", "-4*r**3+4*r+4/r-4/r**3", "-3*r**3-3*r+3/r+3/r**3"]),
    (3, 3, 64, ["-13*r**5+121*r**3-250*r+250/r-121/r**3+13/r**5",
                "-35*r**5+121*r**3-230*r-230/r+121/r**3-35/r**5",
                "-13*r**5+121*r**3-250*r+250/r-121/r**3+13/r**5"]),
    (4, 1, 1280, ["-r**3-5*r+5/r+1/r**3", "0", "0"]),
    (4, 2, 1280, ["-r**5+5*r**3-10*r+10/r-5/r**3+1/r**5",
                  "-2*r**5-10*r**3+12*r+12/r-10/r**3-2/r**5",
                  "-r**5-3*r**3+14*r-14/r+3/r**3+1/r**5"]),
    (4, 3, 1280, ["5*r**5+19*r**3+14*r-14/r-19/r**3-5/r**5",
                  "20*r**5-28*r**3+8*r+8/r-28/r**3+20/r**5",
                  "12*r**5-28*r**3+24*r-24/r+28/r**3-12/r**5"]),
    (4, 4, 1280, ["-5*r**7+19*r**5-25*r**3+15*r-15/r+25/r**3-19/r**5+5/r**7",
                  "-10*r**7+66*r**5-10*r**3-46*r-46/r-10/r**3+66/r**5-10/r**7",
                  "-5*r**7+19*r**5-25*r**3+15*r-15/r+25/r**3-19/r**5+5/r**7"]),
    (5, 1, 64, ["-5*r**3+145*r-145/r+5/r**3", "-27*r**3-27*r-27/r-27/r**3", "-9*r**3-27*r+27/r+9/r**3"]),
    (5, 2, 1280, ["8*r**5-8*r**3-16*r+16/r+8/r**3-8/r**5",
                  "8*r**5+16*r**3-24*r-24/r+16/r**3+8/r**5",
                  "3*r**5+14*r**3-3*r+3/r-14/r**3-3/r**5"]),
    (5, 3, 64, ["-5*r**7-270*r**5+190*r**3-745*r+745/r-190/r**3+270/r**5+5/r**7",
                "17*r**7-270*r**5+242*r**3+659*r+659/r+242/r**3-270/r**5+17/r**7",
                "13*r**7-250*r**5+242*r**3+217*r-217/r-242/r**3+250/r**5-13/r**7"]),
    (6, 1, 1280, ["5*r**3-3*r+3/r-5/r**3", "0", "0"]),
    (6, 2, 1280, ["-13*r**5+5*r**3+50*r-50/r-5/r**3+13/r**5",
                  "2*r**5+18*r**3-20*r-20/r+18/r**3+2/r**5",
                  "3*r**5-3*r**3-6*r+6/r+3/r**3-3/r**5"]),
]

# the printed [5,5] row has 567/r in its second entry; the fourth entry and
# the symmetry of the row force 576/r
D1234_TABLE = [
    (1, 1, 256, ["0", "0", "1", "0", "0"]),
    (1, 3, 512, ["0", "0", "-1/r-4-r", "2/r-2*r", "-2/r+4-2*r"]),
    (1, 5, 256, ["0", "0", "1/r**2+16/r+20+16*r+r**2", "-4/r**2-32/r+32*r+4*r**2",
                 "4/r**2+16/r-40+16*r+4*r**2"]),
    (1, 7, 1024, ["0", "0", "-2/r**2-9/r-9*r-2*r**2", "8/r**2+18/r-18*r-8*r**2",
                  "-6/r**2+6/r+6*r-6*r**2"]),
    (3, 3, 1024, ["4/r**2-4/r-4*r+4*r**2", "-10/r**2+8/r-8*r+10*r**2", "-11/r**2-8/r+30-8*r+11*r**2",
                  "-10/r**2+8/r-8*r+10*r**2", "4/r**2-4/r-4*r+4*r**2"]),
    (3, 5, 1024, ["-6/r**3-2/r**2+8/r+8*r-2*r**2-6*r**3", "24/r**3-18/r+18*r-24*r**3",
                  "-39/r**3+26/r**2-68/r-68*r+26*r**2-39*r**3",
                  "30/r**3-8/r**2+46/r-46*r+8*r**2-30*r**3",
                  "-6/r**3-16/r**2+22/r+22*r-16*r**2-6*r**3"]),
    (3, 7, 1024, ["4/r**4+8/r**3-16/r**2+16/r-24+16*r-16*r**2+8*r**3+4*r**4",
                  "-22/r**4-32/r**3+56/r**2-16/r+16*r-56*r**2+32*r**3+22*r**4",
                  "47/r**4+16/r**3-2/r**2+32/r+78+32*r-2*r**2+16*r**3+47*r**4",
                  "-42/r**4+32/r**3-96/r**2-144/r+144*r+96*r**2-32*r**3+42*r**4",
                  "12/r**4-24/r**3+48/r**2+48/r-168+48*r+48*r**2-24*r**3+12*r**4"]),
    (5, 5, 256, ["60/r**4+64/r**3+72/r**2-96/r-200-96*r+72*r**2+64*r**3+60*r**4",
                 "-324/r**4-720/r**2+576/r-576*r+720*r**2+324*r**4",
                 "525/r**4-128/r**3+936/r**2-192/r+634-192*r+936*r**2-128*r**3+525*r**4",
                 "-324/r**4-720/r**2+576/r-576*r+720*r**2+324*r**4",
                 "60/r**4+64/r**3+72/r**2-96/r-200-96*r+72*r**2+64*r**3+60*r**4"]),
]

def parse_laurent(text):
    """Laurent polynomial in r -> {exponent: Fraction}."""
    expr = sympy.expand(sympy.sympify(text, locals={"r": R}))
    out = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        coeff, exp = term.as_coeff_exponent(R)
        if not coeff.is_Rational or not exp.is_Integer:
            raise ValueError(f"not a Laurent polynomial in r: {text}")
        out[int(exp)] = out.get(int(exp), Fraction(0)) + Fraction(int(coeff.p), int(coeff.q))
    return {e: c for e, c in out.items() if c}


def table_series(table):
    """(A, C) -> one {B: Fraction} map per component, in the quarter-exponent convention."""
    rows = {}
    for a, c, gamma, entries in table:
        comps = []
        for text in entries:
            comps.append({2 * b: gamma * v for b, v in parse_laurent(text).items()})
        rows[(4 * a, 4 * c)] = comps
    return rows


def max_order(table):
    return max(Fraction(a + c, 1) for a, c, _, _ in table)


def retrograde_violations(table):
    """Pairs [a,c], [c,a] both printed whose vectors are not reverses of each other."""
    rows = {(a, c): [parse_laurent(t) for t in entries] for a, c, _, entries in table}
    gammas = {(a, c): g for a, c, g, _ in table}
    bad = []
    for (a, c), comps in rows.items():
        mirror = rows.get((c, a))
        if mirror is None:
            continue
        scaled = [{b: v * gammas[(a, c)] for b, v in comp.items()} for comp in comps]
        other = [{b: v * gammas[(c, a)] for b, v in comp.items()} for comp in mirror]
        if scaled != list(reversed(other)):
            bad.append((a, c))
    return bad


def series_retrograde_violations(expansion):
    """Rows (A, C) of a computed expansion whose transpose row is not the reversed vector."""
    rows = [comp.laurent_rows() for comp in expansion.components]
    keys = set()
    for r in rows:
        keys.update(r)
    bad = []
    for a, c in sorted(keys):
        mine = [r.get((a, c), {}) for r in rows]
        theirs = [r.get((c, a), {}) for r in rows]
        if mine != list(reversed(theirs)):
            bad.append((a, c))
    return bad


def compare_fourier_table(expansion, table, normalize=False):
    """Compare computed rows with a printed table.

    With normalize=True one global constant lambda is fixed on the first
    printed row with a nonzero entry and every row is compared after scaling
    the table by it.  Returns {rows, mismatches, lambda}.
    """
    expected = table_series(table)
    computed = [comp.laurent_rows() for comp in expansion.components]
    scale = Cyc8(1)
    if normalize:
        scale = None
        for key, comps in expected.items():
            for i, comp in enumerate(comps):
                for b, value in sorted(comp.items()):
                    got = computed[i].get(key, {}).get(b, Cyc8(0))
                    scale = got / Cyc8(value)
                    break
                if scale is not None:
                    break
            if scale is not None:
                break
        if scale is None or scale.is_zero():
            raise ValueError("cannot normalize: leading table entry vanishes in the expansion")
        log.debug("table normalization constant %s", scale)
    cutoff = expansion.cutoff
    mismatches = []
    checked = 0
    for (a, c), comps in expected.items():
        if a + c > cutoff:
            continue
        checked += 1
        for i, comp in enumerate(comps):
            got = {b: v for b, v in computed[i].get((a, c), {}).items() if not v.is_zero()}
            want = {b: scale * Cyc8(v) for b, v in comp.items()}
            if got != want:
                mismatches.append({"row": [a // 4, c // 4], "component": i,
                                   "expected": {str(b // 2): w.to_strings() for b, w in want.items()},
                                   "computed": {str(b // 2): g.to_strings() for b, g in got.items()}})
    return {"rows": checked, "mismatches": mismatches, "lambda": scale.to_strings()}
