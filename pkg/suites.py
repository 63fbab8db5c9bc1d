"""Verification suites: named lists of identity checks run at a truncation order.

Every suite follows the same template: `checks()` lists the items, `run()`
evaluates them in a bounded pool and assembles an order-preserving report.
An item that raises becomes an `error` record; it never aborts the suite.
"""
import json
import logging
import time
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Callable, NamedTuple

import numpy as np
import sympy

from arith import Cyc8, DEFAULT_ORDER, I, QSeries
from certifier import (certify_span, coefficient_matrix, contract, express_in_basis, hilbert_check, module_products,
                       monomials, presentation_kernel, rank_kernel, x_monomials)
from formalg import (LINEAR_RELATIONS, add, clear_memo, component, const, double, evaluate, first_nonzero,
                     fricke_substitute, genus1, is_zero_at, mul, pi_scale, power, rankin_cohen,
                     s6_act, specialize, sym_product, theta, to_calculus, verify_identity,
                     w2_substitution, wedge)
from reference_tables import (CONDITIONAL_TABLES, D1234_TABLE, GAMMA1_S3_TABLE, LEVEL_ONE_DIM1,
                              MULTIPLICITY_TABLES, PHI1_TABLE, compare_fourier_table,
                              retrograde_violations, series_retrograde_violations, table_row)
from registry import (alpha, anti_invariant_f, big_phi, big_x, big_y, chi5, chi7, chi10, chi30, d_form,
                      delta, e_form, eta, f_form, f_triples, form_c, g_basis, g_form, get_form, h_form,
                      hp_12, k_form, level1_s12_6, level1_s2_14, level1_s4_10, level1_s6_8, r_form, s,
                      sigma2_gamma1, small_phi, squares, thetas, u_forms, x, x_bracket, xi, y_model)
from reptheory import (GENFUNS, branch_s6_to_s3, character_table, dim_formula, eisenstein_dim, eisenstein_rep,
                       eisenstein_s3_rep, euler_sums, from_row, gamma1_dim, gamma2_genfun, isotypic_project,
                       level_one_cusp_dim, one_minus, relation_representation, rep_multiplicities)
from thetacore import X_PRIME, Y_PRIME, descent_violations, monomial_columns, s6_image

log = logging.getLogger(__name__)

LOW_CONFIDENCE_ORDER = 4
PAIRS = list(combinations(range(1, 7), 2))


class Check(NamedTuple):
    id: str
    anchor: str
    run: Callable        # order -> bool | status string | (either, detail)
    conditional: bool = False


# ==========================================
# CHECK BUILDERS
# ==========================================

def identity(lhs, rhs, stored_only=False):
    """lhs() == rhs() coefficientwise, with the pi powers compared unless stored_only."""
    def run(order):
        result = verify_identity(lhs(), rhs(), order=order, stored_only=stored_only)
        powers = [result["pi_power_lhs"], result["pi_power_rhs"]]
        if result["equal"] and powers[0] != powers[1]:
            return True, {"pi_power": powers}
        return result["equal"], result["discrepancy"]
    return run


def zero(expr):
    def run(order):
        e = expr()
        if is_zero_at(e, order=order):
            return True, None
        index, triple = first_nonzero(e, order=order)
        value = evaluate(e, order=order).coeff(index, triple)
        return False, {"component": index, "triple": list(triple), "value": value.to_strings()}
    return run


def fact(fn):
    """Order-independent check; fn() returns a bool or (bool, detail)."""
    return lambda order: fn()


def _total(terms):
    return add(*terms)


def _lin(coeffs, forms):
    return add(*[c * f for c, f in zip(coeffs, forms)])


def _matches(multiplicity, expected):
    got = multiplicity.nonzero()
    return got == expected, {"computed": str(multiplicity)}


# ==========================================
# SUITE TEMPLATE
# ==========================================

class VerificationSuite(ABC):
    """Abstract base class for the verification suites."""

    name = ""

    def __init__(self, order=DEFAULT_ORDER, threads=1, cache_dir=None, use_cache=False):
        if Fraction(order) <= 0:
            raise ValueError(f"order must be positive: {order}")
        if threads < 1:
            raise ValueError(f"threads must be at least 1: {threads}")
        self.order = order
        self.threads = threads
        self.cache_dir = cache_dir
        self.use_cache = use_cache

    @abstractmethod
    def checks(self):
        """Returns the list of Check items of the suite."""
        pass

    def cached_forms(self):
        """Registry names whose expansions are shared by many items."""
        return []

    def warm_cache(self):
        from database import cached_expansion, init_db

        init_db(self.cache_dir)
        for name in self.cached_forms():
            cached_expansion(name, get_form(name), self.order, self.cache_dir)

    def run_check(self, check):
        record = {"id": check.id, "anchor": check.anchor, "order": str(Fraction(self.order)),
                  "status": "pass", "discrepancy": None, "conditional": check.conditional}
        try:
            outcome = check.run(self.order)
            detail = None
            if isinstance(outcome, tuple):
                outcome, detail = outcome
            if outcome is True:
                record["status"] = "pass"
            elif outcome is False:
                record["status"] = "fail"
                record["discrepancy"] = detail
            else:
                record["status"] = outcome
            if detail is not None and outcome is not False:
                record["detail"] = detail
        except Exception as e:
            log.warning("%s/%s raised %s: %s", self.name, check.id, type(e).__name__, e)
            record["status"] = "error"
            record["discrepancy"] = f"{type(e).__name__}: {e}"
        log.info("%s %-40s %s", self.name, check.id, record["status"])
        return record

    def run(self):
        """Runs every item and returns the report dict."""
        start = time.time()
        if self.use_cache:
            try:
                self.warm_cache()
            except Exception as e:
                log.warning("expansion cache unavailable (%s); computing from scratch", e)
        items = self.checks()
        try:
            if self.threads > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    records = list(pool.map(self.run_check, items))
            else:
                records = [self.run_check(c) for c in items]
        finally:
            # expansions are shared between the items of one suite only
            clear_memo()
        return {
            "suite": self.name,
            "order": str(Fraction(self.order)),
            "low_confidence": Fraction(self.order) < LOW_CONFIDENCE_ORDER,
            "records": records,
            "wall_time": round(time.time() - start, 3),
        }


def failed(report):
    """True iff an unconditional record did not pass."""
    return any(r["status"] in ("fail", "error") and not r["conditional"] for r in report["records"])


# ==========================================
# RINGS
# ==========================================

def _sigma(values, r):
    return add(*[mul(*c) for c in combinations(values, r)])


class RingsSuite(VerificationSuite):
    name = "rings"

    def cached_forms(self):
        return [f"x{i}" for i in range(1, 11)]

    def checks(self):
        out = [
            Check("theta_square_relation", "quadratic theta relation",
                  zero(lambda: squares(1, 3) - squares(2, 4) - squares(5, 6))),
        ]
        for n, coeffs in LINEAR_RELATIONS.items():
            out.append(Check(f"linear_relation_x{n}", "linear relations among x_i",
                             zero(lambda n=n, c=coeffs: x(n) - _total([v * x(i) for i, v in c.items()]))))
        out += [
            Check("linear_relation_x1_x4_x6_x7", "linear relations among x_i",
                  zero(lambda: x(1) - x(4) - x(6) - x(7))),
            Check("igusa_quartic", "Igusa quartic, x-model",
                  zero(lambda: power(_total([power(x(i), 2) for i in range(1, 11)]), 2)
                       - 4 * _total([power(x(i), 4) for i in range(1, 11)]))),
            Check("chi10_definition", "chi10 normalization",
                  identity(lambda: power(chi5(), 2), lambda: -2 ** 14 * chi10())),
            Check("theta1234_squares", "ring of Gamma0[2]",
                  identity(lambda: squares(1, 2, 3, 4),
                           lambda: Fraction(1, 8) * (-power(s(1), 2) + 4 * s(2) + alpha()))),
            Check("s4_quartic", "ring of Gamma0[2]",
                  identity(lambda: 64 * s(4), lambda: power(-power(s(1), 2) + 4 * s(2) + alpha(), 2))),
            Check("d_form_invariant", "ring of Gamma1[2], weight 8",
                  identity(lambda: self._d_quadratic(),
                           lambda: power(s(2), 2) - 3 * s(1) * s(3) + 12 * s(4))),
            Check("weight8_relation", "ring of Gamma1[2], weight 8",
                  identity(lambda: 16 * self._d_quadratic(), self._weight8_rhs)),
            Check("form_c", "ring of Gamma1[2], weight 12",
                  identity(form_c, lambda: Fraction(1, 2) * ((x(1) * x(3) - x(2) * x(4)) * (x(5) + x(6))
                                                             + s(1) * x(5) * x(6)))),
            Check("weight12_relation", "ring of Gamma1[2], weight 12",
                  identity(lambda: power(form_c(), 2), lambda: mul(*[x(i) for i in range(5, 11)]))),
            Check("weight14_relation", "odd weights on Gamma1[2]",
                  identity(lambda: power(chi7(), 2), lambda: -2 ** 14 * chi10() * alpha())),
            Check("weight38_relation", "odd weights on Gamma0[2]",
                  identity(lambda: power(mul(chi7(), delta()), 2),
                           lambda: -2 ** 14 * power(delta(), 2) * chi10() * alpha())),
            Check("igusa_quartic_xi_model", "Igusa quartic in x1..x4, xi",
                  identity(lambda: power(power(s(1), 2) - 4 * s(2) - power(xi(), 2), 2), lambda: 64 * s(4))),
            Check("eta_theta_product", "eta definition",
                  identity(eta, lambda: -16 * squares(1, 2, 3, 4))),
            Check("eta_square", "Igusa quartic in x1..x4, xi",
                  identity(lambda: power(eta(), 2), lambda: 256 * s(4))),
            Check("X5_product", "X-forms", identity(lambda: big_x()[5], lambda: 4 * x(7) * x(8))),
            Check("X7_product", "X-forms", identity(lambda: big_x()[7], lambda: 4 * x(5) * x(6))),
            Check("X9_product", "X-forms", identity(lambda: big_x()[9], lambda: 4 * x(9) * x(10))),
            Check("X6_square", "X-forms",
                  identity(lambda: big_x()[6], lambda: 4 * power(squares(1, 2) + squares(3, 4), 2))),
            Check("X8_square", "X-forms",
                  identity(lambda: big_x()[8], lambda: 4 * power(squares(1, 3) + squares(2, 4), 2))),
            Check("X10_square", "X-forms",
                  identity(lambda: big_x()[10], lambda: 4 * power(squares(1, 4) + squares(2, 3), 2))),
            Check("igusa_quartic_X_model", "Igusa quartic, X-model", zero(self._x_model_quartic)),
            Check("X_quartic", "X-forms",
                  zero(lambda: power(_total([power(big_x()[i], 2) for i in range(1, 11)]), 2)
                       - 4 * _total([power(big_x()[i], 4) for i in range(1, 11)]))),
            Check("U_relation_78", "U_i products",
                  zero(lambda: self._u(1) * self._u(2) - self._u(3) * self._u(4) - self._u(7) * self._u(8))),
            Check("U_relation_56", "U_i products",
                  zero(lambda: self._u(1) * self._u(3) - self._u(2) * self._u(4) - self._u(5) * self._u(6))),
            Check("U_relation_910", "U_i products",
                  zero(lambda: self._u(1) * self._u(4) - self._u(2) * self._u(3) - self._u(9) * self._u(10))),
            Check("y_model_sigma1", "Igusa quartic, y-model", zero(lambda: _total(list(y_model().values())))),
            Check("y_model_quartic", "Igusa quartic, y-model",
                  zero(lambda: power(_sigma(list(y_model().values()), 2), 2)
                       - 4 * _sigma(list(y_model().values()), 4))),
        ]
        return out

    @staticmethod
    def _u(i):
        return u_forms()[i]

    @staticmethod
    def _d_quadratic():
        d1 = mul(x(1) - x(2), x(3) - x(4))
        d2 = mul(x(1) - x(3), x(2) - x(4))
        return power(d1, 2) - d1 * d2 + power(d2, 2)

    @staticmethod
    def _weight8_rhs():
        s1, s2, s3, a = s(1), s(2), s(3), alpha()
        return (3 * power(a, 2) - 6 * (power(s1, 2) - 4 * s2) * a + 3 * power(s1, 4)
                - 24 * power(s1, 2) * s2 - 48 * s1 * s3 + 64 * power(s2, 2))

    @staticmethod
    def _x_model_quartic():
        xx = big_x()
        g = {r: _sigma([xx[i] for i in range(1, 5)], r) for r in (1, 2, 4)}
        return power(power(g[1], 2) - 4 * g[2] - power(eta(), 2), 2) - 64 * g[4]


# ==========================================
# BRACKETS
# ==========================================

class BracketsSuite(VerificationSuite):
    name = "brackets"

    def checks(self):
        a, b, c = (lambda: squares(1, 3)), (lambda: squares(2, 4)), (lambda: squares(5, 6))
        return [
            Check("antisymmetry", "bracket properties",
                  identity(lambda: rankin_cohen(x(1), x(2)), lambda: -rankin_cohen(x(2), x(1)))),
            Check("self_bracket", "bracket properties", zero(lambda: rankin_cohen(chi5(), chi5()))),
            Check("jacobi_x123", "bracket properties",
                  zero(lambda: x(1) * x_bracket(2, 3) + x(2) * x_bracket(3, 1) + x(3) * x_bracket(1, 2))),
            Check("jacobi_mixed_weights", "bracket properties",
                  zero(lambda: 2 * x(1) * rankin_cohen(chi5(), s(2))
                       + 5 * chi5() * rankin_cohen(s(2), x(1))
                       + 4 * s(2) * rankin_cohen(x(1), chi5()))),
            Check("product_rule", "bracket properties",
                  identity(lambda: rankin_cohen(x(1) * x(2), x(2)), lambda: x(2) * rankin_cohen(x(1), x(2)))),
            Check("H12_first_pair", "H_ij",
                  identity(lambda: rankin_cohen(a(), b()), lambda: -rankin_cohen(a(), c()))),
            Check("H12_second_pair", "H_ij",
                  identity(lambda: rankin_cohen(a(), b()), lambda: -rankin_cohen(b(), c()))),
            Check("H12_expansion", "H_ij",
                  identity(lambda: rankin_cohen(a(), b()),
                           lambda: 8 * thetas(1, 1, 3, 2, 4, 4) * rankin_cohen(theta(3), theta(2))
                           + 8 * thetas(1, 3, 3, 2, 2, 4) * rankin_cohen(theta(1), theta(4)))),
            Check("Hp12_first_pair", "H'_ij",
                  identity(hp_12, lambda: -rankin_cohen(self._u(1, 2), self._u(7, 8)))),
            Check("Hp12_second_pair", "H'_ij",
                  identity(hp_12, lambda: -rankin_cohen(self._u(3, 4), self._u(7, 8)))),
            Check("phi_cocycle", "phi_ij",
                  zero(lambda: small_phi(1, 2) + small_phi(2, 3) + small_phi(3, 1))),
        ]

    @staticmethod
    def _u(i, j):
        u = u_forms()
        return u[i] * u[j]


# ==========================================
# GRADIENTS
# ==========================================

MALFORMED_MONOMIALS = [
    ([1], {}),
    ([1, 1], {}),
    ([1, 2], {1: 1}),
    ([1, 2], {1: 1, 2: 1, 3: 1, 4: 1, 5: 1}),
    ([1, 2, 3, 4], {}),
]


class GradientsSuite(VerificationSuite):
    name = "gradients"

    def cached_forms(self):
        return [f"G_{i}{j}" for i, j in PAIRS]

    def checks(self):
        out = []
        for i, j in PAIRS:
            out.append(Check(f"G{i}{j}_vs_H{i}{j}", "G_ij = -pi^2 H_ij",
                             identity(lambda i=i, j=j: g_form(i, j),
                                      lambda i=i, j=j: -pi_scale(h_form(i, j), 2))))
        out += [
            Check("G11_theta1_square", "Sym^2(G_1) theta_1^2",
                  identity(lambda: sym_product([1, 1], squares(1)),
                           lambda: 2 * pi_scale(rankin_cohen(squares(2), squares(5))
                                                + rankin_cohen(squares(4), squares(6))
                                                + rankin_cohen(squares(8), squares(9)), 2))),
            Check("three_term_gradient_relation", "Sym^2 relations among gradients",
                  zero(lambda: thetas(1, 7, 10) * sym_product([1, 2]) - thetas(4, 5, 9) * sym_product([1, 4])
                       + thetas(2, 6, 8) * sym_product([1, 6]))),
        ]
        for i in range(1, 7):
            others = [n for n in range(1, 7) if n != i]
            for a, b, c in combinations(others, 3):
                out.append(Check(f"wedge_vanishing_{i}_{a}{b}{c}", "Sym^2 relations among gradients",
                                 zero(lambda i=i, a=a, b=b, c=c: wedge(sym_product([i, a]), sym_product([i, b]),
                                                                      sym_product([i, c])))))
        out += [
            Check("f_relation", "f-forms",
                  zero(lambda: f_form(3, 2, 3, 8) - f_form(1, 3, 4, 5) + f_form(2, 3, 4, 6) - f_form(6, 3, 4, 10))),
            Check("f_125_as_G", "f-forms",
                  identity(lambda: f_form(1, 1, 2, 5), lambda: g_form(1, 2) + g_form(1, 5))),
            Check("f_triples_count", "f-forms", fact(lambda: (len(f_triples(1)) == 10, f_triples(1)))),
            Check("descent_registered_forms", "descent to Gamma[2]", fact(self._registered_descend)),
            Check("descent_rejects_malformed", "descent to Gamma[2]", fact(self._malformed_fail)),
            Check("anti_invariant_F_under_X", "anti-invariant Sym^6",
                  identity(lambda: s6_act(anti_invariant_f(), "X"), lambda: -anti_invariant_f())),
            Check("anti_invariant_F_under_Y", "anti-invariant Sym^6",
                  identity(lambda: s6_act(anti_invariant_f(), "Y"), lambda: -anti_invariant_f())),
            Check("jacobi_derivative_genus1", "theta11 gradient",
                  identity(lambda: genus1("11-gradient"),
                           lambda: const(I) * genus1("00") * genus1("01") * genus1("10"), stored_only=True)),
        ]
        return out

    @staticmethod
    def _registered_descend():
        # building raises ValueError for any monomial that does not descend
        built = [g_form(i, j) for i, j in PAIRS]
        built += [f_form(1, a, b, c) for a, b, c in f_triples(1)]
        built += [d_form(*q) for q in combinations(range(1, 7), 4)]
        built += [k_form(1, 2, 1, 3), k_form(1, 2, 2, 4), k_form(1, 2, 5, 6)]
        return True, {"forms": len(built)}

    @staticmethod
    def _malformed_fail():
        passing = [str(m) for m in MALFORMED_MONOMIALS
                   if not descent_violations(monomial_columns(m[0], m[1]))]
        return not passing, {"unexpectedly_descending": passing}


# ==========================================
# FRICKE
# ==========================================

X_FRICKE = [1, 5, 7, 9, 2, 8, 3, 6, 4, 10]
BIG_X_FRICKE = [1, 6, 8, 10, 7, 2, 5, 3, 9, 4]
Y_IMAGES = {
    "X'": [1, 2, 6, 4, 5, 3],
    "Y'": [1, 2, 6, 3, 5, 4],
    "W2": [5, 2, 3, 6, 1, 4],
}


def _inverse(perm):
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p - 1] = i + 1
    return tuple(out)


def _prime_words(matrix):
    from reptheory import element_words
    perm = s6_image(matrix)
    words = element_words()
    return [words[perm], words[_inverse(perm)]]


class FrickeSuite(VerificationSuite):
    name = "fricke"

    def checks(self):
        out = [
            Check("duplication_theta1", "duplication formulas",
                  identity(lambda: squares(1), lambda: double(squares(1) + squares(5) + squares(7) + squares(9)))),
            Check("duplication_theta2", "duplication formulas",
                  identity(lambda: squares(2), lambda: double(squares(1) - squares(5) + squares(7) - squares(9)))),
            Check("duplication_theta3", "duplication formulas",
                  identity(lambda: squares(3), lambda: double(squares(1) + squares(5) - squares(7) - squares(9)))),
            Check("duplication_theta4", "duplication formulas",
                  identity(lambda: squares(4), lambda: double(squares(1) - squares(5) - squares(7) + squares(9)))),
            Check("duplication_theta5", "duplication formulas",
                  identity(lambda: squares(5), lambda: 2 * double(thetas(1, 5) + thetas(7, 9)))),
            Check("duplication_theta6", "duplication formulas",
                  identity(lambda: squares(6), lambda: 2 * double(thetas(1, 5) - thetas(7, 9)))),
        ]
        for i in range(1, 11):
            out.append(Check(f"fricke_x{i}", "W2 on x_i",
                             identity(lambda i=i: fricke_substitute(x(i)),
                                      lambda i=i: 4 * double(x(X_FRICKE[i - 1])))))
        s1, s2, s3, a = (lambda: s(1)), (lambda: s(2)), (lambda: s(3)), alpha
        out += [
            Check("fricke_s1", "W2 on the Gamma0[2] ring", identity(lambda: fricke_substitute(s1()), s1)),
            Check("fricke_s2", "W2 on the Gamma0[2] ring",
                  identity(lambda: fricke_substitute(s2()),
                           lambda: Fraction(3, 4) * power(s1(), 2) - 2 * s2() - Fraction(3, 8) * a())),
            Check("fricke_alpha", "W2 on the Gamma0[2] ring",
                  identity(lambda: fricke_substitute(a()), lambda: -2 * power(s1(), 2) + 8 * s2() + 2 * a())),
            Check("fricke_s3", "W2 on the Gamma0[2] ring",
                  identity(lambda: fricke_substitute(s3()),
                           lambda: s3() + Fraction(1, 8) * power(s1(), 3) - Fraction(1, 2) * s1() * s2()
                           - Fraction(1, 16) * s1() * a())),
            Check("fricke_D1", "W2 on the Gamma0[2] ring",
                  identity(lambda: fricke_substitute(get_form("D1")), lambda: get_form("D2"))),
            Check("fricke_xi", "W2 on xi", identity(lambda: fricke_substitute(xi()), lambda: 4 * thetas(1, 2, 3, 4))),
            Check("fricke_involution", "W2 on the Gamma0[2] ring", fact(self._involution)),
        ]
        for i in range(1, 11):
            out.append(Check(f"fricke_X{i}", "W2 on X_i",
                             identity(lambda i=i: fricke_substitute(big_x()[i]),
                                      lambda i=i: big_x()[BIG_X_FRICKE[i - 1]])))
        out += [
            Check("fricke_eta", "W2 on eta",
                  identity(lambda: fricke_substitute(eta()),
                           lambda: Fraction(1, 2) * (big_x()[1] - big_x()[2] - big_x()[3] - big_x()[4] + eta()))),
            Check("fricke_trace_weight4", "W2 on M_{0,4}(Gamma1[2])", self._trace_check),
            Check("Y_action_W2", "Y_i actions", self._y_fricke),
            Check("Y_action_X_prime", "Y_i actions", self._y_word("X'", X_PRIME)),
            Check("Y_action_Y_prime", "Y_i actions", self._y_word("Y'", Y_PRIME)),
            Check("fricke_chi7", "W2 on chi7", lambda order: ("unverified", "Fricke image unknown"), conditional=True),
            Check("fricke_chi19", "W2 on chi19", lambda order: ("unverified", "Fricke image unknown"),
                  conditional=True),
        ]
        return out

    @staticmethod
    def _involution():
        bad = []
        for name in ("s1", "s2", "alpha", "s3", "D1", "D2"):
            calc = to_calculus(get_form(name))
            if sympy.expand(w2_substitution(w2_substitution(calc)) - calc) != 0:
                bad.append(name)
        return not bad, {"not_involutive": bad}

    @staticmethod
    def _trace_check(order):
        basis = [big_x()[i] for i in range(1, 5)] + [eta()]
        expansions = [evaluate(b, order=order) for b in basis]
        trace = 0
        for i, b in enumerate(basis):
            coords = express_in_basis(expansions, evaluate(fricke_substitute(b), order=order))
            trace = trace + coords[i]
        return trace == 1, {"trace": trace.to_strings()}

    @staticmethod
    def _y_fricke(order):
        ys = big_y()
        target = Y_IMAGES["W2"]
        for i in range(1, 7):
            result = verify_identity(fricke_substitute(ys[i]), ys[target[i - 1]], order=order)
            if not result["equal"]:
                return False, {"Y": i, **(result["discrepancy"] or {})}
        return True

    @staticmethod
    def _y_word(label, matrix):
        def run(order):
            ys = big_y()
            target = Y_IMAGES[label]
            for word in _prime_words(matrix):
                if all(verify_identity(s6_act(ys[i], word), ys[target[i - 1]], order=order)["equal"]
                       for i in range(1, 7)):
                    return True, {"word": "".join(word)}
            return False, {"words": ["".join(w) for w in _prime_words(matrix)]}
        return run


# ==========================================
# WEDGES
# ==========================================

def _genus1_product(axis, which=("00", "01", "10")):
    return mul(*[power(genus1(w, axis), 4) for w in which])


class WedgesSuite(VerificationSuite):
    name = "wedges"

    def cached_forms(self):
        return [f"Phi{i}" for i in range(1, 11)] + ["G_12", "G_13"]

    def checks(self):
        out = [
            Check("G12_G34_G56", "wedge of G_ij",
                  identity(lambda: wedge(g_form(1, 2), g_form(3, 4), g_form(5, 6)),
                           lambda: pi_scale(chi5() * x(1) * x(2) * x(3) * x(4) * (x(5) - x(6)), 6))),
            Check("G12_G34_G56_chi7", "wedge of G_ij",
                  identity(lambda: wedge(g_form(1, 2), g_form(3, 4), g_form(5, 6)),
                           lambda: -pi_scale(chi7() * x(1) * x(2) * x(3) * x(4), 6))),
            Check("G12_G13_G45", "wedge of G_ij",
                  identity(lambda: squares(2, 7, 9) * wedge(g_form(1, 2), g_form(1, 3), g_form(4, 5)),
                           lambda: pi_scale(power(chi5(), 3) * squares(1, 4, 6), 6))),
            Check("G12_G13_G14", "wedge of G_ij",
                  zero(lambda: wedge(g_form(1, 2), g_form(1, 3), g_form(1, 4)))),
            Check("wedge_phi_123", "wedges of Phi_i",
                  identity(lambda: wedge(big_phi(1), big_phi(2), big_phi(3)),
                           lambda: self._phi_prefactor() * (3 * squares(5, 6, 7, 8, 9, 10)
                                                            + squares(1, 2, 3) * (squares(6, 8, 9)
                                                                                  - squares(5, 7, 10))))),
            Check("wedge_phi_124", "wedges of Phi_i",
                  identity(lambda: wedge(big_phi(1), big_phi(2), big_phi(4)),
                           lambda: self._phi_prefactor() * self._g_combo((1, 1, -2, 0, -3)))),
            Check("wedge_phi_134", "wedges of Phi_i",
                  identity(lambda: wedge(big_phi(1), big_phi(3), big_phi(4)),
                           lambda: self._phi_prefactor() * self._g_combo((1, 1, 0, -2, 3)))),
            Check("wedge_phi_234", "wedges of Phi_i",
                  identity(lambda: wedge(big_phi(2), big_phi(3), big_phi(4)),
                           lambda: self._phi_prefactor() * self._g_combo((-1, 1, 2, -2, -1)))),
            Check("wedge_E", "wedge of E_i",
                  identity(lambda: wedge(*[e_form(i) for i in range(1, 6)]), lambda: -96 * power(chi5(), 4),
                           stored_only=True)),
            Check("wedge_D", "wedge of D_abcd",
                  identity(lambda: wedge(d_form(1, 2, 5, 6), d_form(1, 3, 4, 5), d_form(1, 3, 4, 6),
                                         d_form(1, 3, 5, 6), d_form(3, 4, 5, 6)),
                           lambda: -pi_scale(power(chi5(), 6), 20))),
        ]
        for i in range(1, 11):
            c = Fraction(9, 4) if i == 10 else Fraction(-1, 4)
            out.append(Check(f"Phi{i}_diagonal", "restriction of Phi_i", self._phi_restriction(i, c)))
        out.append(Check("G12_diagonal", "restriction of G_12", self._g12_restriction))
        return out

    @staticmethod
    def _phi_prefactor():
        return Fraction(25, 8) * power(chi5(), 2) * (x(6) - x(5))

    @staticmethod
    def _g_combo(coeffs):
        return _lin(coeffs, [g_basis(n) for n in range(1, 6)])

    @staticmethod
    def _phi_restriction(i, c):
        def run(order):
            restricted = specialize(big_phi(i), "r_to_one")
            product = mul(_genus1_product("11"), _genus1_product("22"))
            middle = verify_identity(component(restricted, 1), 2 * c * product, order=order)
            if not middle["equal"]:
                return False, middle["discrepancy"]
            for index in (0, 2):
                if not is_zero_at(component(restricted, index), order=order):
                    return False, {"component": index}
            return True
        return run

    @staticmethod
    def _g12_restriction(order):
        restricted = specialize(g_form(1, 2), "r_to_one")
        rhs = -mul(_genus1_product("11", ("00", "01")), _genus1_product("22"))
        last = verify_identity(component(restricted, 2), rhs, order=order, stored_only=True)
        if not last["equal"]:
            return False, last["discrepancy"]
        for index in (0, 1):
            if not is_zero_at(component(restricted, index), order=order):
                return False, {"component": index}
        return True


# ==========================================
# SIGMA2
# ==========================================

SIGMA2_PRESENTATION = {"generators": {5: 9}, "relations": {7: 5, 9: 5}, "syzygies": {11: 1}}


class Sigma2Suite(VerificationSuite):
    name = "sigma2"

    def cached_forms(self):
        return [f"Phi{i}" for i in range(1, 11)] + ["D_1234"]

    def checks(self):
        out = [
            Check("Phi1_fourier_table", "Fourier coefficients of Phi_1", self._table("Phi1")),
            Check("D1234_fourier_table", "Fourier coefficients of D_1234", self._table("D_1234")),
            Check("Phi1_table_retrograde", "retrograde symmetry",
                  fact(lambda: (not retrograde_violations(PHI1_TABLE), None))),
            Check("Phi1_series_retrograde", "retrograde symmetry",
                  lambda order: not series_retrograde_violations(evaluate(big_phi(1), order=order))),
            Check("Phi_sum", "sum of Phi_i", zero(lambda: _total([big_phi(i) for i in range(1, 11)]))),
            Check("phi_cocycle_123", "phi_ij", zero(lambda: small_phi(1, 2) + small_phi(2, 3) + small_phi(3, 1))),
            Check("phi_cocycle_5_7_10", "phi_ij",
                  zero(lambda: small_phi(5, 7) + small_phi(7, 10) + small_phi(10, 5))),
        ]
        for i in (1, 5, 10):
            out.append(Check(f"Phi{i}_as_phi_sum", "phi_ij",
                             identity(lambda i=i: big_phi(i),
                                      lambda i=i: 4 * _total([small_phi(i, j) for j in range(1, 11) if j != i]))))
        for i in (2, 6, 10):
            out.append(Check(f"phi_1_{i}_difference", "phi_ij",
                             identity(lambda i=i: small_phi(1, i),
                                      lambda i=i: Fraction(1, 40) * (big_phi(1) - big_phi(i)))))
        for i in (1, 4, 7):
            out.append(Check(f"x{i}_Phi{i}_bracket", "Phi_i",
                             identity(lambda i=i: x(i) * big_phi(i), lambda i=i: rankin_cohen(x(i), chi5()))))
        out.append(Check("x_Phi_relation", "Sigma2 relations",
                         zero(lambda: x(1) * big_phi(1) - x(4) * big_phi(4) - x(6) * big_phi(6)
                              - x(7) * big_phi(7))))
        for n, coeffs in LINEAR_RELATIONS.items():
            out.append(Check(f"x{n}_Phi{n}_linear", "Sigma2 relations",
                             zero(lambda n=n, c=coeffs: x(n) * big_phi(n)
                                  - _total([v * x(i) * big_phi(i) for i, v in c.items()]))))
        out.append(Check("Sigma2_hilbert", "Sigma2 generating function",
                         fact(lambda: hilbert_check(SIGMA2_PRESENTATION, GENFUNS["Sigma2"], 30))))
        return out

    @staticmethod
    def _table(name):
        def run(order):
            if name == "Phi1":
                result = compare_fourier_table(evaluate(big_phi(1), order=order), PHI1_TABLE)
            else:
                if Fraction(order) < 2:
                    return True, {"rows": 0}
                expansion = evaluate(get_form("D_1234"), order=order)
                result = compare_fourier_table(expansion, D1234_TABLE, normalize=True)
                result["pi_power"] = expansion.p
            return not result["mismatches"], result
        return run


# ==========================================
# M2
# ==========================================

_XS = sympy.symbols("x1:6")


def _formal_f(i, j):
    if i == j:
        return 0
    if i > j:
        return -_formal_f(j, i)
    return sympy.Symbol(f"F{i}{j}")


def _formal_r(i, j, k):
    xs = _XS
    return xs[i - 1] * _formal_f(j, k) - xs[j - 1] * _formal_f(i, k) + xs[k - 1] * _formal_f(i, j)


def _formal_r4(i, j, k, l):
    xs = _XS
    return (xs[i - 1] * _formal_r(j, k, l) - xs[j - 1] * _formal_r(i, k, l)
            + xs[k - 1] * _formal_r(i, j, l) - xs[l - 1] * _formal_r(i, j, k))


def formal_syzygies():
    """The second and third syzygies vanish identically in the free module on the F_ij."""
    second = sympy.expand(_formal_r4(1, 2, 3, 4))
    xs = _XS
    third = sympy.expand(xs[0] * _formal_r4(2, 3, 4, 5) - xs[1] * _formal_r4(1, 3, 4, 5)
                         + xs[2] * _formal_r4(1, 2, 4, 5) - xs[3] * _formal_r4(1, 2, 3, 5)
                         + xs[4] * _formal_r4(1, 2, 3, 4))
    return second == 0 and third == 0


def _g(i, j):
    return g_form(i, j)


M2_PRESENTATION = {"generators": {4: 15}, "relations": {6: 19, 10: 1}, "syzygies": {8: 5}}


class M2Suite(VerificationSuite):
    name = "m2"

    def cached_forms(self):
        return [f"G_{i}{j}" for i, j in PAIRS]

    def checks(self):
        out = []
        for i, j, k in [(1, 2, 3), (1, 2, 5), (2, 4, 5), (3, 4, 5)]:
            out.append(Check(f"jacobi_x{i}{j}{k}", "Jacobi relations among F_ij",
                             zero(lambda i=i, j=j, k=k: x(i) * x_bracket(j, k) - x(j) * x_bracket(i, k)
                                  + x(k) * x_bracket(i, j))))
        out += [
            Check("s42_relation", "s[4,2] relation", zero(self._s42)),
            Check("F12_in_G", "F_ij",
                  identity(lambda: pi_scale(x_bracket(1, 2), 2),
                           lambda: -_g(1, 2) + _g(5, 6) - _g(1, 5) - _g(2, 6))),
            Check("formal_syzygies", "syzygies of the Jacobi relations", fact(formal_syzygies)),
            Check("M2_hilbert", "M2 generating function",
                  fact(lambda: hilbert_check(M2_PRESENTATION, GENFUNS["M2"], 30))),
            Check("M2_hilbert_vs_formula", "M2 generating function",
                  fact(lambda: all(GENFUNS["M2"].coeffs(24)[k] == dim_formula(2, k) for k in range(4, 25, 2)))),
        ]
        return out

    @staticmethod
    def _s42():
        return (x(1) * (2 * _g(2, 3) - _g(2, 5) + _g(3, 5) + _g(5, 6)) - x(2) * (_g(2, 4) + _g(4, 5))
                - x(3) * (_g(1, 3) - _g(1, 5)) - x(5) * _g(2, 6) + x(8) * (_g(3, 6) + _g(5, 6))
                - x(9) * (_g(3, 4) - _g(4, 5)) + x(10) * (_g(1, 2) - _g(1, 5)))


# ==========================================
# M4
# ==========================================

class M4Suite(VerificationSuite):
    name = "m4"

    def cached_forms(self):
        return [f"E{i}" for i in range(1, 7)] + ["D_" + "".join(map(str, q)) for q in combinations(range(1, 7), 4)]

    def checks(self):
        d = d_form
        return [
            Check("E_relation", "E_i", zero(lambda: _lin((1, -1, -1, 1, -1, 1), [e_form(i) for i in range(1, 7)]))),
            Check("D_relation", "D_abcd",
                  zero(lambda: 4 * d(1, 2, 3, 4) - d(1, 2, 3, 5) - d(1, 2, 3, 6) - d(1, 2, 4, 5) - d(1, 2, 4, 6)
                       - d(1, 3, 4, 5) - d(1, 3, 4, 6) - d(2, 3, 4, 5) - d(2, 3, 4, 6))),
            Check("D_three_term", "D_abcd",
                  identity(lambda: sym_product([1, 2, 3, 4], thetas(6, 7, 8)),
                           lambda: sym_product([1, 3, 4, 5], thetas(3, 4, 9))
                           + sym_product([1, 3, 4, 6], thetas(1, 2, 10)))),
            Check("K_relation", "K_ijkl",
                  zero(lambda: k_form(1, 2, 1, 3) - k_form(1, 2, 2, 4) - k_form(1, 2, 5, 6))),
            Check("R_relation", "R_i",
                  zero(lambda: x(2) * r_form(1) - (x(2) + x(5)) * r_form(2) - (x(2) - x(4)) * r_form(3)
                       - (x(1) - x(2) - x(5)) * r_form(4) + (x(2) - x(3) + x(5)) * r_form(5))),
            Check("M4_hilbert_vs_formula", "M4 generating function",
                  fact(lambda: all(GENFUNS["M4"].coeffs(24)[k] == dim_formula(4, k) for k in range(4, 25, 2)))),
        ]


# ==========================================
# GAMMA1[2]
# ==========================================

class Gamma1Suite(VerificationSuite):
    name = "gamma1"

    def checks(self):
        forms = sigma2_gamma1()
        return [
            Check("X_span_dimension", "M_{0,4}(Gamma1[2])", self._x_span),
            Check("Hp12_relation", "H'_ij",
                  identity(hp_12, lambda: -rankin_cohen(self._uu(1, 2), self._uu(7, 8)))),
            Check("Hp12_printed_relation", "H'_ij",
                  identity(hp_12, lambda: -rankin_cohen(self._uu(3, 4), self._uu(7, 8)))),
            Check("F_forms_independent", "Sigma2(Gamma1[2]) generators",
                  lambda order: self._rank([forms[f"F{i}"] for i in range(1, 5)], 4, order)),
            Check("A_forms_independent", "Sigma2(Gamma1[2]) generators",
                  lambda order: self._rank([forms[f"A{i}"] for i in range(1, 10)], 9, order)),
            Check("Sigma1_hilbert", "Gamma1 module generating functions",
                  fact(lambda: hilbert_check({"generators": {9: 9}, "relations": {13: 5, 17: 5},
                                              "syzygies": {21: 1}}, GENFUNS["Sigma2_gamma1_triv"], 40,
                                             one_minus(4, 5)))),
            Check("Sigma3_hilbert", "Gamma1 module generating functions",
                  fact(lambda: hilbert_check({"generators": {7: 4, 11: 4}, "relations": {15: 8}},
                                             GENFUNS["Sigma2_gamma1_s21"], 40, one_minus(4, 5)))),
        ]

    @staticmethod
    def _uu(i, j):
        u = u_forms()
        return u[i] * u[j]

    @staticmethod
    def _x_span(order):
        xx = big_x()
        basis = [evaluate(xx[i], order=order) for i in range(1, 5)] + [evaluate(eta(), order=order)]
        coords = {i: express_in_basis(basis, evaluate(xx[i], order=order)) for i in range(5, 11)}
        return True, {f"X{i}": [c.to_strings() for c in v] for i, v in coords.items()}

    @staticmethod
    def _rank(exprs, expected, order):
        from certifier import coefficient_matrix, modular_rank
        rank = modular_rank(coefficient_matrix([evaluate(e, order=order) for e in exprs]))
        if rank == expected:
            return True
        return "inconclusive" if rank < expected else False, {"rank": rank}


# ==========================================
# LEVEL ONE
# ==========================================

LEVEL_ONE_FORMS = {
    "S_2_14": (2, 14, level1_s2_14),
    "S_4_10": (4, 10, level1_s4_10),
    "S_6_8": (6, 8, level1_s6_8),
    "S_12_6": (12, 6, level1_s12_6),
}


class Level1Suite(VerificationSuite):
    name = "level1"

    def checks(self):
        out = []
        for label, (j, k, build) in LEVEL_ONE_FORMS.items():
            out += [
                Check(f"{label}_nonzero", "level one generators",
                      lambda order, build=build: first_nonzero(build(), order=order) is not None),
                Check(f"{label}_invariant_X", "level one generators",
                      identity(lambda build=build: s6_act(build(), "X"), build)),
                Check(f"{label}_invariant_Y", "level one generators",
                      identity(lambda build=build: s6_act(build(), "Y"), build)),
                Check(f"{label}_cusp", "level one generators",
                      zero(lambda build=build: specialize(build(), "siegel_q2_slice"))),
                Check(f"{label}_dimension_one", "dim S_{j,k}(Gamma) = 1",
                      fact(lambda j=j, k=k: _dimension_one(j, k)), conditional=j > 0),
            ]
        out += [
            Check("scalar_dimension_one_list", "dim S_{j,k}(Gamma) = 1", fact(lambda: _dimension_one_list(0))),
            Check("S2_table_dimension_one_list", "dim S_{j,k}(Gamma) = 1",
                  fact(lambda: _dimension_one_list(2)), conditional=True),
            Check("S4_table_dimension_one_list", "dim S_{j,k}(Gamma) = 1",
                  fact(lambda: _dimension_one_list(4)), conditional=True),
        ]
        return out


def _dimension_one(j, k):
    listed = k in LEVEL_ONE_DIM1.get(j, [])
    try:
        derived = level_one_cusp_dim(j, k)
    except ValueError as e:
        return "unverified", {"listed": listed, "reason": str(e)}
    return derived == 1 and listed, {"derived": derived, "listed": listed}


def _dimension_one_list(j):
    """Weights k >= 4 with dim S_{j,k}(Gamma) = 1 against the printed list."""
    if j == 0:
        weights = range(4, 61)
    else:
        weights = [k for k in MULTIPLICITY_TABLES[f"S{j}"] if k >= 4]
    derived = [k for k in weights if level_one_cusp_dim(j, k) == 1]
    listed = [k for k in LEVEL_ONE_DIM1.get(j, []) if k in weights]
    return derived == listed, {"derived": derived, "listed": listed}


# ==========================================
# DIMENSIONS
# ==========================================

def _m0_from_multiplicities(k):
    table = character_table("S6")
    total = 0
    for name in table.chars:
        key = f"mult_{name}"
        if key in GENFUNS:
            total += GENFUNS[key].coeffs(k)[k] * table.dim(name)
    return total


def _table_matches_genfun(k):
    row = MULTIPLICITY_TABLES["M0"][k]
    from reptheory import S6_LABELS
    computed = [GENFUNS[f"mult_{name}"].coeffs(k)[k] if f"mult_{name}" in GENFUNS else 0 for name in S6_LABELS]
    return computed == row, {"computed": [str(c) for c in computed]}


def _table_dimensions(table, kind, j):
    bad = {}
    for k, row in MULTIPLICITY_TABLES[table].items():
        try:
            expected = dim_formula(j, k, kind)
        except ValueError:
            continue
        got = from_row(row).dimension()
        if got != expected:
            bad[k] = [got, expected]
    return not bad, {"mismatches": bad}


def _genfun_vs_formula(j):
    bad = {}
    coeffs = gamma2_genfun(j).coeffs(24)
    for k in range(3, 25):
        try:
            expected = dim_formula(j, k)
        except ValueError:
            continue
        if coeffs[k] != expected:
            bad[k] = [str(coeffs[k]), expected]
    return not bad, {"mismatches": bad}


def _scalar_genfun_vs_formula():
    bad = {}
    ring = GENFUNS["ring_gamma2"].coeffs(24)
    for k in range(0, 25):
        if k % 2 and k < 5:
            continue
        expected = dim_formula(0, k)
        if ring[k] != expected or (k % 2 == 0 and _m0_from_multiplicities(k) != expected):
            bad[k] = expected
    return not bad, {"mismatches": bad}


def _coincidences():
    bad = []
    for k in range(2, 21, 2):
        if dim_formula(0, k) != gamma1_dim(0, 2 * k):
            bad.append(("M0", k))
        if k >= 4:
            if dim_formula(2, k) != gamma1_dim(2, 2 * k):
                bad.append(("M2", k))
            if dim_formula(2, k + 1, "S") != gamma1_dim(2, 2 * k + 1):
                bad.append(("S2", k))
    return not bad, {"mismatches": bad}


def _eisenstein_checks():
    bad = []
    for k in range(4, 25, 2):
        if eisenstein_rep(0, k).dimension() != eisenstein_dim(0, k):
            bad.append(("rep", 0, k))
        if dim_formula(0, k) - dim_formula(0, k, "S") != eisenstein_dim(0, k):
            bad.append(("M-S", 0, k))
        for j in (2, 4, 6):
            if eisenstein_rep(j, k).dimension() != eisenstein_dim(j, k):
                bad.append(("rep", j, k))
            if dim_formula(j, k) - dim_formula(j, k, "S") != eisenstein_dim(j, k):
                bad.append(("M-S", j, k))
        for j in (0, 2, 4):
            if eisenstein_s3_rep(j, k).dimension("S3") != eisenstein_dim(j, k, "Gamma1[2]"):
                bad.append(("S3", j, k))
    return not bad, {"mismatches": bad}


class DimsSuite(VerificationSuite):
    name = "dims"

    def checks(self):
        out = [Check("scalar_genfun_vs_formula", "ring of Gamma[2]", fact(_scalar_genfun_vs_formula))]
        for j in (2, 4, 6):
            out.append(Check(f"genfun_vs_formula_j{j}", "dimension formulas", fact(lambda j=j: _genfun_vs_formula(j))))
        for j in (2, 4, 6, 8):
            out.append(Check(f"euler_sums_j{j}", "vanishing alternating sums", fact(lambda j=j: euler_sums(j) == (0, 0))))
        for k in sorted(MULTIPLICITY_TABLES["M0"]):
            out.append(Check(f"M0_table_k{k}", "S6 table M_{0,k}", fact(lambda k=k: _table_matches_genfun(k))))
        for table, j, kind in (("M2", 2, "M"), ("M4", 4, "M"), ("S2", 2, "S"), ("S4", 4, "S")):
            out.append(Check(f"{table}_table_dimensions", f"S6 table {table}",
                             fact(lambda table=table, j=j, kind=kind: _table_dimensions(table, kind, j)),
                             conditional=table in CONDITIONAL_TABLES))
        for k in sorted(GAMMA1_S3_TABLE):
            out.append(Check(f"S3_branching_k{k}", "S3 multiplicities on Gamma1[2]",
                             fact(lambda k=k: (branch_s6_to_s3(table_row("M0", k)).nonzero()
                                               == from_row(GAMMA1_S3_TABLE[k], "S3").nonzero(), None))))
        for k in sorted(GAMMA1_S3_TABLE):
            out.append(Check(f"S3_genfun_k{k}", "S3 multiplicities on Gamma1[2]",
                             fact(lambda k=k: [GENFUNS[f"gamma1_mult_{n}"].coeffs(k)[k]
                                               for n in ("s[3]", "s[2,1]", "s[1^3]")] == GAMMA1_S3_TABLE[k])))
        out += [
            Check("eisenstein_dimensions", "Eisenstein dimensions", fact(_eisenstein_checks)),
            Check("eisenstein_printed_value", "Eisenstein dimensions",
                  fact(lambda: (eisenstein_dim(2, 4, printed=True) == 45, None))),
            Check("coincidences", "Gamma[2] and Gamma1[2] dimension coincidences", fact(_coincidences)),
            Check("Sigma2_first_coefficients", "Sigma2 generating function",
                  fact(lambda: [GENFUNS["Sigma2"].coeffs(9)[k] for k in (5, 7, 9)] == [9, 40, 105])),
        ]
        return out


# ==========================================
# REPRESENTATIONS
# ==========================================

SPACES = {
    "M02": ("span of x1..x5", lambda: [x(i) for i in range(1, 6)], {"s[2^3]": 1}),
    "S25": ("span of Phi1..Phi9", lambda: [big_phi(i) for i in range(1, 10)], {"s[2^2,1^2]": 1}),
    "M24": ("span of the G_ij", lambda: [g_form(i, j) for i, j in PAIRS], {"s[3,1^3]": 1, "s[2,1^4]": 1}),
    "M42": ("span of E1..E5", lambda: [e_form(i) for i in range(1, 6)], {"s[2,1^4]": 1}),
    "S05": ("span of chi5", lambda: [chi5()], {"s[1^6]": 1}),
    "S26": ("span of Sym^6(G_1..G_6)", lambda: [anti_invariant_f()], {"s[1^6]": 1}),
    "S030": ("span of chi30", lambda: [chi30()], {"s[1^6]": 1}),
}


def space_representation(space_id, order):
    try:
        _, build, _ = SPACES[space_id]
    except KeyError:
        raise ValueError(f"unknown space: {space_id} (known: {', '.join(SPACES)})") from None
    return rep_multiplicities(build(), order)


class RepsSuite(VerificationSuite):
    name = "reps"

    def checks(self):
        out = []
        for space_id, (note, build, expected) in SPACES.items():
            out.append(Check(f"rep_{space_id}", note,
                             lambda order, build=build, expected=expected:
                             _matches(rep_multiplicities(build(), order), expected)))
        out += [
            Check("project_chi5", "isotypic projection",
                  identity(lambda: isotypic_project(chi5(), "s[1^6]"), chi5)),
            Check("project_x1_sign", "isotypic projection",
                  zero(lambda: isotypic_project(x(1), "s[1^6]"))),
        ]
        return out


# ==========================================
# CERTIFICATES
# ==========================================

def _certificate(target_weight, products, claimed, threads, expected_kernel=None):
    def run(order):
        products_ = products()
        cert = certify_span(target_weight, products_, order, claimed(), threads)
        detail = cert.to_dict()
        detail["kernel"] = len(products_) - cert.rank
        if cert.status != "certified":
            return "inconclusive", detail
        if expected_kernel is not None:
            detail["expected_kernel"] = expected_kernel
            if detail["kernel"] != expected_kernel:
                return False, detail
        return True, detail
    return run


def _single_relation(forms, expected):
    """The forms satisfy exactly one linear relation, proportional to `expected`."""
    def run(order):
        m = coefficient_matrix([evaluate(f, order=order) for f in forms()])
        rank, kernel = rank_kernel(m)
        detail = {"rank": rank, "kernel": len(kernel)}
        if len(kernel) > 1:
            return "inconclusive", detail
        if not kernel:
            return False, detail
        v = kernel[0]
        detail["relation"] = [c.to_strings() for c in v]
        pivot = next(i for i, c in enumerate(expected) if c)
        scale = v[pivot] / Cyc8(expected[pivot])
        proportional = all(c == scale * Cyc8(e) for c, e in zip(v, expected))
        return proportional and not contract(m, v), detail
    return run


def _relation_type(target_weight, scalars, generators, claimed, expected, threads, exact=True):
    """S6 type of the relations among scalar * generator products, once the products span."""
    def run(order):
        products = module_products(generators(), scalars())
        cert = certify_span(target_weight, products, order, claimed(), threads)
        if cert.status != "certified":
            return "inconclusive", cert.to_dict()
        computed = relation_representation(scalars(), generators(), order)
        detail = {"computed": str(computed), "dimension": computed.dimension(),
                  "kernel": len(products) - cert.rank}
        if computed.dimension() != detail["kernel"]:
            return False, detail
        if exact:
            return computed.nonzero() == expected, detail
        return all(computed.counts.get(name, 0) >= n for name, n in expected.items()), detail
    return run


class Sigma2Certificates(VerificationSuite):
    name = "certify_sigma2"

    def checks(self):
        phis = lambda n: [big_phi(i) for i in range(1, n + 1)]
        out = [
            Check("sigma2_k5", "Sigma2 generators",
                  _certificate((2, 5), lambda: phis(10), lambda: dim_formula(2, 5, "S"), self.threads, 1)),
            Check("sigma2_k5_relation", "sum of Phi_i", _single_relation(lambda: phis(10), [1] * 10)),
        ]
        for k in (7, 9, 11, 13):
            out.append(Check(f"sigma2_k{k}", "Sigma2 generators",
                             _certificate((2, k), lambda k=k: module_products(phis(9), x_monomials((k - 5) // 2)),
                                          lambda k=k: dim_formula(2, k, "S"), self.threads,
                                          presentation_kernel(SIGMA2_PRESENTATION, k))))
        out += [
            Check("sigma2_hilbert", "Sigma2 generating function",
                  fact(lambda: hilbert_check(SIGMA2_PRESENTATION, GENFUNS["Sigma2"], 30))),
            Check("sigma2_k7_relation_type", "Sigma2 relations",
                  _relation_type((2, 7), lambda: x_monomials(1), lambda: phis(9),
                                 lambda: dim_formula(2, 7, "S"), {"s[5,1]": 1}, self.threads)),
        ]
        return out


class M2Certificates(VerificationSuite):
    name = "certify_m2"

    def checks(self):
        gens = lambda: [g_form(i, j) for i, j in PAIRS]
        out = []
        for k in (4, 6, 8, 10):
            out.append(Check(f"m2_k{k}", "M2 generators",
                             _certificate((2, k), lambda k=k: module_products(gens(), x_monomials((k - 4) // 2)),
                                          lambda k=k: dim_formula(2, k), self.threads,
                                          presentation_kernel(M2_PRESENTATION, k))))
        out += [
            Check("m2_k6_relation_type", "s[4,2] relation",
                  _relation_type((2, 6), lambda: x_monomials(1), gens, lambda: dim_formula(2, 6),
                                 {"s[4,2]": 1}, self.threads, exact=False)),
            Check("m2_formal_syzygies", "syzygies of the Jacobi relations", fact(formal_syzygies)),
        ]
        return out


def _m4_products(k):
    es = [e_form(i) for i in range(1, 7)]
    rest = [d_form(*q) for q in combinations(range(1, 7), 4)] + [r_form(n) for n in range(1, 6)]
    products = module_products(es, x_monomials((k - 2) // 2))
    if k >= 4:
        products += module_products(rest, x_monomials((k - 4) // 2))
    return products


class M4Certificates(VerificationSuite):
    name = "certify_m4"

    def checks(self):
        out = []
        for k in (2, 4, 6, 8):
            out.append(Check(f"m4_k{k}", "M4 generators",
                             _certificate((4, k), lambda k=k: _m4_products(k),
                                          lambda k=k: GENFUNS["M4"].coeffs(k)[k], self.threads)))
        return out


def _gamma1_products(k):
    forms = sigma2_gamma1()
    ring = [big_x()[i] for i in range(1, 5)] + [eta()]
    if k % 4 == 3:
        base = [forms[f"F{i}"] for i in range(1, 5)]
        extra = [forms["L3"] - forms["L1"], forms["L3"] - forms["L2"],
                 forms["M1"] - forms["M2"], forms["M1"] - forms["M3"]]
        products = module_products(base, monomials(ring, (k - 7) // 4))
        if k >= 11:
            products += module_products(extra, monomials(ring, (k - 11) // 4))
        return products
    base = [forms[f"A{i}"] for i in range(1, 10)]
    return module_products(base, monomials(ring, (k - 9) // 4))


class Gamma1Certificates(VerificationSuite):
    name = "certify_gamma1"

    def checks(self):
        out = []
        for k, genfun in ((7, "Sigma2_gamma1_s21"), (11, "Sigma2_gamma1_s21"), (15, "Sigma2_gamma1_s21"),
                          (9, "Sigma2_gamma1_triv"), (13, "Sigma2_gamma1_triv"), (17, "Sigma2_gamma1_triv")):
            out.append(Check(f"gamma1_k{k}", "Sigma2(Gamma1[2]) generators",
                             _certificate((2, k), lambda k=k: _gamma1_products(k),
                                          lambda k=k, g=genfun: int(GENFUNS[g].coeffs(k)[k]), self.threads)))
        out.append(Check("hp_generate_m2_gamma1", "H'_ij generate",
                         _certificate((2, 8), lambda: [get_form(f"Hp_{i}{j}") for i, j in PAIRS],
                                      lambda: gamma1_dim(2, 8), self.threads)))
        return out


# ==========================================
# PROPERTIES
# ==========================================

CUSP_SAMPLES = ["chi5", "chi10", "Phi1", "Phi5", "phi_1_2", "D_1234"]
SUPPORT_SAMPLES = ["x1", "x5", "G_12", "E1", "Phi1"]


def random_series(rng, cutoff, size=12):
    """Series with `size` draws of a random coefficient at a random admissible triple."""
    terms = {}
    for _ in range(size):
        a = int(rng.integers(0, cutoff + 1))
        c = int(rng.integers(0, cutoff - a + 1))
        bound = isqrt(a * c)
        b = int(rng.integers(-bound, bound + 1))
        terms[(a, b, c)] = Cyc8(*(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for _ in range(4)))
    return QSeries.from_coefficients(terms, cutoff)


def _ring_axioms(seed, trials=10):
    rng = np.random.default_rng(seed)
    bad = []
    for trial in range(trials):
        a, b, c = (random_series(rng, 8) for _ in range(3))
        if (a * b) * c != a * (b * c):
            bad.append((trial, "associativity"))
        if a * (b + c) != a * b + a * c:
            bad.append((trial, "distributivity"))
        if a * b != b * a:
            bad.append((trial, "commutativity"))
    return not bad, {"trials": trials, "violations": bad}


def _support(names, cusp, order):
    bad = {}
    for name in names:
        expansion = evaluate(get_form(name), order=order)
        for comp in expansion.components:
            if not comp.support_ok():
                bad[name] = "B^2 > AC"
            elif cusp and any(a == 0 or c == 0 for a, _, c in comp.terms):
                bad[name] = "term on the boundary"
    return not bad, {"forms": names, "violations": bad}


def _orders_up_to(order):
    steps = int(Fraction(order) * 2)
    return [Fraction(n, 2) for n in range(2, steps + 1)] or [Fraction(order)]


def _rank_growth(forms, bound):
    from certifier import modular_rank

    def run(order):
        ranks = [modular_rank(coefficient_matrix([evaluate(f, order=n) for f in forms()]))
                 for n in _orders_up_to(order)]
        ok = all(r <= s for r, s in zip(ranks, ranks[1:])) and ranks[-1] <= bound
        return ok, {"ranks": ranks, "bound": bound}
    return run


def _stable_serialization(names):
    def run(order):
        first = {name: json.dumps(evaluate(get_form(name), order=order).to_records()) for name in names}
        clear_memo()
        second = {name: json.dumps(evaluate(get_form(name), order=order).to_records()) for name in names}
        return first == second, {"forms": names}
    return run


class PropertiesSuite(VerificationSuite):
    name = "properties"

    def checks(self):
        return [
            Check("series_ring_axioms", "series arithmetic", fact(lambda: _ring_axioms(20260101))),
            Check("support_positivity", "support of a Fourier expansion",
                  lambda order: _support(SUPPORT_SAMPLES, False, order)),
            Check("cusp_support_positivity", "support of a Fourier expansion",
                  lambda order: _support(CUSP_SAMPLES, True, order)),
            Check("Phi_rank_growth", "rank in the truncation order",
                  _rank_growth(lambda: [big_phi(i) for i in range(1, 11)], 9)),
            Check("G_rank_growth", "rank in the truncation order",
                  _rank_growth(lambda: [g_form(i, j) for i, j in PAIRS], 15)),
            Check("stable_serialization", "expansion records",
                  _stable_serialization(["chi5", "G_12", "Phi1"])),
            Check("Phi1_retrograde", "retrograde symmetry",
                  lambda order: not series_retrograde_violations(evaluate(big_phi(1), order=order))),
        ]


# ==========================================
# REGISTRY
# ==========================================

class AllSuite(VerificationSuite):
    name = "all"

    def checks(self):
        out = []
        for name, cls in SUITES_MAP.items():
            if name == "all":
                continue
            for c in cls(self.order, self.threads).checks():
                out.append(c._replace(id=f"{name}/{c.id}"))
        return out


SUITES_MAP = {
    "rings": RingsSuite,
    "brackets": BracketsSuite,
    "gradients": GradientsSuite,
    "fricke": FrickeSuite,
    "wedges": WedgesSuite,
    "sigma2": Sigma2Suite,
    "m2": M2Suite,
    "m4": M4Suite,
    "gamma1": Gamma1Suite,
    "level1": Level1Suite,
    "dims": DimsSuite,
    "reps": RepsSuite,
    "properties": PropertiesSuite,
    "all": AllSuite,
}

CERTIFY_MAP = {
    "sigma2": Sigma2Certificates,
    "m2": M2Certificates,
    "m4": M4Certificates,
    "gamma1": Gamma1Certificates,
}


def get_suite(name, order=DEFAULT_ORDER, threads=1, cache_dir=None, use_cache=False, certify=False):
    """Factory: the suite registered under `name`."""
    registry = CERTIFY_MAP if certify else SUITES_MAP
    suite_class = registry.get(name)
    if suite_class is None:
        raise ValueError(f"unknown suite: {name} (known: {', '.join(registry)})")
    return suite_class(order, threads, cache_dir, use_cache)
