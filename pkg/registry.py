"""Named forms: scalar generators, gradient products, brackets and module generators.

Every entry is built lazily from theta atoms.  Fixed names live in FORMS_MAP;
indexed families (f[i;a,b,c], K[i,j,k,l], F[a,b,c,d]) are matched by pattern.
"""
import difflib
import logging
import re
from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, NamedTuple

from formalg import (add, const, declared, grad, mul, power, rankin_cohen, s6_act, sym,
                     sym_product, theta, theta_monomial)
from thetacore import act_on_index, descent_violations, monomial_columns, odd_pair_to_quadruple

log = logging.getLogger(__name__)


class UnknownFormError(KeyError):
    def __init__(self, name, suggestions=()):
        super().__init__(name)
        self.name = name
        self.suggestions = list(suggestions)

    def __str__(self):
        msg = f"unknown form: {self.name}"
        if self.suggestions:
            msg += " (did you mean " + ", ".join(self.suggestions) + "?)"
        return msg


class FormSpec(NamedTuple):
    build: Callable
    note: str
    cusp: bool = False


# ==========================================
# HELPERS
# ==========================================

def x(i):
    return power(theta(i), 4)


def thetas(*indices):
    exps = {}
    for i in indices:
        exps[i] = exps.get(i, 0) + 1
    return theta_monomial(exps)


def squares(*indices):
    return theta_monomial({i: 2 for i in indices})


def complement_evens(i, j):
    """The six even indices outside the quadruple attached to the odd pair (i, j)."""
    quad = odd_pair_to_quadruple(i, j)
    return tuple(n for n in range(1, 11) if n not in quad)


def quadruple_evens(i, j):
    return tuple(sorted(odd_pair_to_quadruple(i, j)))


def elementary(values, r):
    return add(*[mul(*c) for c in combinations(values, r)])


@lru_cache(maxsize=None)
def s6_words():
    """Shortest X/Y word for each permutation of the six gradients, keyed by image tuple."""
    start = tuple(range(1, 7))
    words = {start: ()}
    queue = deque([()])
    while queue:
        word = queue.popleft()
        for g in "XY":
            nxt = word + (g,)
            perm = tuple(act_on_index("grad6", i, nxt)[1] for i in range(1, 7))
            if perm not in words:
                words[perm] = nxt
                queue.append(nxt)
    log.debug("enumerated %d group words", len(words))
    return words


def word_for_pair(i, j):
    """A word moving the odd pair {1, 2} onto {i, j}."""
    target = {i, j}
    best = None
    for perm, word in s6_words().items():
        if {perm[0], perm[1]} == target and (best is None or len(word) < len(best)):
            best = word
    if best is None:
        raise ValueError(f"no word maps (1,2) to {(i, j)}")
    return best


# ==========================================
# SCALAR FORMS
# ==========================================

def chi5():
    return declared(thetas(*range(1, 11)), "Gamma[2]")


def chi10():
    return declared(mul(const(Fraction(-1, 2 ** 14)), power(chi5(), 2)), "Gamma")


def s(r):
    return declared(elementary([x(i) for i in range(1, 5)], r), "Gamma1[2]")


def xi():
    return x(5) - x(6)


def alpha():
    return declared(power(xi(), 2), "Gamma1[2]")


def form_c():
    return declared(mul(const(-1), squares(*range(5, 11))), "Gamma1[2]")


def chi7():
    return declared(mul(chi5(), x(6) - x(5)), "Gamma1[2]")


def delta():
    return declared(mul(*[x(a) - x(b) for a, b in combinations(range(1, 5), 2)]), "Gamma0[2]")


def chi30():
    factors = [x(2) - x(3), x(2) - x(4), x(3) - x(4), x(3) - x(5), x(3) - x(6), x(5) - x(6)]
    factors += [x(1) - x(i) for i in range(2, 11)]
    return declared(mul(*factors), "Gamma")


def y_model():
    third = const(Fraction(1, 3))
    s1 = s(1)
    y1 = x(1) - third * s1
    y4 = x(2) - third * s1
    y6 = x(3) - third * s1
    y3 = x(4) - third * s1
    y5 = x(5) - y1 - y6
    y2 = third * s1 - y5
    return {1: y1, 2: y2, 3: y3, 4: y4, 5: y5, 6: y6}


def u_forms():
    u = {
        1: x(1) + x(2) + x(3) + x(4),
        2: x(1) - x(2) + x(3) - x(4),
        3: x(1) + x(2) - x(3) - x(4),
        4: x(1) - x(2) - x(3) + x(4),
        5: 2 * squares(5, 6),
        7: 2 * squares(7, 8),
        9: 2 * squares(9, 10),
        6: 2 * (squares(1, 2) + squares(3, 4)),
        8: 2 * (squares(1, 3) + squares(2, 4)),
        10: 2 * (squares(1, 4) + squares(2, 3)),
    }
    return u


def eta():
    s1, s2 = s(1), s(2)
    return declared(2 * (s1 ** 2 - 4 * s2 - xi() ** 2), "Gamma1[2]")


def big_x():
    u = u_forms()
    out = {i: declared(power(u[i], 2), "Gamma1[2]") for i in range(1, 5)}
    e = eta()
    half = const(Fraction(1, 2))
    out[5] = half * (e + out[1] - out[2] + out[3] - out[4])
    out[6] = half * (-e + out[1] - out[2] + out[3] - out[4])
    out[7] = half * (e + out[1] + out[2] - out[3] - out[4])
    out[8] = half * (-e + out[1] + out[2] - out[3] - out[4])
    out[9] = half * (e + out[1] - out[2] - out[3] + out[4])
    out[10] = half * (-e + out[1] - out[2] - out[3] + out[4])
    return out


def big_y():
    xx = big_x()
    third = const(Fraction(1, 3))
    total = xx[1] + xx[2] + xx[3] + xx[4]
    y1 = xx[1] - third * total
    y4 = xx[2] - third * total
    y6 = xx[3] - third * total
    y3 = xx[4] - third * total
    y5 = xx[5] - y1 - y6
    y2 = third * total - y5
    return {1: y1, 2: y2, 3: y3, 4: y4, 5: y5, 6: y6}


# ==========================================
# BRACKETS AND GRADIENTS
# ==========================================

def h_12():
    return declared(rankin_cohen(squares(1, 3), squares(2, 4)), "Gamma[2]")


# H_ij is only fixed up to sign by the word moving (1, 2) to (i, j); these
# pairs flip so that G_ij = -pi^2 H_ij holds for every pair
H_SIGN_FLIPS = frozenset({(3, 4)})


def h_form(i, j):
    if (i, j) == (1, 2):
        return h_12()
    image = s6_act(h_12(), word_for_pair(i, j))
    return -image if (i, j) in H_SIGN_FLIPS else image


def hp_12():
    u = u_forms()
    return declared(rankin_cohen(u[1] * u[2], u[3] * u[4]), "Gamma1[2]")


def hp_form(i, j):
    if (i, j) == (1, 2):
        return hp_12()
    return s6_act(hp_12(), word_for_pair(i, j))


def big_phi(i):
    others = thetas(*[n for n in range(1, 11) if n != i])
    return declared(4 * rankin_cohen(theta(i), others), "Gamma[2]")


def small_phi(i, j):
    others = thetas(*[n for n in range(1, 11) if n not in (i, j)])
    return declared(mul(others, rankin_cohen(theta(i), theta(j))), "Gamma[2]")


def g_form(i, j):
    return sym_product([i, j], thetas(*complement_evens(i, j)), claim="Gamma[2]")


def f_form(i, a, b, c):
    return sym_product([i, i], squares(a, b, c) if len({a, b, c}) == 3
                       else theta_monomial(_exponents((a, b, c), 2)), claim="Gamma[2]")


def _exponents(indices, e):
    out = {}
    for n in indices:
        out[n] = out.get(n, 0) + e
    return out


def f_triples(i):
    """Triples (a, b, c) with Sym^2(G_i) theta_a^2 theta_b^2 theta_c^2 on Gamma[2]."""
    out = []
    for a, b, c in combinations(range(1, 11), 3):
        cols = monomial_columns([i, i], {a: 2, b: 2, c: 2})
        if not descent_violations(cols):
            out.append((a, b, c))
    return out


def anti_invariant_f():
    return declared(sym(*[grad(i) for i in range(1, 7)]), "Gamma[2]")


def e_form(i):
    return declared(power(grad(i), 4), "Gamma[2]")


def d_form(a, b, c, d):
    rest = [n for n in range(1, 7) if n not in (a, b, c, d)]
    return sym_product([a, b, c, d], thetas(*quadruple_evens(*rest)), claim="Gamma[2]")


def k_form(i, j, k, l):
    return sym_product([i, i, j, j], theta_monomial(_exponents((k, l), 2)), claim="Gamma[2]")


def r_form(n):
    from reptheory import isotypic_project
    source = {1: (1, 2, 1, 3), 2: (1, 2, 2, 4), 3: (1, 3, 1, 10), 4: (1, 3, 4, 9), 5: (1, 4, 2, 10)}[n]
    return declared(isotypic_project(k_form(*source), "s[2^3]"), "Gamma[2]")


def fabcd_form(a, b, c, d):
    if len({a, b, c, d}) != 4:
        raise ValueError("F[a,b,c,d] needs four distinct indices")
    others = thetas(*[n for n in range(1, 11) if n not in (a, b, c, d)])
    return mul(others, sym(rankin_cohen(theta(a), theta(b)), rankin_cohen(theta(c), theta(d))))


def x_bracket(i, j):
    return declared(rankin_cohen(x(i), x(j)), "Gamma[2]")


def g_basis(n):
    sets = {1: (1, 2, 3, 5, 7, 10), 2: (1, 2, 3, 6, 8, 9), 3: (1, 2, 4, 5, 8, 10),
            4: (1, 3, 4, 5, 8, 9), 5: (5, 6, 7, 8, 9, 10)}
    return declared(squares(*sets[n]), "Gamma[2]")


# Sigma_2(Gamma1[2]) generators in weight (2, 7) and (2, 9..11)
def _phi_combo(signs):
    return add(*[sgn * big_phi(i) for i, sgn in zip(range(1, 5), signs)])


def sigma2_gamma1():
    p = {i: big_phi(i) for i in range(1, 11)}
    xs = {i: x(i) for i in range(1, 11)}
    xi_ = xi()
    s1 = s(1)
    pair56, pair78, pair910 = xs[5] + xs[6], xs[7] + xs[8], xs[9] + xs[10]
    forms = {
        "F1": mul(xs[5] - xs[6], p[1] + p[2] + p[3] + p[4]),
        "F2": mul(pair56, p[5] - p[6]),
        "F3": mul(pair78, p[7] - p[8]),
        "F4": mul(pair910, p[9] - p[10]),
    }
    forms["A1"] = mul(s1, forms["F2"])
    forms["A2"] = mul(s1, forms["F3"])
    forms["A3"] = mul(s1, forms["F4"])
    forms["A4"] = mul(pair56, pair78, p[9] - p[10])
    forms["A5"] = mul(pair78, pair910, p[5] - p[6])
    forms["A6"] = mul(pair56, pair910, p[7] - p[8])
    forms["A7"] = mul(pair56, xi_, _phi_combo((1, -1, 1, -1)))
    forms["A8"] = mul(pair910, xi_, _phi_combo((1, -1, -1, 1)))
    forms["A9"] = mul(pair78, xi_, _phi_combo((1, 1, -1, -1)))
    cube = {i: power(xs[i], 3) for i in range(1, 5)}
    forms["L1"] = mul(cube[1] + cube[2] - cube[3] - cube[4], p[7] - p[8])
    forms["L2"] = mul(cube[1] - cube[2] - cube[3] + cube[4], p[9] - p[10])
    forms["L3"] = mul(cube[1] - cube[2] + cube[3] - cube[4], p[5] - p[6])
    forms["M1"] = mul(xi_, pair78, pair910, _phi_combo((1, -1, 1, -1)))
    forms["M2"] = mul(xi_, pair56, pair78, _phi_combo((1, -1, -1, 1)))
    forms["M3"] = mul(xi_, pair56, pair910, _phi_combo((1, 1, -1, -1)))
    return {name: declared(f, "Gamma1[2]") for name, f in forms.items()}


# level one
def level1_s2_14():
    return declared(add(*[mul(chi5(), power(theta(i), 8), big_phi(i)) for i in range(1, 11)]), "Gamma")


def level1_s4_10():
    return declared(add(*[sym(big_phi(i), big_phi(i)) for i in range(1, 11)]), "Gamma")


def level1_s6_8():
    return declared(mul(chi5(), anti_invariant_f()), "Gamma")


def level1_s12_6():
    return declared(sym(*[grad(i) for i in range(1, 7) for _ in range(2)]), "Gamma")


# ==========================================
# REGISTRY
# ==========================================

def _pairs():
    return list(combinations(range(1, 7), 2))


def _build_map():
    forms = {}

    def put(name, build, note, cusp=False):
        forms[name] = FormSpec(build, note, cusp)

    for i in range(1, 11):
        put(f"x{i}", lambda i=i: x(i), "fourth power of the i-th even theta constant")
    put("chi5", chi5, "product of the ten even theta constants", cusp=True)
    put("chi10", chi10, "-chi5^2 / 2^14", cusp=True)
    for r in range(1, 5):
        put(f"s{r}", lambda r=r: s(r), "elementary symmetric function of x1..x4")
    put("xi", xi, "x5 - x6")
    put("alpha", alpha, "xi^2")
    put("D1", lambda: declared(mul(x(1) - x(2), x(3) - x(4)), "Gamma0[2]"), "(x1 - x2)(x3 - x4)")
    put("D2", lambda: declared(mul(x(1) - x(3), x(2) - x(4)), "Gamma0[2]"), "(x1 - x3)(x2 - x4)")
    put("C", form_c, "-theta5^2 ... theta10^2")
    put("chi7", chi7, "chi5 (x6 - x5)", cusp=True)
    put("delta", delta, "square root of the discriminant of x1..x4")
    put("chi19", lambda: declared(mul(chi7(), delta()), "Gamma0[2]"), "chi7 delta", cusp=True)
    put("chi30", chi30, "S6-anti-invariant form of weight 30", cusp=True)
    put("chi35", lambda: declared(mul(chi30(), chi5()), "Gamma"), "chi30 chi5", cusp=True)
    for i in range(1, 7):
        put(f"y{i}", lambda i=i: y_model()[i], "coordinate of the sextic model")
    for i in range(1, 11):
        put(f"X{i}", lambda i=i: big_x()[i], "Gamma1[2] analogue of x_i")
        put(f"U{i}", lambda i=i: declared(u_forms()[i], "Gamma1[2]"), "Gamma1[2] analogue of theta_i^2")
    put("eta", eta, "2 (s1^2 - 4 s2 - xi^2)")
    for i in range(1, 7):
        put(f"Y{i}", lambda i=i: big_y()[i], "sextic coordinate built from X1..X10")
    for i, j in _pairs():
        put(f"H_{i}{j}", lambda i=i, j=j: h_form(i, j), "bracket of theta-square products")
        put(f"Hp_{i}{j}", lambda i=i, j=j: hp_form(i, j), "bracket of U-products")
        put(f"G_{i}{j}", lambda i=i, j=j: g_form(i, j), "Sym^2(G_i, G_j) times six complementary thetas")
    put("G_11", lambda: sym_product([1, 1], squares(1, 4, 6), claim="Gamma[2]"), "Sym^2(G_1) theta1^2 theta4^2 theta6^2")
    for i in range(1, 11):
        put(f"Phi{i}", lambda i=i: big_phi(i), "4 [theta_i, product of the other nine]", cusp=True)
    for i, j in combinations(range(1, 11), 2):
        put(f"phi_{i}_{j}", lambda i=i, j=j: small_phi(i, j), "theta-product times [theta_i, theta_j]", cusp=True)
        put(f"F_{i}_{j}", lambda i=i, j=j: x_bracket(i, j), "[x_i, x_j]")
    put("Phi_sum", lambda: add(*[big_phi(i) for i in range(1, 11)]), "sum of the ten Phi_i", cusp=True)
    put("F", anti_invariant_f, "Sym^6(G_1, ..., G_6)", cusp=True)
    for i in range(1, 7):
        put(f"E{i}", lambda i=i: e_form(i), "Sym^4(G_i)")
    for quad in combinations(range(1, 7), 4):
        name = "D_" + "".join(str(q) for q in quad)
        put(name, lambda quad=quad: d_form(*quad), "Sym^4 of four gradients times four thetas", cusp=True)
    for n in range(1, 6):
        put(f"R{n}", lambda n=n: r_form(n), "s[2^3]-projection of a K-form")
        put(f"g{n}", lambda n=n: g_basis(n), "product of squares of six theta constants")
    for name in ("F1", "F2", "F3", "F4", "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9",
                 "L1", "L2", "L3", "M1", "M2", "M3"):
        put(name, lambda name=name: sigma2_gamma1()[name], "generator of Sigma_2(Gamma1[2])", cusp=True)
    put("level1_S2_14", level1_s2_14, "sum chi5 theta_i^8 Phi_i", cusp=True)
    put("level1_S4_10", level1_s4_10, "sum Sym^2(Phi_i)", cusp=True)
    put("level1_S6_8", level1_s6_8, "chi5 Sym^6(G_1, ..., G_6)", cusp=True)
    put("level1_S12_6", level1_s12_6, "Sym^12(G_1, G_1, ..., G_6, G_6)", cusp=True)
    return forms


FORMS_MAP = _build_map()

FAMILIES = [
    (re.compile(r"^f\[(\d+);(\d+),(\d+),(\d+)\]$"), f_form, "Sym^2(G_i) theta_a^2 theta_b^2 theta_c^2"),
    (re.compile(r"^K\[(\d+),(\d+),(\d+),(\d+)\]$"), k_form, "Sym^4(G_i, G_i, G_j, G_j) theta_k^2 theta_l^2"),
    (re.compile(r"^F\[(\d+),(\d+),(\d+),(\d+)\]$"), fabcd_form, "chi5 / (theta_a..theta_d) Sym^2([a,b],[c,d])"),
]


def is_cusp(name):
    spec = FORMS_MAP.get(name)
    if spec is not None:
        return spec.cusp
    return name.startswith("F[")


@lru_cache(maxsize=None)
def named_form(name):
    spec = FORMS_MAP.get(name)
    if spec is not None:
        return spec.build()
    for pattern, build, _ in FAMILIES:
        m = pattern.match(name)
        if m:
            return build(*(int(g) for g in m.groups()))
    close = difflib.get_close_matches(name, list(FORMS_MAP), n=3)
    raise UnknownFormError(name, close)


def get_form(name):
    """Like named_form, with the lookup logged."""
    log.debug("building form %s", name)
    return named_form(name)


def list_names():
    return list(FORMS_MAP)
