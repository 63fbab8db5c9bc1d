"""Characters of S6 and S3, multiplicities of spaces of forms, and dimension formulas."""
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

import sympy

from thetacore import word_permutation

log = logging.getLogger(__name__)

# ==========================================
# PARTITIONS AND CHARACTERS
# ==========================================

S6_PARTITIONS = [(6,), (5, 1), (4, 2), (4, 1, 1), (3, 3), (3, 2, 1), (3, 1, 1, 1), (2, 2, 2),
                 (2, 2, 1, 1), (2, 1, 1, 1, 1), (1, 1, 1, 1, 1, 1)]
S3_PARTITIONS = [(3,), (2, 1), (1, 1, 1)]


def label(partition):
    """(4, 1, 1) -> 's[4,1^2]'."""
    parts = []
    i = 0
    while i < len(partition):
        run = 1
        while i + run < len(partition) and partition[i + run] == partition[i]:
            run += 1
        parts.append(str(partition[i]) if run == 1 else f"{partition[i]}^{run}")
        i += run
    return "s[" + ",".join(parts) + "]"


def parse_label(text):
    body = text.strip()
    if body.startswith("s["):
        body = body[2:]
    body = body.rstrip("]").lstrip("[")
    out = []
    for chunk in body.split(","):
        if "^" in chunk:
            base, rep = chunk.split("^")
            out.extend([int(base)] * int(rep))
        else:
            out.append(int(chunk))
    return tuple(out)


S6_LABELS = [label(p) for p in S6_PARTITIONS]
S3_LABELS = [label(p) for p in S3_PARTITIONS]


def _beta_set(partition):
    n = len(partition)
    return tuple(partition[i] + (n - 1 - i) for i in range(n))


def _from_beta(beta):
    n = len(beta)
    parts = [b - (n - 1 - i) for i, b in enumerate(sorted(beta, reverse=True))]
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def mn_character(partition, cycle_type):
    """Murnaghan-Nakayama: strip a rim hook of the first cycle length, bead by bead."""
    if not cycle_type:
        return 1 if sum(partition) == 0 else 0
    r, rest = cycle_type[0], cycle_type[1:]
    beta = _beta_set(partition)
    beads = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in beads:
            continue
        between = sum(1 for c in beta if target < c < b)
        moved = tuple(target if c == b else c for c in beta)
        sign = -1 if between % 2 else 1
        total += sign * mn_character(_from_beta(moved), rest)
    return total


def centralizer_size(cycle_type):
    size = 1
    for part in set(cycle_type):
        m = cycle_type.count(part)
        size *= part ** m * factorial(m)
    return size


def cycle_type(perm):
    seen = set()
    lengths = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        n, cur = 0, start
        while cur not in seen:
            seen.add(cur)
            cur = perm[cur - 1]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


@dataclass
class CharacterTable:
    group: str
    classes: list          # (cycle type, size, representative permutation)
    chars: dict = field(default_factory=dict)

    @property
    def order(self):
        return sum(size for _, size, _ in self.classes)

    def dim(self, name):
        return self.chars[name][0]

    def value(self, name, ctype):
        for i, (c, _, _) in enumerate(self.classes):
            if c == ctype:
                return self.chars[name][i]
        raise KeyError(ctype)

    def inner(self, values):
        """Multiplicities of the irreducibles in a class function given per class."""
        out = {}
        for name, row in self.chars.items():
            total = sum(Fraction(size) * v * chi for (_, size, _), v, chi in zip(self.classes, values, row))
            out[name] = total / self.order
        return out


def _representative(ctype, n):
    perm = list(range(1, n + 1))
    start = 0
    for length in ctype:
        block = list(range(start + 1, start + length + 1))
        for i, p in enumerate(block):
            perm[p - 1] = block[(i + 1) % length]
        start += length
    return tuple(perm)


@lru_cache(maxsize=None)
def character_table(group="S6"):
    if group == "S6":
        n, parts = 6, S6_PARTITIONS
    elif group == "S3":
        n, parts = 3, S3_PARTITIONS
    else:
        raise ValueError(f"unknown group: {group}")
    order = factorial(n)
    ctypes = list(reversed(parts))
    classes = [(c, order // centralizer_size(c), _representative(c, n)) for c in ctypes]
    chars = {label(p): [mn_character(p, c) for c in ctypes] for p in parts}
    return CharacterTable(group, classes, chars)


# ==========================================
# WORDS
# ==========================================

@lru_cache(maxsize=None)
def element_words():
    """BFS-shortest X/Y word for every element of S6, keyed by its permutation."""
    start = tuple(range(1, 7))
    words = {start: ()}
    queue = deque([()])
    while queue:
        word = queue.popleft()
        for g in "XY":
            nxt = word + (g,)
            perm = word_permutation(nxt)
            if perm not in words:
                words[perm] = nxt
                queue.append(nxt)
    if len(words) != 720:
        raise RuntimeError(f"X and Y generated only {len(words)} permutations")
    return words


def class_word(sigma):
    return list(element_words()[tuple(sigma)])


@lru_cache(maxsize=None)
def class_words():
    """One shortest word per conjugacy class, keyed by cycle type."""
    out = {}
    for perm, word in sorted(element_words().items(), key=lambda kv: (len(kv[1]), kv[1])):
        out.setdefault(cycle_type(perm), word)
    return out


# ==========================================
# MULTIPLICITIES
# ==========================================

@dataclass
class IrrepMultiplicity:
    counts: dict

    def dimension(self, group="S6"):
        table = character_table(group)
        return sum(m * table.dim(name) for name, m in self.counts.items())

    def nonzero(self):
        return {k: v for k, v in self.counts.items() if v}

    def __str__(self):
        parts = [f"{v}{k}" if v != 1 else k for k, v in self.counts.items() if v]
        return " + ".join(parts) if parts else "0"


def from_row(values, group="S6"):
    labels = S6_LABELS if group == "S6" else S3_LABELS
    return IrrepMultiplicity(dict(zip(labels, values)))


def rep_multiplicities(basis, order):
    """Decompose the span of `basis` by tracing the word action on each class."""
    from certifier import express_in_basis
    from formalg import evaluate, s6_act

    table = character_table("S6")
    expansions = [evaluate(b, order=order) for b in basis]
    traces = []
    for ctype, _, _ in table.classes:
        word = class_words()[ctype]
        trace = 0
        for i, b in enumerate(basis):
            image = evaluate(s6_act(b, word), order=order)
            coords = express_in_basis(expansions, image)
            trace = trace + coords[i]
        if not trace.is_rational():
            raise ValueError(f"trace on class {ctype} is not rational: {trace}")
        traces.append(trace.c[0])
        log.debug("class %s word %s trace %s", ctype, "".join(word), trace)
    return _decompose(traces)


def modular_character(basis, order):
    """Class traces of the word action on the span of independent forms, taken mod p."""
    from certifier import span_trace
    from formalg import evaluate, s6_act

    expansions = [evaluate(b, order=order) for b in basis]
    traces = []
    for ctype, _, _ in character_table("S6").classes:
        word = class_words()[ctype]
        images = [evaluate(s6_act(b, word), order=order) for b in basis]
        traces.append(span_trace(expansions, images))
    return traces


def _decompose(traces):
    counts = character_table("S6").inner(traces)
    for name, m in counts.items():
        if m.denominator != 1 or m < 0:
            raise ValueError(f"character is not a representation ({name}: {m})")
    return IrrepMultiplicity({name: int(m) for name, m in counts.items()})


def relation_representation(scalars, generators, order):
    """S6 type of the linear relations among the products s * g.

    Both families must be independent and stable.  The relations are the kernel
    of the product map, so their character is the product of the two characters
    minus the character of the span of the products.
    """
    from certifier import coefficient_matrix, modular_pivots, module_products
    from formalg import evaluate

    products = module_products(generators, scalars)
    m = coefficient_matrix([evaluate(e, order=order) for e in products]).modular()
    _, independent = modular_pivots(m)
    image = modular_character([products[c] for c in independent], order)
    left = modular_character(scalars, order)
    right = modular_character(generators, order)
    traces = [a * b - c for a, b, c in zip(left, right, image)]
    log.debug("relation character %s (%d products, %d independent)", traces, len(products), len(independent))
    return _decompose(traces)


def isotypic_project(expr, name):
    """(dim/720) * sum over S6 of chi(sigma) times the action of sigma."""
    from formalg import add, const, s6_act

    table = character_table("S6")
    dim = table.dim(name)
    terms = []
    for perm, word in element_words().items():
        chi = table.value(name, cycle_type(perm))
        if chi:
            terms.append(const(Fraction(dim * chi, 720)) * s6_act(expr, word))
    return add(*terms)


# S3 multiplicity = sum of the S6 multiplicities listed
S6_TO_S3 = {
    "s[3]": ("s[6]", "s[4,2]", "s[2^3]"),
    "s[2,1]": ("s[5,1]", "s[4,2]", "s[3,2,1]"),
    "s[1^3]": ("s[4,1^2]", "s[3^2]"),
}


def branch_s6_to_s3(m):
    counts = m.counts if isinstance(m, IrrepMultiplicity) else m
    return IrrepMultiplicity({s3: sum(counts.get(s6, 0) for s6 in sources)
                              for s3, sources in S6_TO_S3.items()})


INDUCTION = {
    "s[3]": ("s[6]", "s[5,1]", "s[4,2]"),
    "s[2,1]": ("s[4,2]", "s[3,2,1]", "s[2^3]"),
    "s[1^3]": ("s[3,1^3]", "s[2,1^4]"),
}


def induce_to_s6(m):
    out = {name: 0 for name in S6_LABELS}
    for s3, mult in m.counts.items():
        for s6 in INDUCTION[s3]:
            out[s6] += mult
    return IrrepMultiplicity(out)


def sym_power_s21(r):
    """Sym^r of the two-dimensional irreducible of S3."""
    eps = -1 if r % 6 == 1 else 0
    eps_prime = -1 if r % 6 == 4 else 0
    return IrrepMultiplicity({
        "s[3]": 1 + r // 6 + eps,
        "s[2,1]": (r + 2) // 3,
        "s[1^3]": (r + 3) // 6 + eps_prime,
    })


def eisenstein_rep(j, k):
    """S6 representation on the Eisenstein part of M_{j,k}(Gamma[2]), k the (even) weight."""
    if k % 2 or k < 4 or j % 2 or j < 0:
        raise ValueError("formula not applicable")
    r = (j + k) // 2
    base = sym_power_s21(r)
    base.counts["s[3]"] -= 1
    base.counts["s[2,1]"] -= 1
    out = induce_to_s6(base)
    if j == 0:
        for extra in ("s[6]", "s[4,2]", "s[2^3]"):
            out.counts[extra] += 1
    return out


def eisenstein_s3_rep(j, k):
    """S3 representation on the Eisenstein part of M_{j,k}(Gamma1[2]), k the (even) weight."""
    if k % 2 or k < 4:
        raise ValueError("formula not applicable")
    half = k // 2
    if j == 0:
        a = half if half % 2 else half + 1
        return IrrepMultiplicity({"s[3]": a, "s[2,1]": a - 2, "s[1^3]": 0})
    b = _b_count(j, half)
    return IrrepMultiplicity({"s[3]": b, "s[2,1]": b, "s[1^3]": 0})


def _b_count(j, half):
    n = j // 2 + half
    return n - 3 if n % 2 else n - 2


def eisenstein_dim(j, k, group="Gamma[2]", printed=False):
    """Dimension of the Eisenstein subspace of M_{j,k}(group); k is the even weight."""
    if k % 2:
        return 0
    half = k // 2
    if half < 2 or j % 2 or j < 0:
        raise ValueError("formula not applicable")
    if group == "Gamma[2]":
        if j == 0:
            return 15 * (half - 1)
        return 15 * (j // 2 + half) if printed else 15 * (j // 2 + half - 2)
    if group == "Gamma1[2]":
        return 6 * (half // 2) - 1 if j == 0 else 3 * _b_count(j, half)
    if group == "Gamma0[2]":
        return 2 * (half // 2) + 1 if j == 0 else _b_count(j, half)
    raise ValueError(f"no Eisenstein count for {group}")


# ==========================================
# DIMENSION FORMULAS
# ==========================================

def _odd_cubic(j, k):
    return Fraction(2 * (j + 1) * k ** 3 + 3 * (j * j - 2 * j - 8) * k ** 2
                    + (j ** 3 - 9 * j * j - 42 * j + 118) * k
                    + (-2 * j ** 3 - 9 * j * j + 152 * j - 216), 24)


def _even_cubic(j, k):
    return Fraction(2 * (j + 1) * k ** 3 + 3 * (j * j - 2 * j + 2) * k ** 2
                    + (j ** 3 - 9 * j * j - 12 * j + 28) * k
                    + (-2 * j ** 3 - 9 * j * j + 182 * j - 336), 24)


def _m0(k):
    return (k + 1) * (k * k + 2 * k + 12) // 12


def dim_formula(j, k, kind="M"):
    """dim M_{j,k}(Gamma[2]) (kind 'M') or dim S_{j,k}(Gamma[2]) (kind 'S')."""
    if kind not in ("M", "S"):
        raise ValueError(f"unknown kind: {kind}")
    if j < 0 or k < 0:
        raise ValueError("formula not applicable")
    if j % 2:
        return 0
    if j == 0:
        if k % 2 == 0:
            m = _m0(k)
            if kind == "M":
                return m
            if k < 4:
                raise ValueError("formula not applicable")
            return m - eisenstein_dim(0, k)
        if k < 5:
            raise ValueError("formula not applicable")
        return _m0(k - 5)
    if k % 2:
        if k < 3:
            raise ValueError("formula not applicable")
        value = _odd_cubic(j, k)
    else:
        if k < 4:
            raise ValueError("formula not applicable")
        value = _even_cubic(j, k)
        if kind == "S":
            value -= Fraction(15 * (j + k - 4), 2)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral dimension at (j, k) = ({j}, {k})")
    return int(value)


# ==========================================
# GENERATING FUNCTIONS
# ==========================================

T = sympy.Symbol("t")


@dataclass(frozen=True)
class GenFunction:
    name: str
    numerator: tuple      # integer (or rational) coefficients, index = power of t
    denominator: tuple
    note: str = ""

    def coeffs(self, upto):
        """Power-series coefficients of t^0 .. t^upto."""
        den = [Fraction(c) for c in self.denominator]
        if not den or den[0] == 0:
            raise ValueError(f"{self.name}: denominator has no constant term")
        num = [Fraction(c) for c in self.numerator]
        out = []
        for n in range(upto + 1):
            acc = num[n] if n < len(num) else Fraction(0)
            for i in range(1, min(n, len(den) - 1) + 1):
                acc -= den[i] * out[n - i]
            out.append(acc / den[0])
        return out

    def expr(self):
        num = sum(sympy.Rational(c.numerator, c.denominator) * T ** i
                  for i, c in enumerate(Fraction(x) for x in self.numerator))
        den = sum(sympy.Integer(int(c)) * T ** i for i, c in enumerate(self.denominator))
        return num / den


def poly_mul(*polys):
    out = [1]
    for p in polys:
        nxt = [0] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                nxt[i + j] += a * b
        out = nxt
    return out


def one_minus(power, times=1):
    return poly_mul(*([[1] + [0] * (power - 1) + [-1]] * times)) if times else [1]


def poly(terms):
    """{power: coeff} -> coefficient list."""
    top = max(terms)
    return [terms.get(i, 0) for i in range(top + 1)]


def _gamma2_scalar_genfuns():
    d_big = poly_mul(one_minus(4), one_minus(6), one_minus(10), one_minus(12))
    d_56 = poly_mul(one_minus(4), one_minus(6), one_minus(4), one_minus(6))
    d_42 = poly_mul(one_minus(2), one_minus(4, 2), one_minus(10))
    d_221 = poly_mul(one_minus(2), one_minus(4, 2), one_minus(5))
    d_412 = poly_mul(one_minus(1), one_minus(4), one_minus(6), one_minus(12))
    d_3 = poly_mul(one_minus(2), one_minus(4), one_minus(6), one_minus(12))
    d_321 = poly_mul(one_minus(2, 2), one_minus(5), one_minus(6, 2))
    return {
        "s[6]": (poly({0: 1, 35: 1}), d_big),
        "s[1^6]": (poly({5: 1, 30: 1}), d_big),
        "s[5,1]": (poly({11: 1, 12: 1}), d_56),
        "s[2,1^4]": (poly({6: 1, 17: 1}), d_56),
        "s[4,2]": (poly({4: 1, 19: 1}), d_42),
        "s[2^2,1^2]": (poly({9: 1}), d_221),
        "s[4,1^2]": (poly({11: 1, 15: 1}), d_412),
        "s[3,1^3]": (poly({6: 1, 10: 1, 17: 1, 21: 1}), d_3),
        "s[3^2]": (poly({7: 1, 20: 1}), d_3),
        "s[2^3]": (poly({2: 1, 25: 1}), d_3),
        "s[3,2,1]": (poly({8: 1, 16: -1}), d_321),
    }


def _an_coeffs(j):
    """Numerator a_3..a_12 of the weight generating function of M_{j,k}(Gamma[2])."""
    j = Fraction(j)
    return {
        3: (j - 2) * (j - 3) * (j - 4) / 24,
        4: j * (2 * j * j + 3 * j + 166) / 24,
        5: (-j ** 3 + 33 * j * j - 44 * j + 72) / 12,
        6: -(j - 1) * (j * j - 4 * j + 80) / 4,
        7: (-10 * j * j + 25 * j - 20) / 2,
        8: j ** 3 / 4 - 7 * j * j / 2 + 63 * j / 2 - 46,
        9: (j ** 3 + 39 * j * j - 172 * j + 120) / 12,
        10: -j ** 3 / 12 + 11 * j * j / 4 - 71 * j / 3 + 36,
        11: (-j ** 3 - 15 * j * j + 106 * j - 120) / 24,
        12: -5 * j * j / 8 + 25 * j / 4 - 10,
    }


def gamma2_genfun(j):
    if j < 2 or j % 2:
        raise ValueError("formula not applicable")
    a = _an_coeffs(j)
    return GenFunction(f"gamma2_j{j}", tuple(a.get(i, 0) for i in range(13)), tuple(one_minus(2, 5)),
                       "sum over k >= 3 of dim M_{j,k}(Gamma[2])")


_G1_ODD = {
    0: [(1, -18, 104, -192), (2, 30, -104, 192), (-2, 126, -184, 960), (-7, -24, 688, -576),
        (-2, -252, 704, -1344), (8, -132, -704, 384), (8, 180, -1472, 1344), (-2, 240, -400, 384),
        (-7, -18, 1048, -1536), (-2, -138, 680, -576), (2, -18, -200, 768), (1, 24, -160, 192)],
    2: [(1, -18, 92, -120), (2, 30, -104, 72), (-2, 126, -136, 552), (-7, -24, 700, -288),
        (-2, -252, 632, -432), (8, -132, -752, 432), (8, 180, -1424, 336), (-2, 240, -328, -288),
        (-7, -18, 1036, -984), (-2, -138, 632, 72), (2, -18, -200, 648), (1, 24, -148, 0)],
}
_G1_EVEN = {
    0: [(1, -3, 140, 0), (1, 21, 68, 96), (-3, 45, -372, 864), (-4, -36, -56, 0),
        (2, -114, 592, -2016), (6, -30, 192, -960), (2, 102, -656, 1440), (-4, 96, -632, 1920),
        (-3, -27, 324, -288), (1, -63, 572, -1440), (1, -3, -28, 0), (0, 12, -144, 384)],
    2: [(1, -3, 116, -228), (1, 21, 68, 540), (-3, 45, -276, 1068), (-4, -36, -32, -816),
        (2, -114, 448, -1992), (6, -30, 96, -408), (2, 102, -560, 1848), (-4, 96, -488, 1296),
        (-3, -27, 300, -852), (1, -63, 476, -804), (1, -3, -28, 156), (0, 12, -120, 192)],
}


def _gamma1_denominator():
    return tuple(poly_mul(one_minus(2), one_minus(4, 4), one_minus(6)))


def gamma1_genfun(j, parity):
    """Odd weights give dim S_{j,k}(Gamma1[2]); even weights dim M_{j,k}(Gamma1[2])."""
    if j < 2 or j % 2:
        raise ValueError("formula not applicable")
    table, scale, first = (_G1_ODD, 192, 3) if parity == "odd" else (_G1_EVEN, 96, 4)
    rows = table[j % 4]
    num = [Fraction(0)] * (first + 2 * len(rows) - 1)
    for i, (c3, c2, c1, c0) in enumerate(rows):
        num[first + 2 * i] = Fraction(c3 * j ** 3 + c2 * j * j + c1 * j + c0, scale)
    return GenFunction(f"gamma1_j{j}_{parity}", tuple(num), _gamma1_denominator())


def _fixed():
    out = {}
    for name, (num, den) in _gamma2_scalar_genfuns().items():
        out[f"mult_{name}"] = GenFunction(f"mult_{name}", tuple(num), tuple(den),
                                          f"multiplicity of {name} in M_{{0,k}}(Gamma[2])")
    s3_den = tuple(poly_mul(one_minus(2), one_minus(4, 2), one_minus(6)))
    out["gamma1_mult_s[3]"] = GenFunction("gamma1_mult_s[3]", tuple(poly({0: 1, 19: 1})), s3_den)
    out["gamma1_mult_s[2,1]"] = GenFunction("gamma1_mult_s[2,1]",
                                            tuple(poly({4: 1, 8: 1, 11: 1, 15: 1})), s3_den)
    out["gamma1_mult_s[1^3]"] = GenFunction("gamma1_mult_s[1^3]", tuple(poly({7: 1, 12: 1})), s3_den)
    five = tuple(one_minus(2, 5))
    out["M2"] = GenFunction("M2", tuple(poly({4: 15, 6: -19, 8: 5, 10: -1})), five,
                            "sum of dim M_{2,k}(Gamma[2]), k even")
    out["Sigma2"] = GenFunction("Sigma2", tuple(poly({5: 9, 7: -5, 9: -5, 11: 1})), five,
                                "sum of dim S_{2,k}(Gamma[2]), k odd")
    out["M4"] = GenFunction("M4", tuple(poly({2: 5, 4: 10, 6: -10, 8: -10, 10: 5})), five)
    out["S4_even"] = GenFunction("S4_even", tuple(poly({4: 5, 6: 45, 8: -95, 10: 55, 12: -10})), five)
    quarter = tuple(one_minus(4, 5))
    out["Sigma2_gamma1_triv"] = GenFunction("Sigma2_gamma1_triv", tuple(poly({9: 9, 13: -5, 17: -5, 21: 1})),
                                            quarter)
    out["Sigma2_gamma1_s21"] = GenFunction("Sigma2_gamma1_s21", tuple(poly({7: 4, 11: 4, 15: -8})), quarter)
    out["ring_gamma1"] = GenFunction("ring_gamma1", tuple(poly_mul(one_minus(8), one_minus(12))),
                                     _gamma1_denominator(), "Hilbert series of the even ring on Gamma1[2]")
    out["ring_gamma2"] = GenFunction("ring_gamma2", tuple(poly_mul(one_minus(8), poly({0: 1, 5: 1}))),
                                     five, "Hilbert series of the ring on Gamma[2]")
    return out


GENFUNS = _fixed()


def get_genfun(name):
    if name in GENFUNS:
        return GENFUNS[name]
    if name.startswith("gamma2_j"):
        return gamma2_genfun(int(name[len("gamma2_j"):]))
    if name.startswith("gamma1_j"):
        j, parity = name[len("gamma1_j"):].split("_")
        return gamma1_genfun(int(j), parity)
    raise KeyError(f"unknown generating function: {name}")


def genfun_coeffs(name, upto):
    return get_genfun(name).coeffs(upto)


def gamma1_dim(j, k):
    """dim M_{j,k}(Gamma1[2]) for even k (S = M for odd k) read off the generating functions."""
    if j == 0:
        if k % 2:
            raise ValueError("formula not applicable")
        return int(genfun_coeffs("ring_gamma1", k)[k])
    parity = "odd" if k % 2 else "even"
    return int(gamma1_genfun(j, parity).coeffs(k)[k])


def elliptic_dim(k):
    """dim M_k(SL(2, Z))."""
    if k < 0 or k % 2:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


def level_one_cusp_dim(j, k):
    """dim S_{j,k}(Gamma), the s[6] multiplicity in S_{j,k}(Gamma[2]).

    Scalar weights take the s[6] generating function of M_{0,k}(Gamma[2]) and remove
    the Eisenstein part, which the Siegel operator maps onto M_k(SL(2, Z)).  Vector
    weights read the s[6] column of a printed cusp-form table.
    """
    if j == 0:
        total = int(GENFUNS["mult_s[6]"].coeffs(k)[k])
        return total - elliptic_dim(k)
    from reference_tables import MULTIPLICITY_TABLES

    rows = MULTIPLICITY_TABLES.get(f"S{j}", {})
    if k not in rows:
        raise ValueError(f"no S6 table for S_{{{j},{k}}}(Gamma[2])")
    return rows[k][S6_LABELS.index("s[6]")]


def euler_sums(j):
    """(a3 + a5 + ... + a11, a4 + a6 + ... + a12); both vanish."""
    a = _an_coeffs(j)
    return sum(a[i] for i in range(3, 12, 2)), sum(a[i] for i in range(4, 13, 2))
