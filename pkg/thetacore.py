"""Theta characteristics, their group actions and the q-expansions of theta constants."""
import logging
from functools import lru_cache
from itertools import combinations
from math import isqrt
from typing import NamedTuple

from arith import Cyc8, QSeries, order_to_cutoff

log = logging.getLogger(__name__)


class Characteristic(NamedTuple):
    mu1: int
    mu2: int
    nu1: int
    nu2: int

    @property
    def mu(self):
        return (self.mu1, self.mu2)

    @property
    def nu(self):
        return (self.nu1, self.nu2)

    @property
    def parity(self):
        return (self.mu1 * self.nu1 + self.mu2 * self.nu2) % 2

    def __add__(self, other):
        return Characteristic(*((x + y) % 2 for x, y in zip(self, other)))

    def label(self):
        return f"[{self.mu1}{self.mu2};{self.nu1}{self.nu2}]"


def _char(bits):
    return Characteristic(*(int(b) for b in bits))


# n1..n10 and m1..m6 in lexicographic order of (mu1 mu2 nu1 nu2)
EVEN_CHARS = [_char(b) for b in
              ("0000", "0001", "0010", "0011", "0100", "0110", "1000", "1001", "1100", "1111")]
ODD_CHARS = [_char(b) for b in ("0101", "0111", "1010", "1011", "1101", "1110")]

EVEN_INDEX = {c: i + 1 for i, c in enumerate(EVEN_CHARS)}
ODD_INDEX = {c: i + 1 for i, c in enumerate(ODD_CHARS)}

# Even characteristic n_i as a sum of three odd ones, both complementary triples
TRIPLES = {
    1: ((1, 4, 6), (2, 3, 5)),
    2: ((1, 3, 6), (2, 4, 5)),
    3: ((1, 3, 5), (2, 4, 6)),
    4: ((1, 4, 5), (2, 3, 6)),
    5: ((1, 3, 4), (2, 5, 6)),
    6: ((1, 5, 6), (2, 3, 4)),
    7: ((1, 2, 3), (4, 5, 6)),
    8: ((1, 2, 4), (3, 5, 6)),
    9: ((1, 2, 6), (3, 4, 5)),
    10: ((1, 2, 5), (3, 4, 6)),
}


def char_parity(c):
    return "odd" if Characteristic(*c).parity else "even"


def odd_sum(indices):
    total = Characteristic(0, 0, 0, 0)
    for i in indices:
        total = total + ODD_CHARS[i - 1]
    return total


def triple_to_even(triple):
    """Index of the even characteristic m_a + m_b + m_c."""
    return EVEN_INDEX[odd_sum(triple)]


def odd_pair_to_quadruple(i, j):
    """The four even n_k of the form m_i + m_j + m_l."""
    if i == j or not (1 <= i <= 6 and 1 <= j <= 6):
        raise ValueError(f"odd pair needs two distinct indices in 1..6, got {i}, {j}")
    return frozenset(triple_to_even((i, j, l)) for l in range(1, 7) if l not in (i, j))


def partition_to_quadruple(pairs):
    """The four even n = m_a + m_b + m_c taking one index from each pair."""
    pairs = [tuple(p) for p in pairs]
    flat = sorted(x for p in pairs for x in p)
    if len(pairs) != 3 or any(len(p) != 2 for p in pairs) or flat != [1, 2, 3, 4, 5, 6]:
        raise ValueError(f"not a partition of 1..6 into three pairs: {pairs}")
    out = set()
    for a in pairs[0]:
        for b in pairs[1]:
            for c in pairs[2]:
                out.add(triple_to_even((a, b, c)))
    return frozenset(out)


def all_pair_partitions():
    rest = [1, 2, 3, 4, 5, 6]
    out = []
    for b in rest[1:]:
        others = [x for x in rest if x not in (1, b)]
        first = others[0]
        for c in others[1:]:
            last = tuple(x for x in others if x not in (first, c))
            out.append(((1, b), (first, c), last))
    return out


def reduce_characteristic(mu, nu):
    """Bring (mu, nu) into {0,1}^4; returns the reduced characteristic and the sign it costs."""
    rmu = [x % 2 for x in mu]
    n = [(y - y % 2) // 2 for y in nu]
    sign = -1 if sum(a * b for a, b in zip(rmu, n)) % 2 else 1
    return Characteristic(rmu[0], rmu[1], nu[0] % 2, nu[1] % 2), sign


# ==========================================
# SP(4, Z) ACTION
# ==========================================

X_MATRIX = ((1, 0, 1, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
Y_MATRIX = ((0, 1, 0, 1), (1, 0, 1, 0), (1, 0, 1, 1), (-1, 1, 0, 1))
GENERATORS = {"X": X_MATRIX, "Y": Y_MATRIX}


def block_diag_matrix(a):
    """diag(A, A^{-t}) for A in GL2(Z)."""
    (p, q), (r, s) = a
    det = p * s - q * r
    if det not in (1, -1):
        raise ValueError("matrix is not invertible over Z")
    inv_t = ((s * det, -r * det), (-q * det, p * det))
    return ((p, q, 0, 0), (r, s, 0, 0), (0, 0) + inv_t[0], (0, 0) + inv_t[1])


# generators of the stabilizer of {1,2}{3,4}{5,6}
X_PRIME = block_diag_matrix(((1, 1), (0, 1)))
Y_PRIME = block_diag_matrix(((0, 1), (1, 1)))


def _mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
                 for i in range(len(a)))


def _transpose(a):
    return tuple(zip(*a))


J_MATRIX = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def is_symplectic(m):
    return _mat_mul(_mat_mul(_transpose(m), J_MATRIX), m) == J_MATRIX


def _blocks(m):
    a = ((m[0][0], m[0][1]), (m[1][0], m[1][1]))
    b = ((m[0][2], m[0][3]), (m[1][2], m[1][3]))
    c = ((m[2][0], m[2][1]), (m[3][0], m[3][1]))
    d = ((m[2][2], m[2][3]), (m[3][2], m[3][3]))
    return a, b, c, d


def sp4_char_action(m, c):
    """M.[mu; nu] = [D mu - C nu + diag(C D^t); -B mu + A nu + diag(A B^t)] mod 2."""
    if not is_symplectic(m):
        raise ValueError("matrix is not symplectic")
    a, b, cc, d = _blocks(m)
    mu, nu = (c[0], c[1]), (c[2], c[3])
    cdt = _mat_mul(cc, _transpose(d))
    abt = _mat_mul(a, _transpose(b))
    new_mu = [d[i][0] * mu[0] + d[i][1] * mu[1] - cc[i][0] * nu[0] - cc[i][1] * nu[1] + cdt[i][i]
              for i in range(2)]
    new_nu = [-b[i][0] * mu[0] - b[i][1] * mu[1] + a[i][0] * nu[0] + a[i][1] * nu[1] + abt[i][i]
              for i in range(2)]
    return Characteristic(new_mu[0] % 2, new_mu[1] % 2, new_nu[0] % 2, new_nu[1] % 2)


def s6_image(m):
    """Permutation sigma (as a 6-tuple of images) with M.m_j = m_sigma(j)."""
    return tuple(ODD_INDEX[sp4_char_action(m, c)] for c in ODD_CHARS)


def compose(p, q):
    """(p o q)(j) = p(q(j)) for permutations given as image tuples."""
    return tuple(p[q[j] - 1] for j in range(len(q)))


def word_permutation(word):
    perm = tuple(range(1, 7))
    for g in word:
        perm = compose(perm, s6_image(GENERATORS[g]))
    return perm


# ==========================================
# SLASH MATRICES
# ==========================================

# row i: (j, e) means  atom_i | M = zeta^e * atom_j
RHO_ROWS = {
    ("theta10", "X"): [(3, 0), (4, 0), (1, 0), (2, 0), (6, 0), (5, 0), (7, 1), (8, 1), (9, 1), (10, 1)],
    ("theta10", "Y"): [(8, 7), (5, 0), (3, 6), (10, 7), (4, 6), (7, 7), (9, 0), (2, 7), (6, 7), (1, 5)],
    ("grad6", "X"): [(2, 0), (1, 0), (3, 1), (4, 1), (5, 1), (6, 1)],
    ("grad6", "Y"): [(6, 1), (1, 6), (2, 7), (3, 6), (4, 0), (5, 0)],
}


class SlashMatrix(NamedTuple):
    target: str
    generator: str
    rows: tuple

    def permutation(self):
        return tuple(j for j, _ in self.rows)

    def dense(self):
        size = len(self.rows)
        out = [[Cyc8(0) for _ in range(size)] for _ in range(size)]
        for i, (j, c) in enumerate(self.rows):
            out[i][j - 1] = c
        return out


def slash_matrices(target, gen):
    try:
        rows = RHO_ROWS[(target, gen)]
    except KeyError:
        raise ValueError(f"no slash matrix for {target}/{gen}") from None
    return SlashMatrix(target, gen, tuple((j, Cyc8.zeta(e)) for j, e in rows))


def act_on_index(target, index, word):
    """Follow an atom through a word; returns (zeta power, final index)."""
    power = 0
    for g in word:
        j, e = RHO_ROWS[(target, g)][index - 1]
        power += e
        index = j
    return power % 8, index


def theta_square_sign(m, j):
    """Sign of theta_j^2 | M for M in Gamma[2]."""
    a, b, c, d = _blocks(m)
    if any(x % 2 for x in (b[0][0], b[0][1], b[1][0], b[1][1], c[0][0], c[0][1], c[1][0], c[1][1])):
        raise ValueError("matrix is not in Gamma[2]")
    b1, b4 = b[0][0] // 2, b[1][1] // 2
    c1, c4 = c[0][0] // 2, c[1][1] // 2
    alpha = {
        1: 0, 2: c4, 3: c1, 4: c1 + c4, 5: b4, 6: b4 + c1,
        7: b1, 8: b1 + c4, 9: b1 + b4, 10: b1 + b4 + c1 + c4,
    }[j]
    trace = (d[0][0] - 1 + d[1][1] - 1) // 2
    return -1 if (trace + alpha) % 2 else 1


# ==========================================
# LEVEL-2 DESCENT
# ==========================================

def descent_violations(columns):
    """Row conditions of M.M^t = 0 mod 4 failed by a column list of characteristics."""
    rows = list(zip(*columns)) if columns else [(), (), (), ()]
    names = ("mu1", "mu2", "nu1", "nu2")
    problems = []
    for r, name in zip(rows, names):
        if sum(r) % 4:
            problems.append(f"row {name} sums to {sum(r)} (not 0 mod 4)")
    for (r, n1), (s, n2) in combinations(list(zip(rows, names)), 2):
        dot = sum(x * y for x, y in zip(r, s))
        if dot % 2:
            problems.append(f"rows {n1},{n2} have odd inner product {dot}")
    return problems


def level2_descent_check(columns):
    return not descent_violations(columns)


def monomial_columns(grads, thetas):
    """Columns for Sym(G_grads) * prod theta_i^e; thetas is a map index -> exponent."""
    cols = [ODD_CHARS[g - 1] for g in grads]
    for i, e in sorted(thetas.items()):
        cols.extend([EVEN_CHARS[i - 1]] * e)
    return cols


# ==========================================
# LATTICE SUMS
# ==========================================

_PHASE = ((1, 0, 0, 0), (0, 0, 1, 0), (-1, 0, 0, 0), (0, 0, -1, 0))  # i^k


def _lattice_points(mu, cutoff):
    bound = isqrt(cutoff)
    for w1 in range(-bound, bound + 1):
        if (w1 - mu[0]) % 2:
            continue
        for w2 in range(-bound, bound + 1):
            if (w2 - mu[1]) % 2 or w1 * w1 + w2 * w2 > cutoff:
                continue
            yield w1, w2


def _accumulate(terms, key, num):
    prev = terms.get(key)
    terms[key] = num if prev is None else tuple(p + x for p, x in zip(prev, num))


@lru_cache(maxsize=None)
def theta_series(c, cutoff):
    """theta[mu; nu](tau, 0) with w = 2n + mu: sum of i^(w.nu) q^(w tau w^t / 4)."""
    terms = {}
    for w1, w2 in _lattice_points(c[:2], cutoff):
        phase = _PHASE[(w1 * c[2] + w2 * c[3]) % 4]
        _accumulate(terms, (w1 * w1, w1 * w2, w2 * w2), phase)
    log.debug("theta %s at cutoff %d: %d terms", Characteristic(*c).label(), cutoff, len(terms))
    return QSeries(terms, cutoff)


def theta_constant_qexp(i, order=None, cutoff=None):
    if not 1 <= i <= 10:
        raise ValueError(f"even index out of range: {i}")
    return theta_series(EVEN_CHARS[i - 1], cutoff if cutoff is not None else order_to_cutoff(order))


@lru_cache(maxsize=None)
def gradient_series(c, cutoff):
    """Both components of grad_z theta[c](tau, z) at z = 0, divided by pi*i."""
    comps = ({}, {})
    for w1, w2 in _lattice_points(c[:2], cutoff):
        phase = _PHASE[(w1 * c[2] + w2 * c[3]) % 4]
        key = (w1 * w1, w1 * w2, w2 * w2)
        for t, w in enumerate((w1, w2)):
            if w:
                _accumulate(comps[t], key, tuple(w * x for x in phase))
    return QSeries(comps[0], cutoff), QSeries(comps[1], cutoff)


def theta_gradient_qexp(i, order=None, cutoff=None):
    if not 1 <= i <= 6:
        raise ValueError(f"odd index out of range: {i}")
    return gradient_series(ODD_CHARS[i - 1], cutoff if cutoff is not None else order_to_cutoff(order))


@lru_cache(maxsize=None)
def second_order_series(mu, cutoff):
    """Theta[mu](tau) = theta[mu; 0](2 tau, 0)."""
    terms = {}
    for w1, w2 in _lattice_points(mu, cutoff // 2):
        key = (2 * w1 * w1, 2 * w1 * w2, 2 * w2 * w2)
        _accumulate(terms, key, (1, 0, 0, 0))
    return QSeries(terms, cutoff)


def theta_second_order_qexp(mu, order=None, cutoff=None):
    mu = tuple(mu)
    if mu not in ((0, 0), (0, 1), (1, 0), (1, 1)):
        raise ValueError(f"not a bit pair: {mu}")
    return second_order_series(mu, cutoff if cutoff is not None else order_to_cutoff(order))


def bilinear_rhs(i, cutoff):
    """sum_sigma (-1)^(sigma.nu) Theta[sigma] Theta[sigma + mu] for n_i = [mu; nu]."""
    c = EVEN_CHARS[i - 1]
    total = QSeries.zero(cutoff)
    for s in ((0, 0), (0, 1), (1, 0), (1, 1)):
        shifted = ((s[0] + c.mu1) % 2, (s[1] + c.mu2) % 2)
        term = second_order_series(s, cutoff) * second_order_series(shifted, cutoff)
        if (s[0] * c.nu1 + s[1] * c.nu2) % 2:
            term = -term
        total = total + term
    return total


@lru_cache(maxsize=None)
def genus1_series(which, cutoff):
    """Genus-one thetas in q = exp(pi i tau), stored on the tau11 axis."""
    bound = isqrt(cutoff) + 1
    terms = {}
    for w in range(-bound, bound + 1):
        if w * w > cutoff:
            continue
        if which in ("00", "01"):
            if w % 2:
                continue
            sign = -1 if which == "01" and (w // 2) % 2 else 1
            _accumulate(terms, (w * w, 0, 0), (sign, 0, 0, 0))
        elif which == "10":
            if w % 2 == 0:
                continue
            _accumulate(terms, (w * w, 0, 0), (1, 0, 0, 0))
        elif which == "11-gradient":
            if w % 2 == 0:
                continue
            _accumulate(terms, (w * w, 0, 0), tuple(w * x for x in _PHASE[w % 4]))
        else:
            raise ValueError(f"unknown genus-one theta: {which}")
    return QSeries(terms, cutoff)


def theta_genus1_qexp(which, order=None, cutoff=None):
    return genus1_series(which, cutoff if cutoff is not None else order_to_cutoff(order))
