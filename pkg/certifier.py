"""Exact linear algebra on truncated coefficient vectors.

Ranks are first taken modulo a prime p = 1 mod 8, where zeta_8 has an image,
which gives a rigorous lower bound.  Kernels are computed exactly by
fraction-free elimination over Z[zeta_8] on the rows selected mod p and then
checked against every row.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, gcd

import numpy as np

from arith import Cyc8, _cyc_mul, _galois_conjugates, _lcm, term_key
from formalg import evaluate, mul, power, theta

log = logging.getLogger(__name__)

PRIME = 998244353
ZETA_MOD_P = pow(3, (PRIME - 1) // 8, PRIME)
_ZETA_POWERS = [pow(ZETA_MOD_P, i, PRIME) for i in range(4)]


@dataclass
class CoeffMatrix:
    rows: list                 # (component, triple)
    columns: list              # FormExpansion per column
    order: Fraction
    labels: list = field(default_factory=list)

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def entry(self, r, c):
        comp, triple = self.rows[r]
        return self.columns[c].components[comp].coeff(triple)

    def integer_row(self, r):
        """Row scaled to Z[zeta]: a list of 4-tuples of ints."""
        comp, triple = self.rows[r]
        den = 1
        raw = []
        for col in self.columns:
            series = col.components[comp]
            num = series.terms.get(triple)
            raw.append((num, series.den))
            if num is not None:
                den = _lcm(den, series.den)
        return [(0, 0, 0, 0) if num is None else tuple(x * (den // d) for x in num) for num, d in raw]

    def modular(self):
        out = np.zeros(self.shape, dtype=np.int64)
        for c, col in enumerate(self.columns):
            for r, (comp, triple) in enumerate(self.rows):
                series = col.components[comp]
                num = series.terms.get(triple)
                if num is None:
                    continue
                value = sum(x * z for x, z in zip(num, _ZETA_POWERS)) % PRIME
                out[r, c] = value * pow(series.den, PRIME - 2, PRIME) % PRIME
        return out


def coefficient_matrix(expansions, labels=None):
    if not expansions:
        raise ValueError("no forms given")
    head = expansions[0]
    for e in expansions[1:]:
        if (e.j, e.k, e.p) != (head.j, head.k, head.p):
            raise ValueError(f"mixed weights: {(head.j, head.k, head.p)} vs {(e.j, e.k, e.p)}")
    cutoff = min(e.cutoff for e in expansions)
    keys = set()
    for e in expansions:
        for comp, series in enumerate(e.components):
            keys.update((comp, t) for t in series.terms if t[0] + t[2] <= cutoff)
    rows = sorted(keys, key=lambda rt: (rt[0], term_key(rt[1])))
    return CoeffMatrix(rows, list(expansions), Fraction(cutoff, 4), list(labels or []))


# ==========================================
# MODULAR RANK
# ==========================================

def modular_pivots(matrix):
    """Column pivots and the rows that carry them, by elimination mod p."""
    work = matrix.copy() % PRIME
    n_rows, n_cols = work.shape
    used = np.zeros(n_rows, dtype=bool)
    pivot_rows, pivot_cols = [], []
    for c in range(n_cols):
        candidates = np.nonzero((work[:, c] != 0) & ~used)[0]
        if candidates.size == 0:
            continue
        r = int(candidates[0])
        used[r] = True
        inv = pow(int(work[r, c]), PRIME - 2, PRIME)
        work[r] = work[r] * inv % PRIME
        factors = work[:, c].copy()
        factors[r] = 0
        nz = np.nonzero(factors)[0]
        if nz.size:
            work[nz] = (work[nz] - (factors[nz, None] * work[r][None, :]) % PRIME) % PRIME
        pivot_rows.append(r)
        pivot_cols.append(c)
    return pivot_rows, pivot_cols


def modular_rank(m):
    if 0 in m.shape:
        return 0
    return len(modular_pivots(m.modular())[0])


def modular_solve(a, b):
    """X with a X = b mod p, for square a invertible mod p."""
    n = a.shape[0]
    work = np.concatenate([a, b], axis=1) % PRIME
    for c in range(n):
        candidates = np.nonzero(work[c:, c])[0]
        if candidates.size == 0:
            raise ValueError("matrix is singular mod p")
        r = c + int(candidates[0])
        if r != c:
            work[[c, r]] = work[[r, c]]
        inv = pow(int(work[c, c]), PRIME - 2, PRIME)
        work[c] = work[c] * inv % PRIME
        factors = work[:, c].copy()
        factors[c] = 0
        nz = np.nonzero(factors)[0]
        if nz.size:
            work[nz] = (work[nz] - (factors[nz, None] * work[c][None, :]) % PRIME) % PRIME
    return work[:, n:]


def modular_product(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + (a[:, k:k + 1] * b[k][None, :]) % PRIME) % PRIME
    return out


def span_trace(basis, images):
    """Trace of the map basis[i] -> images[i] on the span of `basis`.

    Coordinates are solved mod p on rows where the basis has full rank and the
    images are checked mod p on every row.  The trace is lifted to the integer of
    least absolute value, which is exact for a stable span whose trace is a
    rational integer (characters of S6).
    """
    n = len(basis)
    m = coefficient_matrix(list(basis) + list(images)).modular()
    pivot_rows, pivot_cols = modular_pivots(m[:, :n])
    if len(pivot_cols) < n:
        raise ValueError("basis not independent")
    coords = modular_solve(m[pivot_rows][:, :n], m[pivot_rows][:, n:])
    if np.any(modular_product(m[:, :n], coords) != m[:, n:]):
        raise ValueError("space not stable: image outside the span")
    trace = int(np.trace(coords)) % PRIME
    return trace - PRIME if trace > PRIME // 2 else trace


# ==========================================
# EXACT ELIMINATION OVER Z[zeta_8]
# ==========================================

def _exact_div(a, d):
    s3, s5, s7 = _galois_conjugates(d)
    cofactor = _cyc_mul(_cyc_mul(s3, s5), s7)
    n = _cyc_mul(d, cofactor)[0]
    num = _cyc_mul(a, cofactor)
    if any(x % n for x in num):
        raise ArithmeticError("inexact division in fraction-free elimination")
    return tuple(x // n for x in num)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _primitive(row):
    g = 0
    for entry in row:
        for x in entry:
            g = gcd(g, x)
    if g > 1:
        return [tuple(x // g for x in entry) for entry in row]
    return row


def bareiss_echelon(rows):
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    rows = [list(_primitive(r)) for r in rows]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    prev = (1, 0, 0, 0)
    pivot_cols = []
    top = 0
    for c in range(n_cols):
        pivot = next((i for i in range(top, len(rows)) if any(rows[i][c])), None)
        if pivot is None:
            continue
        rows[top], rows[pivot] = rows[pivot], rows[top]
        lead = rows[top][c]
        for i in range(top + 1, len(rows)):
            below = rows[i][c]
            for cc in range(c + 1, n_cols):
                value = _sub(_cyc_mul(lead, rows[i][cc]), _cyc_mul(below, rows[top][cc]))
                rows[i][cc] = _exact_div(value, prev)
            rows[i][c] = (0, 0, 0, 0)
        prev = lead
        pivot_cols.append(c)
        top += 1
    return rows[:top], pivot_cols


def _to_cyc(entry):
    return Cyc8(*entry)


def echelon_kernel(echelon, pivot_cols, n_cols):
    """Kernel basis with a 1 at each free column and 0 at the others."""
    free = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for f in free:
        v = [Cyc8(0)] * n_cols
        v[f] = Cyc8(1)
        for k in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[k]
            acc = Cyc8(0)
            for c in range(pc + 1, n_cols):
                if not v[c].is_zero() and any(echelon[k][c]):
                    acc = acc + _to_cyc(echelon[k][c]) * v[c]
            v[pc] = -acc / _to_cyc(echelon[k][pc])
        basis.append(v)
    return basis


def contract(m, vector, rows=None):
    """Indices of rows where the combination of columns does not vanish."""
    bad = []
    for r in (range(len(m.rows)) if rows is None else rows):
        comp, triple = m.rows[r]
        total = Cyc8(0)
        for col, coeff in zip(m.columns, vector):
            if coeff.is_zero():
                continue
            value = col.components[comp].coeff(triple)
            if not value.is_zero():
                total = total + value * coeff
        if not total.is_zero():
            bad.append(r)
    return bad


def rank_kernel(m):
    """Exact rank and kernel basis of a coefficient matrix."""
    n_rows, n_cols = m.shape
    if n_cols == 0:
        return 0, []
    if n_rows == 0:
        return 0, [[Cyc8(int(i == c)) for i in range(n_cols)] for c in range(n_cols)]
    pivot_rows, _ = modular_pivots(m.modular())
    echelon, pivot_cols = bareiss_echelon([m.integer_row(r) for r in sorted(pivot_rows)])
    kernel = echelon_kernel(echelon, pivot_cols, n_cols)
    if all(not contract(m, v) for v in kernel):
        return n_cols - len(kernel), kernel
    log.warning("selected rows missed a constraint; eliminating all %d rows", n_rows)
    echelon, pivot_cols = bareiss_echelon([m.integer_row(r) for r in range(n_rows)])
    kernel = echelon_kernel(echelon, pivot_cols, n_cols)
    return n_cols - len(kernel), kernel


def express_in_basis(expansions, target):
    """Coordinates of `target` in the span of `expansions`."""
    m = coefficient_matrix(list(expansions) + [target])
    rank, kernel = rank_kernel(m)
    n = len(expansions)
    with_target = [v for v in kernel if not v[n].is_zero()]
    if any(v[n].is_zero() for v in kernel):
        raise ValueError("basis not independent")
    if not with_target:
        raise ValueError(f"space not stable: image outside the span (rank {rank} with {n} basis forms)")
    v = with_target[0]
    scale = -v[n]
    return [c / scale for c in v[:n]]


# ==========================================
# GENERATION
# ==========================================

@dataclass
class GenerationCertificate:
    weight: tuple
    claimed_dim: int
    rank: int
    order: Fraction
    status: str
    advice: str = ""

    def to_dict(self):
        return {"weight": list(self.weight), "claimed_dim": self.claimed_dim, "rank": self.rank,
                "order": str(self.order), "status": self.status, "advice": self.advice}


def monomials(forms, degree):
    """Degree-`degree` monomials in the given scalar forms; [None] stands for 1."""
    if degree == 0:
        return [None]
    out = []
    for combo in combinations_with_replacement(range(len(forms)), degree):
        factors = {}
        for i in combo:
            factors[i] = factors.get(i, 0) + 1
        out.append(mul(*[power(forms[i], e) for i, e in sorted(factors.items())]))
    return out


def x_monomials(degree, indices=(1, 2, 3, 4, 5)):
    """Monomials of the given degree in x_i = theta_i^4."""
    return monomials([power(theta(i), 4) for i in indices], degree)


def evaluate_all(exprs, order, threads=1):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda e: evaluate(e, order=order), exprs))
    return [evaluate(e, order=order) for e in exprs]


def module_products(generators, scalar_basis):
    products = []
    for g in generators:
        for s in scalar_basis:
            products.append(g if s is None else mul(s, g))
    return products


def verify_generation(target_weight, generators, scalar_basis, order, claimed_dim, threads=1):
    return certify_span(target_weight, module_products(generators, scalar_basis), order, claimed_dim, threads)


def certify_span(target_weight, products, order, claimed_dim, threads=1):
    """Rank of the given products against the claimed dimension of the target space."""
    expansions = evaluate_all(products, order, threads)
    m = coefficient_matrix(expansions)
    rank = modular_rank(m)
    if rank > claimed_dim:
        raise ArithmeticError(f"rank {rank} exceeds the claimed dimension {claimed_dim} at {target_weight}")
    status = "certified" if rank == claimed_dim else "inconclusive"
    advice = "" if status == "certified" else "raise the order"
    log.info("generation at %s: rank %d of %d (%s)", target_weight, rank, claimed_dim, status)
    return GenerationCertificate(tuple(target_weight), claimed_dim, rank, m.order, status, advice)


def hilbert_check(module_spec, target, upto, denominator=None):
    """Compare gens - rels + syzygies over the denominator with a target generating function."""
    from reptheory import GenFunction, one_minus

    top = max([0] + [w for part in module_spec.values() for w in part])
    num = [0] * (top + 1)
    for w, n in module_spec.get("generators", {}).items():
        num[w] += n
    for w, n in module_spec.get("relations", {}).items():
        num[w] -= n
    for w, n in module_spec.get("syzygies", {}).items():
        num[w] += n
    den = tuple(denominator) if denominator is not None else tuple(one_minus(2, 5))
    mine = GenFunction("module", tuple(num), den).coeffs(upto)
    theirs = target.coeffs(upto)
    return mine == theirs


def presentation_kernel(module_spec, k, scalars=5, step=2):
    """Relations among generator * monomial products at weight k predicted by a presentation.

    The scalar ring is free on `scalars` forms of weight `step`; relations count
    with + and syzygies with -, each times the monomials that lift it to weight k.
    """
    def lifted(part):
        total = 0
        for w, n in module_spec.get(part, {}).items():
            if k >= w and (k - w) % step == 0:
                total += n * comb((k - w) // step + scalars - 1, scalars - 1)
        return total

    return lifted("relations") - lifted("syzygies")
