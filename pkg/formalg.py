"""Expression DAG of Siegel modular forms built from theta constants and gradients.

Nodes are interned: building the same expression twice returns the same object,
so evaluation memoizes on node identity and truncation cutoff.  Every node
carries its weight (j, k), the power p of (pi*i) by which the analytic form
exceeds the stored expansion, and a group tag.
"""
import logging
import threading
import weakref
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

import sympy

from arith import (Cyc8, QSeries, grade, order_to_cutoff, qseries_div, qseries_double,
                   qseries_exact_div, qseries_specialize, qseries_tau_derivative,
                   qseries_transpose, term_key)
from thetacore import (EVEN_CHARS, ODD_CHARS, act_on_index, descent_violations, genus1_series,
                       gradient_series, monomial_columns, theta_series)

log = logging.getLogger(__name__)

# smallest first; combining forms keeps the smaller group
GROUPS = ["Gamma[4,8]", "Gamma[2,4]", "Gamma[2]", "Gamma1[2]", "Gamma0[2]", "Gamma"]
GROUP_RANK = {g: i for i, g in enumerate(GROUPS)}

# nodes live as long as something references them; serials are never reused
_INTERN = weakref.WeakValueDictionary()
_INTERN_LOCK = threading.Lock()
_SERIALS = count()


class FormExpr:
    __slots__ = ("kind", "args", "params", "j", "k", "p", "group", "serial", "__weakref__")

    def __repr__(self):
        if self.kind in ("theta", "grad"):
            return f"{self.kind}{self.params[0]}"
        return f"<{self.kind} j={self.j} k={self.k} p={self.p} #{self.serial}>"

    # --- operators ---

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        if other == 0:
            return self
        return add(other, self)

    def __sub__(self, other):
        return add(self, -other)

    def __rsub__(self, other):
        return add(other, -self)

    def __neg__(self):
        return mul(const(-1), self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, FormExpr):
            return div(self, other)
        return mul(const(1 / Cyc8.coerce(other)), self)

    def __pow__(self, n):
        return power(self, n)

    @property
    def weight(self):
        return (self.j, self.k)


def _make(kind, args, params, j, k, p, group):
    key = (kind, tuple(a.serial for a in args), params)
    with _INTERN_LOCK:
        node = _INTERN.get(key)
        if node is None:
            node = FormExpr()
            node.kind, node.args, node.params = kind, tuple(args), params
            node.j, node.k, node.p, node.group = j, Fraction(k), p, group
            node.serial = next(_SERIALS)
            _INTERN[key] = node
    return node


def _meet(groups):
    return min(groups, key=lambda g: GROUP_RANK[g])


def _as_expr(x):
    if isinstance(x, FormExpr):
        return x
    return const(x)


# ==========================================
# CONSTRUCTORS
# ==========================================

def theta(i):
    if not 1 <= i <= 10:
        raise ValueError(f"even index out of range: {i}")
    return _make("theta", (), (i,), 0, Fraction(1, 2), 0, "Gamma[4,8]")


def grad(i):
    """Normalized gradient G_i / (pi i) of the i-th odd theta function."""
    if not 1 <= i <= 6:
        raise ValueError(f"odd index out of range: {i}")
    return _make("grad", (), (i,), 1, Fraction(1, 2), 1, "Gamma[4,8]")


def genus1(which, axis="11"):
    """Genus-one theta in tau11 or tau22; the 11-gradient is stored divided by pi i."""
    p = 1 if which == "11-gradient" else 0
    k = Fraction(3, 2) if p else Fraction(1, 2)
    return _make("genus1", (), (which, axis), 0, k, p, "Gamma[4,8]")


def const(value):
    value = Cyc8.coerce(value)
    return _make("const", (), (value.c,), 0, 0, 0, "Gamma")


def const_value(node):
    return Cyc8(*node.params[0])


def add(*terms):
    terms = [_as_expr(t) for t in terms]
    flat = []
    for t in terms:
        flat.extend(t.args if t.kind == "add" else (t,))
    if len(flat) == 1:
        return flat[0]
    head = flat[0]
    for t in flat[1:]:
        if (t.j, t.k, t.p) != (head.j, head.k, head.p):
            raise ValueError(f"weight mismatch in sum: {(head.j, head.k, head.p)} vs {(t.j, t.k, t.p)}")
    return _make("add", flat, (), head.j, head.k, head.p, _meet([t.group for t in flat]))


def mul(*factors):
    scalar = Cyc8(1)
    rest = []
    for f in factors:
        f = _as_expr(f)
        if f.kind == "const":
            scalar = scalar * const_value(f)
        elif f.kind == "mul" and f.args[0].kind == "const":
            scalar = scalar * const_value(f.args[0])
            rest.extend(f.args[1:])
        else:
            rest.append(f)
    if not rest:
        return const(scalar)
    if sum(1 for f in rest if f.j) > 1:
        raise ValueError("product of two vector-valued forms needs sym_product")
    rest.sort(key=lambda f: f.serial)
    if scalar == 1 and len(rest) == 1:
        return rest[0]
    args = ([const(scalar)] if scalar != 1 else []) + rest
    j = max(f.j for f in rest)
    k = sum((f.k for f in rest), Fraction(0))
    p = sum(f.p for f in rest)
    return _make("mul", args, (), j, k, p, _meet([f.group for f in rest]))


def power(base, n):
    if n < 0:
        raise ValueError("negative powers are not forms")
    if n == 0:
        return const(1)
    if n == 1:
        return base
    if base.j:
        return sym_product([base] * n)
    return _make("pow", (base,), (n,), 0, base.k * n, base.p * n, base.group)


def div(num, den):
    if den.j:
        raise ValueError("division by a vector-valued form")
    return _make("div", (num, den), (), num.j, num.k - den.k, num.p - den.p,
                 _meet([num.group, den.group]))


def rankin_cohen(f, g):
    """[F, G] = k F dG - l G dF as a vector of weight (2, k + l)."""
    if f.j or g.j:
        raise ValueError("rankin_cohen needs scalar-valued forms")
    return _make("bracket", (f, g), (), 2, f.k + g.k, f.p + g.p, _meet([f.group, g.group]))


def sym(*forms):
    """Product in the symmetric algebra: components multiply like polynomials in e2/e1."""
    forms = [_as_expr(f) for f in forms]
    if any(f.j == 0 for f in forms):
        raise ValueError("sym takes vector-valued forms")
    forms.sort(key=lambda f: f.serial)
    return _make("sym", forms, (), sum(f.j for f in forms), sum((f.k for f in forms), Fraction(0)),
                 sum(f.p for f in forms), _meet([f.group for f in forms]))


def theta_exponents(expr):
    """Exponents of a pure theta monomial, or None."""
    if expr.kind == "theta":
        return {expr.params[0]: 1}
    if expr.kind == "pow":
        inner = theta_exponents(expr.args[0])
        if inner is None:
            return None
        return {i: e * expr.params[0] for i, e in inner.items()}
    if expr.kind == "mul":
        out = {}
        for f in expr.args:
            if f.kind == "const":
                continue
            inner = theta_exponents(f)
            if inner is None:
                return None
            for i, e in inner.items():
                out[i] = out.get(i, 0) + e
        return out
    if expr.kind == "const":
        return {}
    return None


def theta_monomial(exponents):
    factors = [power(theta(i), e) for i, e in sorted(exponents.items()) if e]
    return mul(*factors) if factors else const(1)


def sym_product(grads, scalar=None, claim=None):
    """Sym^j(G_i1, ..., G_ij) * scalar; with claim='Gamma[2]' the descent conditions are enforced."""
    vector = sym(*[grad(i) if isinstance(i, int) else i for i in grads])
    if claim == "Gamma[2]":
        indices = [g if isinstance(g, int) else g.params[0] for g in grads]
        thetas = theta_exponents(scalar) if scalar is not None else {}
        if thetas is None:
            raise ValueError("descent check needs a theta monomial")
        problems = descent_violations(monomial_columns(indices, thetas))
        if problems:
            raise ValueError("not a form on Gamma[2]: " + "; ".join(problems))
    out = vector if scalar is None else mul(scalar, vector)
    return declared(out, claim) if claim else out


def wedge(*forms):
    forms = [_as_expr(f) for f in forms]
    j = forms[0].j
    if any(f.j != j for f in forms) or len(forms) != j + 1:
        raise ValueError(f"wedge needs {j + 1} forms of the same j")
    k = sum((f.k for f in forms), Fraction(0)) + Fraction(j * (j + 1), 2)
    return _make("wedge", forms, (), 0, k, sum(f.p for f in forms), _meet([f.group for f in forms]))


def component(expr, index):
    if not 0 <= index <= expr.j:
        raise ValueError(f"component {index} out of range for j = {expr.j}")
    return _make("component", (expr,), (index,), 0, expr.k, expr.p, expr.group)


def double(expr):
    return _make("double", (expr,), (), expr.j, expr.k, expr.p, "Gamma[4,8]")


def specialize(expr, what):
    if what not in ("r_to_one", "siegel_q2_slice"):
        raise ValueError(f"unknown specialization: {what}")
    return _make("specialize", (expr,), (what,), expr.j, expr.k, expr.p, expr.group)


def pi_scale(expr, e):
    """pi^e * expr, kept exact by moving i^e into the stored coefficients."""
    return _make("pi_scale", (expr,), (e,), expr.j, expr.k, expr.p + e, expr.group)


def declared(expr, group):
    if group not in GROUP_RANK:
        raise ValueError(f"unknown group: {group}")
    if expr.kind == "declared":
        expr = expr.args[0]
    return _make("declared", (expr,), (group,), expr.j, expr.k, expr.p, group)


# ==========================================
# EVALUATION
# ==========================================

@dataclass(frozen=True)
class FormExpansion:
    j: int
    k: Fraction
    p: int
    group: str
    components: tuple

    @property
    def cutoff(self):
        return min(c.cutoff for c in self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def coeff(self, index, triple):
        return self.components[index].coeff(triple)

    def to_records(self):
        return [c.to_records() for c in self.components]


_MEMO = {}
_MEMO_LOCK = threading.Lock()


def clear_memo():
    """Drop every memoized expansion; returns how many were held."""
    with _MEMO_LOCK:
        held = len(_MEMO)
        _MEMO.clear()
    log.debug("expansion memo cleared (%d entries)", held)
    return held


def memo_size():
    with _MEMO_LOCK:
        return len(_MEMO)


def remember(expr, expansion):
    """Seed the memo with an expansion computed elsewhere (the on-disk cache)."""
    if expansion.j != expr.j or expansion.p != expr.p:
        raise ValueError(f"cached expansion does not match {expr!r}")
    with _MEMO_LOCK:
        _MEMO[(expr.serial, expansion.cutoff)] = expansion


def evaluate(expr, order=None, cutoff=None):
    if cutoff is None:
        cutoff = order_to_cutoff(order)
    key = (expr.serial, cutoff)
    with _MEMO_LOCK:
        hit = _MEMO.get(key)
    if hit is not None:
        return hit
    comps = tuple(_eval_components(expr, cutoff))
    if len(comps) != expr.j + 1:
        raise RuntimeError(f"evaluation of {expr!r} produced {len(comps)} components")
    result = FormExpansion(expr.j, expr.k, expr.p, expr.group, comps)
    with _MEMO_LOCK:
        _MEMO[key] = result
    return result


def _comps(expr, cutoff):
    return evaluate(expr, cutoff=cutoff).components


def _series_product(parts, cutoff):
    out = QSeries.one(cutoff)
    for s in parts:
        out = out * s
    return out


def _poly_product(vectors, cutoff):
    out = [QSeries.one(cutoff)]
    for vec in vectors:
        nxt = [QSeries.zero(cutoff) for _ in range(len(out) + len(vec) - 1)]
        for a, x in enumerate(out):
            if x.is_zero():
                continue
            for b, y in enumerate(vec):
                if not y.is_zero():
                    nxt[a + b] = nxt[a + b] + x * y
        out = nxt
    return out


def _determinant(matrix, cutoff):
    n = len(matrix)
    memo = {}

    def minor(row, cols):
        if row == n:
            return QSeries.one(cutoff)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = QSeries.zero(cutoff)
        for pos, col in enumerate(cols):
            entry = matrix[row][col]
            if entry.is_zero():
                continue
            rest = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry * rest
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def _eval_components(expr, cutoff):
    kind = expr.kind
    if kind == "theta":
        return [theta_series(EVEN_CHARS[expr.params[0] - 1], cutoff)]
    if kind == "grad":
        return list(gradient_series(ODD_CHARS[expr.params[0] - 1], cutoff))
    if kind == "genus1":
        which, axis = expr.params
        s = genus1_series(which, cutoff)
        return [qseries_transpose(s) if axis == "22" else s]
    if kind == "const":
        return [QSeries.constant(const_value(expr), cutoff)]
    if kind == "add":
        parts = [_comps(t, cutoff) for t in expr.args]
        return [sum((p[i] for p in parts[1:]), parts[0][i]) for i in range(expr.j + 1)]
    if kind == "mul":
        scalar = Cyc8(1)
        series, vector = [], None
        for f in expr.args:
            if f.kind == "const":
                scalar = scalar * const_value(f)
            elif f.j:
                vector = _comps(f, cutoff)
            else:
                series.append(_comps(f, cutoff)[0])
        base = _series_product(series, cutoff) if series else None
        if vector is None:
            return [base.scale(scalar)]
        out = [v if base is None else base * v for v in vector]
        return [v.scale(scalar) if scalar != 1 else v for v in out]
    if kind == "pow":
        return [_comps(expr.args[0], cutoff)[0] ** expr.params[0]]
    if kind == "div":
        num, den = expr.args
        lead = _comps(den, cutoff)[0].lead()
        if lead is None:
            raise ZeroDivisionError("division by zero in coefficient field")
        shift = grade(lead)
        den_series = _comps(den, cutoff + shift)[0]
        divide = qseries_div if lead == (0, 0, 0) else qseries_exact_div
        return [divide(c, den_series) for c in _comps(num, cutoff + shift)]
    if kind == "bracket":
        f, g = expr.args
        fs, gs = _comps(f, cutoff)[0], _comps(g, cutoff)[0]
        out = []
        for which in ("d11", "d12", "d22"):
            out.append(fs.scale(f.k) * qseries_tau_derivative(gs, which)
                       - gs.scale(g.k) * qseries_tau_derivative(fs, which))
        return out
    if kind == "sym":
        return _poly_product([_comps(f, cutoff) for f in expr.args], cutoff)
    if kind == "wedge":
        matrix = [_comps(f, cutoff) for f in expr.args]
        return [_determinant(matrix, cutoff)]
    if kind == "component":
        return [_comps(expr.args[0], cutoff)[expr.params[0]]]
    if kind == "double":
        inner = _comps(expr.args[0], (cutoff + 1) // 2)
        return [qseries_double(c).truncate(cutoff) for c in inner]
    if kind == "specialize":
        return [qseries_specialize(c, expr.params[0]) for c in _comps(expr.args[0], cutoff)]
    if kind == "pi_scale":
        factor = Cyc8.zeta(-2 * expr.params[0])
        return [c.scale(factor) for c in _comps(expr.args[0], cutoff)]
    if kind in ("declared", "fricke"):
        return list(_comps(expr.args[0], cutoff))
    raise ValueError(f"cannot evaluate node kind {kind}")


# ==========================================
# S6 ACTION
# ==========================================

_UNACTABLE = ("double", "specialize", "fricke", "component", "genus1")


def s6_act(expr, word):
    """Slash an integral-weight expression by a word in X, Y (applied left to right)."""
    if expr.k.denominator != 1:
        raise ValueError("half-integral request: word actions need integral weight")
    word = tuple(word)
    return _act(expr, word, {})


def _act(expr, word, memo):
    hit = memo.get(expr.serial)
    if hit is not None:
        return hit
    kind = expr.kind
    if kind in ("theta", "grad"):
        target = "theta10" if kind == "theta" else "grad6"
        e, idx = act_on_index(target, expr.params[0], word)
        atom = theta(idx) if kind == "theta" else grad(idx)
        out = mul(const(Cyc8.zeta(e)), atom) if e else atom
    elif kind == "const":
        out = expr
    elif kind in _UNACTABLE:
        raise ValueError(f"word action undefined on {kind} nodes")
    else:
        out = _rebuild(expr, [_act(a, word, memo) for a in expr.args])
    memo[expr.serial] = out
    return out


def _rebuild(expr, args):
    kind = expr.kind
    if kind == "add":
        return add(*args)
    if kind == "mul":
        return mul(*args)
    if kind == "pow":
        return power(args[0], expr.params[0])
    if kind == "div":
        return div(*args)
    if kind == "bracket":
        return rankin_cohen(*args)
    if kind == "sym":
        return sym(*args)
    if kind == "wedge":
        return wedge(*args)
    if kind == "pi_scale":
        return pi_scale(args[0], expr.params[0])
    if kind == "declared":
        return declared(args[0], expr.params[0])
    raise ValueError(f"cannot rebuild {kind}")


# ==========================================
# FRICKE CALCULUS
# ==========================================

TH = sympy.symbols("th1:11")
T = sympy.symbols("t1:5")
P_SYM, XI = sympy.symbols("p xi")

# x6..x10 through x1..x5
LINEAR_RELATIONS = {
    6: {1: 1, 2: -1, 3: 1, 4: -1, 5: -1},
    7: {2: 1, 3: -1, 5: 1},
    8: {1: 1, 4: -1, 5: -1},
    9: {3: -1, 4: 1, 5: 1},
    10: {1: 1, 2: -1, 5: -1},
}


def to_sympy(expr):
    """Polynomial in the theta symbols th1..th10 with rational coefficients."""
    kind = expr.kind
    if kind == "theta":
        return TH[expr.params[0] - 1]
    if kind == "const":
        value = const_value(expr)
        if not value.is_rational():
            raise ValueError("Fricke image unknown: irrational coefficient")
        return sympy.Rational(value.c[0].numerator, value.c[0].denominator)
    if kind == "add":
        return sympy.Add(*[to_sympy(a) for a in expr.args])
    if kind == "mul":
        return sympy.Mul(*[to_sympy(a) for a in expr.args])
    if kind == "pow":
        return to_sympy(expr.args[0]) ** expr.params[0]
    if kind in ("declared", "fricke"):
        return to_sympy(expr.args[0])
    raise ValueError(f"Fricke image unknown: {kind} node outside the substitution calculus")


def _x_in_calculus(i):
    """x_i as a polynomial in t1..t4 and xi."""
    x = {1: T[0] ** 2, 2: T[1] ** 2, 3: T[2] ** 2, 4: T[3] ** 2}
    x[5] = (x[1] - x[2] + x[3] - x[4] + XI) / 2
    if i <= 5:
        return x[i]
    return sum(c * x[m] for m, c in LINEAR_RELATIONS[i].items())


def _monomial_to_calculus(exps):
    low = [exps[i] for i in range(4)]
    if len({e % 2 for e in low}) > 1:
        raise ValueError("Fricke image unknown: theta_1..theta_4 exponents of mixed parity")
    m = min(low)
    out = P_SYM ** m
    for i in range(4):
        out *= T[i] ** ((low[i] - m) // 2)
    for i in range(4, 10):
        if exps[i] % 4:
            raise ValueError("Fricke image unknown: theta_%d appears to a power not divisible by 4" % (i + 1))
        out *= _x_in_calculus(i + 1) ** (exps[i] // 4)
    return out


def to_calculus(expr):
    poly = sympy.Poly(sympy.expand(to_sympy(expr)), *TH)
    total = sympy.Integer(0)
    for exps, coeff in poly.terms():
        total += coeff * _monomial_to_calculus(exps)
    return sympy.expand(total)


def w2_substitution(calc):
    """Simultaneous t -> H t / 2, p -> xi / 4, xi -> 4 p."""
    t1, t2, t3, t4 = T
    images = {
        t1: (t1 + t2 + t3 + t4) / 2,
        t2: (t1 - t2 + t3 - t4) / 2,
        t3: (t1 + t2 - t3 - t4) / 2,
        t4: (t1 - t2 - t3 + t4) / 2,
        P_SYM: XI / 4,
        XI: 4 * P_SYM,
    }
    return sympy.expand(calc.subs(images, simultaneous=True))


def _xi_expr():
    return power(theta(5), 4) - power(theta(6), 4)


def from_calculus(calc):
    """Turn a polynomial in t1..t4, p, xi back into a theta expression."""
    calc = sympy.expand(calc)
    if calc == 0:
        raise ValueError("Fricke image is identically zero")
    poly = sympy.Poly(calc, *T, P_SYM, XI)
    terms = []
    for exps, coeff in poly.terms():
        coeff = sympy.Rational(coeff)
        factors = [const(Fraction(int(coeff.p), int(coeff.q)))]
        for i in range(4):
            if exps[i]:
                factors.append(power(theta(i + 1), 2 * exps[i]))
        if exps[4]:
            factors.append(power(mul(theta(1), theta(2), theta(3), theta(4)), exps[4]))
        if exps[5]:
            factors.append(power(_xi_expr(), exps[5]))
        terms.append(mul(*factors))
    return add(*terms)


def fricke_substitute(expr):
    """Image under the Fricke involution of a polynomial in x1..x10 and xi."""
    image = from_calculus(w2_substitution(to_calculus(expr)))
    group = expr.group if GROUP_RANK[expr.group] >= GROUP_RANK["Gamma1[2]"] else "Gamma1[2]"
    return _make("fricke", (image,), (expr.serial,), expr.j, expr.k, expr.p, group)


# ==========================================
# IDENTITY CHECKS
# ==========================================

def _restricted(expr):
    # restrictions keep the Siegel weight label but compare against genus-one products
    if expr.kind == "component":
        expr = expr.args[0]
    return expr.kind == "specialize"


def verify_identity(lhs, rhs, order=None, identity_id="", cutoff=None, stored_only=False):
    """Compare two expressions component by component at a common order."""
    if lhs.j != rhs.j:
        raise ValueError(f"weight mismatch: j = {lhs.j} vs {rhs.j}")
    if lhs.k != rhs.k and not (_restricted(lhs) or _restricted(rhs)):
        raise ValueError(f"weight mismatch: k = {lhs.k} vs {rhs.k}")
    if cutoff is None:
        cutoff = order_to_cutoff(order)
    left, right = evaluate(lhs, cutoff=cutoff), evaluate(rhs, cutoff=cutoff)
    discrepancy = None
    for index, (a, b) in enumerate(zip(left.components, right.components)):
        triple = a.first_difference(b)
        if triple is not None:
            discrepancy = {"component": index, "triple": list(triple),
                           "lhs": a.coeff(triple).to_strings(), "rhs": b.coeff(triple).to_strings()}
            break
    pi_ok = lhs.p == rhs.p or stored_only
    return {
        "identity_id": identity_id,
        "order": str(Fraction(cutoff, 4)),
        "equal": discrepancy is None and pi_ok,
        "discrepancy": discrepancy if discrepancy is not None else (
            None if pi_ok else {"pi_power": [lhs.p, rhs.p]}),
        "pi_power_lhs": lhs.p,
        "pi_power_rhs": rhs.p,
    }


def is_zero_at(expr, order=None, cutoff=None):
    return evaluate(expr, order=order, cutoff=cutoff).is_zero()


def first_nonzero(expr, order=None, cutoff=None):
    """(component, triple) of the smallest nonzero coefficient, or None."""
    result = evaluate(expr, order=order, cutoff=cutoff)
    best = None
    for index, c in enumerate(result.components):
        lead = c.lead()
        if lead is not None and (best is None or term_key(lead) < term_key(best[1])):
            best = (index, lead)
    return best
