"""Exact coefficient arithmetic over Q(zeta_8) and truncated Fourier series in (q1, r, q2).

A series term is keyed by an exponent triple (A, B, C) standing for
exp(pi*i*(A/4*tau11 + B/2*tau12 + C/4*tau22)).  Truncation is measured in
quarter units: a series with ``cutoff`` M keeps a term iff A + C <= M, so the
usual order N corresponds to M = 4N.
"""
import logging
from bisect import bisect_right
from fractions import Fraction
from math import gcd

log = logging.getLogger(__name__)

DEFAULT_ORDER = 6

# ==========================================
# COEFFICIENT FIELD
# ==========================================


def _cyc_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
        a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
        a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
        a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
    )


def _galois_conjugates(a):
    """Images of a under zeta -> zeta^3, zeta^5, zeta^7."""
    a0, a1, a2, a3 = a
    return (a0, a3, -a2, a1), (a0, -a1, a2, -a3), (a0, -a3, -a2, -a1)


class Cyc8:
    """An element a0 + a1*z + a2*z^2 + a3*z^3 of Q(z), z = exp(pi*i/4), z^4 = -1."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Cyc8):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} to Cyc8")

    @classmethod
    def zeta(cls, power=1):
        power %= 8
        sign = -1 if power >= 4 else 1
        coeffs = [0, 0, 0, 0]
        coeffs[power % 4] = sign
        return cls(*coeffs)

    # --- predicates ---

    def is_zero(self):
        return not any(self.c)

    def is_rational(self):
        return not (self.c[1] or self.c[2] or self.c[3])

    # --- ring operations ---

    def __add__(self, other):
        other = Cyc8.coerce(other)
        return Cyc8(*(x + y for x, y in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc8(*(-x for x in self.c))

    def __sub__(self, other):
        return self + (-Cyc8.coerce(other))

    def __rsub__(self, other):
        return Cyc8.coerce(other) - self

    def __mul__(self, other):
        other = Cyc8.coerce(other)
        return Cyc8(*_cyc_mul(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyc8(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def norm(self):
        """Field norm down to Q."""
        s3, s5, s7 = _galois_conjugates(self.c)
        return _cyc_mul(_cyc_mul(self.c, s3), _cyc_mul(s5, s7))[0]

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in coefficient field")
        s3, s5, s7 = _galois_conjugates(self.c)
        numerator = _cyc_mul(_cyc_mul(s3, s5), s7)
        n = _cyc_mul(self.c, numerator)[0]
        return Cyc8(*(x / n for x in numerator))

    def __truediv__(self, other):
        return self * Cyc8.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyc8.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = Cyc8.coerce(other)
        except TypeError:
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Cyc8({', '.join(str(x) for x in self.c)})"

    def __str__(self):
        parts = []
        for power, x in enumerate(self.c):
            if not x:
                continue
            parts.append(str(x) if power == 0 else f"{x}*z^{power}" if power > 1 else f"{x}*z")
        return " + ".join(parts) if parts else "0"

    def to_strings(self):
        return [f"{x.numerator}/{x.denominator}" for x in self.c]

    @classmethod
    def from_strings(cls, values):
        return cls(*(Fraction(v) for v in values))

    # scaled integer form used by the series kernels
    def scaled(self):
        den = 1
        for x in self.c:
            den = den * x.denominator // gcd(den, x.denominator)
        return tuple(int(x * den) for x in self.c), den


ZERO = Cyc8(0)
ONE = Cyc8(1)
I = Cyc8.zeta(2)


def cyc8_arith(a, b=None, op="add"):
    """Dispatch one field operation: add, mul, neg or inv."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation: {op}")


# ==========================================
# TRUNCATED SERIES
# ==========================================


def grade(triple):
    return triple[0] + triple[2]


def term_key(triple):
    """Canonical ordering of exponent triples: total grade, then A, then B."""
    return (triple[0] + triple[2], triple[0], triple[1])


def order_to_cutoff(order):
    cutoff = Fraction(order) * 4
    if cutoff.denominator != 1:
        raise ValueError(f"order {order} is not a multiple of 1/4")
    return int(cutoff)


def _lcm(a, b):
    return a * b // gcd(a, b)


class QSeries:
    """Immutable truncated series with coefficients num/den, num a 4-tuple of ints."""

    __slots__ = ("terms", "den", "cutoff", "rational")

    def __init__(self, terms=None, cutoff=4 * DEFAULT_ORDER, den=1, _clean=False):
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.cutoff = cutoff
        if _clean:
            self.terms = terms
            self.den = den
        else:
            kept = {}
            common = den
            for triple, num in (terms or {}).items():
                if triple[0] + triple[2] > cutoff or not any(num):
                    continue
                kept[triple] = num
                for x in num:
                    common = gcd(common, x)
            if common > 1:
                kept = {t: tuple(x // common for x in num) for t, num in kept.items()}
                den //= common
            self.terms = kept
            self.den = den
        self.rational = all(not (n[1] or n[2] or n[3]) for n in self.terms.values())

    # --- constructors ---

    @classmethod
    def zero(cls, cutoff):
        return cls({}, cutoff, _clean=True)

    @classmethod
    def constant(cls, value, cutoff):
        nums, den = Cyc8.coerce(value).scaled()
        return cls({(0, 0, 0): nums}, cutoff, den)

    @classmethod
    def one(cls, cutoff):
        return cls.constant(1, cutoff)

    @classmethod
    def from_coefficients(cls, mapping, cutoff):
        """Build from a map triple -> Cyc8 (or rational)."""
        den = 1
        scaled = {}
        for triple, value in mapping.items():
            nums, d = Cyc8.coerce(value).scaled()
            scaled[triple] = (nums, d)
            den = _lcm(den, d)
        terms = {t: tuple(x * (den // d) for x in nums) for t, (nums, d) in scaled.items()}
        return cls(terms, cutoff, den)

    # --- accessors ---

    @property
    def order(self):
        return Fraction(self.cutoff, 4)

    def coeff(self, triple):
        num = self.terms.get(tuple(triple))
        if num is None:
            return ZERO
        return Cyc8(*(Fraction(x, self.den) for x in num))

    def items(self):
        for triple in sorted(self.terms, key=term_key):
            yield triple, self.coeff(triple)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def lead(self):
        """Smallest stored triple in canonical order, or None for zero."""
        if not self.terms:
            return None
        return min(self.terms, key=term_key)

    def truncate(self, cutoff):
        if cutoff >= self.cutoff:
            return self
        return QSeries(self.terms, cutoff, self.den)

    def at_order(self, order):
        return self.truncate(order_to_cutoff(order))

    # --- ring operations ---

    def _aligned(self, other):
        cutoff = min(self.cutoff, other.cutoff)
        den = _lcm(self.den, other.den)
        return cutoff, den, den // self.den, den // other.den

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.cutoff)
        cutoff, den, fa, fb = self._aligned(other)
        terms = {}
        for t, n in self.terms.items():
            if t[0] + t[2] <= cutoff:
                terms[t] = n if fa == 1 else tuple(x * fa for x in n)
        for t, n in other.terms.items():
            if t[0] + t[2] > cutoff:
                continue
            prev = terms.get(t)
            if prev is None:
                terms[t] = n if fb == 1 else tuple(x * fb for x in n)
            else:
                terms[t] = tuple(p + x * fb for p, x in zip(prev, n))
        return QSeries(terms, cutoff, den)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({t: tuple(-x for x in n) for t, n in self.terms.items()},
                       self.cutoff, self.den, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.cutoff)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value):
        nums, d = Cyc8.coerce(value).scaled()
        if not any(nums):
            return QSeries.zero(self.cutoff)
        if nums[1:] == (0, 0, 0):
            c = nums[0]
            terms = {t: tuple(x * c for x in n) for t, n in self.terms.items()}
        else:
            terms = {t: _cyc_mul(n, nums) for t, n in self.terms.items()}
        return QSeries(terms, self.cutoff, self.den * d)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        cutoff = min(self.cutoff, other.cutoff)
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        ordered = sorted(big.terms.items(), key=lambda kv: kv[0][0] + kv[0][2])
        grades = [t[0] + t[2] for t, _ in ordered]
        out = {}
        rational = small.rational and big.rational
        for (a1, b1, c1), x in small.terms.items():
            room = cutoff - a1 - c1
            if room < 0:
                continue
            stop = bisect_right(grades, room)
            if rational:
                x0 = x[0]
                for i in range(stop):
                    (a2, b2, c2), y = ordered[i]
                    key = (a1 + a2, b1 + b2, c1 + c2)
                    prev = out.get(key)
                    v = x0 * y[0]
                    out[key] = (v, 0, 0, 0) if prev is None else (prev[0] + v, 0, 0, 0)
            else:
                for i in range(stop):
                    (a2, b2, c2), y = ordered[i]
                    key = (a1 + a2, b1 + b2, c1 + c2)
                    p = _cyc_mul(x, y)
                    prev = out.get(key)
                    out[key] = p if prev is None else (
                        prev[0] + p[0], prev[1] + p[1], prev[2] + p[2], prev[3] + p[3])
        return QSeries(out, cutoff, self.den * other.den)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative powers are not series")
        result = QSeries.one(self.cutoff)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # --- comparison ---

    def first_difference(self, other):
        """Smallest triple where the two series differ at their common cutoff, or None."""
        cutoff = min(self.cutoff, other.cutoff)
        diff = (self.truncate(cutoff) - other.truncate(cutoff))
        return diff.lead()

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def support_ok(self):
        """Every stored triple satisfies B^2 <= A*C with A, C >= 0."""
        return all(a >= 0 and c >= 0 and b * b <= a * c for a, b, c in self.terms)

    # --- serialization ---

    def to_records(self):
        return [
            {"A": t[0], "B": t[1], "C": t[2], "coeff": value.to_strings()}
            for t, value in self.items()
        ]

    @classmethod
    def from_records(cls, records, cutoff):
        return cls.from_coefficients(
            {(r["A"], r["B"], r["C"]): Cyc8.from_strings(r["coeff"]) for r in records}, cutoff)

    def laurent_rows(self):
        """Group coefficients by (A, C): {(A, C): {B: Cyc8}} in canonical order."""
        rows = {}
        for (a, b, c), value in self.items():
            rows.setdefault((a, c), {})[b] = value
        return rows

    def __repr__(self):
        return f"QSeries({len(self.terms)} terms, order={self.order})"


# ==========================================
# SERIES OPERATIONS
# ==========================================


def qseries_ring(a, b=None, op="add"):
    """Dispatch one ring operation: add, mul, scale (b a Cyc8) or neg."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation: {op}")


def _long_divide(a, b, lead):
    """Quotient q with q*b = a up to the shifted cutoff, dividing term by term."""
    g0 = lead[0] + lead[2]
    cutoff = min(a.cutoff, b.cutoff) - g0
    if cutoff < 0:
        raise ValueError("order too small for this divisor")
    inv_lead = b.coeff(lead).inverse()
    b_terms = [(t, b.coeff(t)) for t in b.terms]
    remainder = {t: a.coeff(t) for t in a.terms if t[0] + t[2] <= cutoff + g0}
    quotient = {}
    while remainder:
        t = min(remainder, key=term_key)
        if t[0] + t[2] > cutoff + g0:
            break
        s = (t[0] - lead[0], t[1] - lead[1], t[2] - lead[2])
        if s[0] < 0 or s[2] < 0 or s[1] * s[1] > s[0] * s[2]:
            raise ValueError("not divisible: quotient leaves the holomorphic cone")
        q = remainder.pop(t) * inv_lead
        quotient[s] = q
        for u, bu in b_terms:
            if u == lead:
                continue
            key = (s[0] + u[0], s[1] + u[1], s[2] + u[2])
            if key[0] + key[2] > cutoff + g0:
                continue
            value = remainder.get(key, ZERO) - q * bu
            if value.is_zero():
                remainder.pop(key, None)
            else:
                remainder[key] = value
    return QSeries.from_coefficients(quotient, cutoff)


def qseries_div(a, b):
    """a / b for a divisor whose leading term is a nonzero constant."""
    if b.lead() != (0, 0, 0):
        raise ValueError("divisor has no unit constant term")
    for t in b.terms:
        if t != (0, 0, 0) and t[0] + t[2] == 0:
            raise ValueError("divisor has no unit constant term")
    return _long_divide(a, b, (0, 0, 0))


def qseries_exact_div(a, b):
    """a / b when b divides a; the quotient loses the grade of b's leading term."""
    lead = b.lead()
    if lead is None:
        raise ZeroDivisionError("division by zero in coefficient field")
    return _long_divide(a, b, lead)


def qseries_tau_derivative(s, which):
    """Entry of (1/2 pi i) dF/dtau: A/8 for d11, B/4 for d12, C/8 for d22."""
    if which == "d11":
        terms = {t: tuple(x * t[0] for x in n) for t, n in s.terms.items()}
        return QSeries(terms, s.cutoff, s.den * 8)
    if which == "d12":
        terms = {t: tuple(x * t[1] for x in n) for t, n in s.terms.items()}
        return QSeries(terms, s.cutoff, s.den * 4)
    if which == "d22":
        terms = {t: tuple(x * t[2] for x in n) for t, n in s.terms.items()}
        return QSeries(terms, s.cutoff, s.den * 8)
    raise ValueError(f"unknown derivative: {which}")


def qseries_double(s):
    """Substitute tau -> 2 tau."""
    terms = {(2 * a, 2 * b, 2 * c): n for (a, b, c), n in s.terms.items()}
    return QSeries(terms, 2 * s.cutoff, s.den, _clean=True)


def qseries_specialize(s, what):
    if what == "r_to_one":
        terms = {}
        for (a, b, c), n in s.terms.items():
            prev = terms.get((a, 0, c))
            terms[(a, 0, c)] = n if prev is None else tuple(p + x for p, x in zip(prev, n))
        return QSeries(terms, s.cutoff, s.den)
    if what == "siegel_q2_slice":
        terms = {t: n for t, n in s.terms.items() if t[2] == 0}
        return QSeries(terms, s.cutoff, s.den, _clean=True)
    raise ValueError(f"unknown specialization: {what}")


def qseries_transpose(s):
    """Swap tau11 and tau22."""
    return QSeries({(c, b, a): n for (a, b, c), n in s.terms.items()}, s.cutoff, s.den, _clean=True)
