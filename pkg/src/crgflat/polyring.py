"""Sparse multivariate polynomials with cyclotomic coefficients.

Terms live in a dict mapping exponent tuples to CycloNumbers, all stored in
one common field order.  Multiplication packs every coefficient vector into a
single integer (Kronecker substitution on zeta) and every exponent vector into
a single integer, so the inner loop is plain big-int arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, factorial, prod
import heapq

from .errors import FrameMismatch, InexactDivision
from .exactnum import CycloNumber, totient, _reduce, rational


@dataclass(frozen=True)
class VarFrame:
    names: tuple
    weights: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
            if len(self.weights) != len(self.names):
                raise ValueError("weights and names differ in length")

    @property
    def nvars(self):
        return len(self.names)

    @classmethod
    def make(cls, prefix, n, weights=None):
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)), weights)


def _grlex_key(e):
    # larger key == larger in graded-lex order
    return (sum(e), e)


def _as_cyclo(c, order):
    if isinstance(c, CycloNumber):
        return c
    return rational(c, order)


class MultiPoly:
    __slots__ = ("frame", "order", "terms")

    def __init__(self, frame: VarFrame, terms=None, order: int | None = None):
        self.frame = frame
        terms = terms or {}
        n = 1 if order is None else order
        for c in terms.values():
            if isinstance(c, CycloNumber):
                n = lcm(n, c.order)
        clean = {}
        for e, c in terms.items():
            c = _as_cyclo(c, n)
            if c.order != n:
                c = c.embed(n)
            if c:
                e = tuple(e)
                if len(e) != frame.nvars:
                    raise ValueError("exponent length does not match frame")
                clean[e] = c
        self.order = n
        self.terms = clean

    @classmethod
    def _make(cls, frame, terms, order):
        # trusted constructor: coefficients already nonzero and of this order
        p = cls.__new__(cls)
        p.frame = frame
        p.order = order
        p.terms = terms
        return p

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, frame, order=1):
        return cls._make(frame, {}, order)

    @classmethod
    def constant(cls, frame, c, order=1):
        c = _as_cyclo(c, order)
        return cls(frame, {(0,) * frame.nvars: c}, order)

    @classmethod
    def var(cls, frame, i, order=1):
        e = [0] * frame.nvars
        e[i] = 1
        return cls._make(frame, {tuple(e): rational(1, order)}, order)

    @classmethod
    def monomial(cls, frame, exps, c=1, order=1):
        return cls(frame, {tuple(exps): _as_cyclo(c, order)}, order)

    @classmethod
    def linear(cls, frame, coeffs, order=1):
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * frame.nvars
            e[i] = 1
            terms[tuple(e)] = c
        return cls(frame, terms, order)

    # -- basic queries ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exps):
        c = self.terms.get(tuple(exps))
        return c if c is not None else rational(0, self.order)

    def sorted_terms(self):
        """(exps, coeff) pairs in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_exponent(self):
        return max(self.terms, key=_grlex_key)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self, weights=None):
        w = weights or self.frame.weights
        return max((sum(a * b for a, b in zip(e, w)) for e in self.terms), default=-1)

    def is_homogeneous(self, weights=None):
        w = weights or self.frame.weights or (1,) * self.frame.nvars
        return len({sum(a * b for a, b in zip(e, w)) for e in self.terms}) <= 1

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def with_order(self, order):
        if order == self.order:
            return self
        if order % self.order:
            order = lcm(order, self.order)
        return MultiPoly._make(self.frame, {e: c.embed(order) for e, c in self.terms.items()}, order)

    def reframe(self, frame: VarFrame):
        """Same terms, different variable names/weights (same arity)."""
        if frame.nvars != self.frame.nvars:
            raise FrameMismatch("arity differs")
        return MultiPoly._make(frame, self.terms, self.order)

    # -- arithmetic ------------------------------------------------------
    def _align(self, other):
        if isinstance(other, MultiPoly):
            if other.frame.nvars != self.frame.nvars or other.frame.names != self.frame.names:
                raise FrameMismatch(f"{self.frame.names} vs {other.frame.names}")
            n = lcm(self.order, other.order)
            return self.with_order(n), other.with_order(n)
        if isinstance(other, (int, Fraction, CycloNumber)):
            n = self.order
            if isinstance(other, CycloNumber):
                n = lcm(n, other.order)
            return self.with_order(n), MultiPoly.constant(self.frame, other, n).with_order(n)
        return None, None

    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        t = dict(a.terms)
        for e, c in b.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MultiPoly._make(a.frame, t, a.order)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.frame, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, CycloNumber):
            n = lcm(self.order, c.order)
            c = c.embed(n)
            src = self.with_order(n)
        else:
            c = Fraction(c)
            src = self
            n = self.order
        if not c:
            return MultiPoly.zero(self.frame, n)
        return MultiPoly._make(self.frame, {e: v * c for e, v in src.terms.items()}, n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scale(other)
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return MultiPoly._make(a.frame, _mul_terms(a.terms, b.terms, a.order), a.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self.scale(1 / other if not isinstance(other, int) else Fraction(1, other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MultiPoly.constant(self.frame, 1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = MultiPoly.constant(self.frame, other, self.order)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.frame.names != self.frame.names:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    __hash__ = None

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


# -- multiplication kernel ------------------------------------------------------

def _common_den(terms):
    d = 1
    for c in terms.values():
        d = lcm(d, c._den)
    return d


def _mul_terms(A, B, order):
    if not A or not B:
        return {}
    if len(A) > len(B):
        A, B = B, A
    if len(A) == 1:
        ((ea, ca),) = A.items()
        out = {}
        for eb, cb in B.items():
            v = ca * cb
            if v:
                out[tuple(x + y for x, y in zip(ea, eb))] = v
        return out
    phi = totient(order)
    nv = len(next(iter(A)))
    da, db = _common_den(A), _common_den(B)

    # bit budget for one packed digit
    ma = max(max(map(abs, c._nums)) * (da // c._den) for c in A.values())
    mb = max(max(map(abs, c._nums)) * (db // c._den) for c in B.values())
    bits = ma.bit_length() + mb.bit_length() + phi.bit_length() + len(A).bit_length() + 2

    # exponent packing
    dega = [max(e[i] for e in A) for i in range(nv)]
    degb = [max(e[i] for e in B) for i in range(nv)]
    ebits = max(x + y for x, y in zip(dega, degb)).bit_length() + 1
    shifts = [ebits * i for i in range(nv)]

    def pack_e(e):
        k = 0
        for x, s in zip(e, shifts):
            k |= x << s
        return k

    def pack_c(c, d):
        f = d // c._den
        v = 0
        for x in reversed(c._nums):
            v = (v << bits) + x * f
        return v

    pa = [(pack_e(e), pack_c(c, da)) for e, c in A.items()]
    pb = [(pack_e(e), pack_c(c, db)) for e, c in B.items()]
    acc = {}
    get = acc.get
    for ka, va in pa:
        for kb, vb in pb:
            k = ka + kb
            acc[k] = get(k, 0) + va * vb

    den = da * db
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    ndig = 2 * phi - 1
    emask = (1 << ebits) - 1
    out = {}
    raw = CycloNumber._raw
    for k, v in acc.items():
        if not v:
            continue
        digits = []
        for _ in range(ndig):
            c = v & mask
            if c >= half:
                c -= full
            digits.append(c)
            v = (v - c) >> bits
        nums = _reduce(digits, order) if phi > 1 else digits
        if not any(nums):
            continue
        e = tuple((k >> s) & emask for s in shifts)
        out[e] = raw(order, nums, den)
    return out


# -- multi-indices ---------------------------------------------------------------

class MultiIndexSet(tuple):
    """Tuple of exponent tuples, sorted by |a| then graded-lex descending."""

    def __new__(cls, items):
        items = sorted({tuple(a) for a in items}, key=lambda a: (sum(a), tuple(-x for x in a)))
        return super().__new__(cls, items)


def weighted_monomials(weights, target, min_support=0, zero_prefix=0):
    """All a >= 0 with a.weights == target, |a| >= min_support, a_i = 0 for i < zero_prefix."""
    n = len(weights)
    out = []
    if target < 0:
        return MultiIndexSet(out)
    a = [0] * n

    def rec(i, rem):
        if i == n:
            if rem == 0 and sum(a) >= min_support:
                out.append(tuple(a))
            return
        if i < zero_prefix:
            a[i] = 0
            rec(i + 1, rem)
            return
        w = weights[i]
        for k in range(rem // w + 1):
            a[i] = k
            rec(i + 1, rem - k * w)
        a[i] = 0

    rec(0, target)
    return MultiIndexSet(out)


def multi_factorial(a):
    return prod(factorial(x) for x in a)


def support_size(a):
    return sum(1 for x in a if x)


# -- calculus and substitution -----------------------------------------------------

def partial_derivative(P: MultiPoly, a) -> MultiPoly:
    """d^|a| P / dz^a."""
    a = tuple(a)
    out = {}
    for e, c in P.terms.items():
        if all(x >= y for x, y in zip(e, a)):
            f = 1
            for x, y in zip(e, a):
                for k in range(y):
                    f *= x - k
            out[tuple(x - y for x, y in zip(e, a))] = c * f
    return MultiPoly._make(P.frame, out, P.order)


def diff(P, i, k=1):
    a = [0] * P.frame.nvars
    a[i] = k
    return partial_derivative(P, a)


def evaluate(P: MultiPoly, point):
    """P at a point; entries may be ints, Fractions or CycloNumbers."""
    n = P.order
    for x in point:
        if isinstance(x, CycloNumber):
            n = lcm(n, x.order)
    pt = [_as_cyclo(x, n).embed(n) if isinstance(x, CycloNumber) else rational(x, n) for x in point]
    zero = [not x for x in pt]
    powers = [[rational(1, n)] for _ in pt]
    total = rational(0, n)
    for e, c in P.terms.items():
        if any(z and k for z, k in zip(zero, e)):
            continue
        t = c if c.order == n else c.embed(n)
        for i, k in enumerate(e):
            if k:
                pw = powers[i]
                while len(pw) <= k:
                    pw.append(pw[-1] * pt[i])
                t = t * pw[k]
        total = total + t
    return total


def derivative_at(P, a, point):
    return evaluate(partial_derivative(P, a), point)


def compose(P: MultiPoly, subs) -> MultiPoly:
    """P(subs[0], ..., subs[n-1]); all substitutes share one frame."""
    if len(subs) != P.frame.nvars:
        raise FrameMismatch("need one substitute per variable")
    target = subs[0].frame
    n = lcm(P.order, *[s.order for s in subs])
    subs = [s.with_order(n) for s in subs]
    cache = [dict() for _ in subs]

    def power(i, k):
        c = cache[i]
        if k not in c:
            if k == 0:
                c[k] = MultiPoly.constant(target, 1, n)
            elif k == 1:
                c[k] = subs[i]
            else:
                h = k // 2
                c[k] = power(i, h) * power(i, k - h)
        return c[k]

    acc = {}
    for e, c in P.terms.items():
        m = MultiPoly.constant(target, c, n)
        for i, k in enumerate(e):
            if k:
                m = m * power(i, k)
        for ee, cc in m.terms.items():
            v = acc.get(ee)
            acc[ee] = cc if v is None else v + cc
    return MultiPoly._make(target, {e: c for e, c in acc.items() if c}, n)


def linear_substitution(P: MultiPoly, matrix_rows, frame: VarFrame) -> MultiPoly:
    """Substitute var_i -> sum_j matrix_rows[i][j] * w_j with w in ``frame``."""
    n = P.order
    subs = []
    for row in matrix_rows:
        subs.append(MultiPoly.linear(frame, row, n))
    return compose(P, subs)


def restrict(P: MultiPoly, i: int, value=0) -> MultiPoly:
    """Set variable i to a constant, keeping the frame."""
    out = {}
    v = None if value == 0 else _as_cyclo(value, P.order)
    for e, c in P.terms.items():
        if e[i] and v is None:
            continue
        k = e[i]
        ne = e[:i] + (0,) + e[i + 1:]
        t = c if k == 0 else c * v ** k
        s = out.get(ne)
        out[ne] = t if s is None else s + t
    return MultiPoly(P.frame, out, P.order)


def drop_variable(P: MultiPoly, i: int, frame: VarFrame) -> MultiPoly:
    """Remove variable i (its exponent must be zero everywhere)."""
    out = {}
    for e, c in P.terms.items():
        if e[i]:
            raise ValueError("variable still present")
        out[e[:i] + e[i + 1:]] = c
    return MultiPoly._make(frame, out, P.order)


def coefficient_in(P: MultiPoly, i: int, k: int) -> MultiPoly:
    """Coefficient of var_i^k, as a polynomial in the same frame (var_i absent)."""
    out = {}
    for e, c in P.terms.items():
        if e[i] == k:
            out[e[:i] + (0,) + e[i + 1:]] = c
    return MultiPoly._make(P.frame, out, P.order)


# -- exact division ------------------------------------------------------------------

def exact_divide(P: MultiPoly, Q: MultiPoly) -> MultiPoly:
    """Quotient R with P == Q*R, or InexactDivision."""
    if Q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = P._align(Q)
    n = a.order
    if len(b.terms) == 1:
        ((eq, cq),) = b.terms.items()
        inv = cq.inverse()
        out = {}
        for e, c in a.terms.items():
            d = tuple(x - y for x, y in zip(e, eq))
            if min(d) < 0:
                raise InexactDivision("monomial divisor does not divide")
            out[d] = c * inv
        return MultiPoly._make(a.frame, out, n)
    rem = dict(a.terms)
    lq = b.leading_exponent()
    lc_inv = b.terms[lq].inverse()
    qterms = [(e, c) for e, c in b.terms.items() if e != lq]
    heap = [(-sum(e), tuple(-x for x in e)) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        _, ne = heapq.heappop(heap)
        e = tuple(-x for x in ne)
        c = rem.pop(e, None)
        if c is None:
            continue
        d = tuple(x - y for x, y in zip(e, lq))
        if min(d) < 0:
            raise InexactDivision("leading term not divisible")
        f = c * lc_inv
        quot[d] = f
        for eb, cb in qterms:
            t = tuple(x + y for x, y in zip(d, eb))
            v = rem.get(t)
            w = f * cb
            if v is None:
                rem[t] = -w
                heapq.heappush(heap, (-sum(t), tuple(-x for x in t)))
            else:
                v = v - w
                if v:
                    rem[t] = v
                else:
                    del rem[t]
    return MultiPoly._make(a.frame, quot, n)


# -- serialization -------------------------------------------------------------------

def to_json(P: MultiPoly) -> dict:
    from .exactnum import to_json as cj
    return {
        "vars": list(P.frame.names),
        "weights": list(P.frame.weights) if P.frame.weights is not None else None,
        "order": P.order,
        "terms": [{"exp": list(e), "coeff": cj(c)} for e, c in P.sorted_terms()],
    }


def from_json(obj) -> MultiPoly:
    from .exactnum import from_json as cj
    frame = VarFrame(tuple(obj["vars"]), tuple(obj["weights"]) if obj.get("weights") else None)
    terms = {}
    for t in obj["terms"]:
        terms[tuple(int(x) for x in t["exp"])] = cj(t["coeff"])
    return MultiPoly(frame, terms, obj.get("order"))


def format_poly(P: MultiPoly, latex: bool = False) -> str:
    from .exactnum import format_cyclo
    if not P.terms:
        return "0"
    parts = []
    for e, c in P.sorted_terms():
        mono = []
        for name, k in zip(P.frame.names, e):
            if k == 0:
                continue
            nm = name
            if latex and nm[-1].isdigit():
                i = len(nm.rstrip("0123456789"))
                nm = f"{nm[:i]}_{{{nm[i:]}}}"
            if k == 1:
                mono.append(nm)
            else:
                mono.append(f"{nm}^{{{k}}}" if latex else f"{nm}^{k}")
        m = (" " if latex else "*").join(mono)
        cs = format_cyclo(c, latex)
        if not m:
            parts.append(cs)
        elif cs == "1":
            parts.append(m)
        elif cs == "-1":
            parts.append("-" + m)
        else:
            parts.append(f"{cs} {m}" if latex else f"{cs}*{m}")
    return " + ".join(parts).replace("+ -", "- ")
