"""Compatible and good basic invariants, and invariantization.

A basic invariant set x is *compatible* with graded coordinates z at q when
the Jacobian dx/dz is the identity at q, and *good* when in addition every
derivative d^a x^alpha/dz^a vanishes at q for a in I_alpha^(0), i.e.
a.d = d_alpha with |a| >= 2.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm

from .errors import NotInvariant, SingularBlock, NotCompatible, Inconsistent, Singular
from .exactnum import CycloNumber, rational
from .exactla import Matrix, inverse, solve_linear
from .polyring import (MultiPoly, VarFrame, weighted_monomials, multi_factorial,
                       partial_derivative, evaluate, linear_substitution)
from .groups import ReflectionGroup, BasicInvariantSet
from .triplets import AdmissibleTriplet, GradedFrame, find_admissible_triplet, graded_frame


# -- derivatives at a point ---------------------------------------------------------

def deriv_at(P: MultiPoly, a, q) -> CycloNumber:
    """d^a P / dz^a evaluated at q.

    When q is supported on the first coordinate only (always the case for
    graded coordinates, where z(q) = e_1) the value is read off the
    coefficients directly.
    """
    a = tuple(a)
    if all(not x for x in q[1:]):
        q1 = q[0]
        n = P.order
        if isinstance(q1, CycloNumber):
            n = lcm(n, q1.order)
        total = rational(0, n)
        if not q1:
            c = P.coefficient(a)
            return c * multi_factorial(a) if c else total
        tail = a[1:]
        for e, c in P.terms.items():
            if e[1:] != tail or e[0] < a[0]:
                continue
            f = 1
            for k in range(a[0]):
                f *= e[0] - k
            for x in tail:
                f *= factorial(x)
            t = c * f
            if e[0] > a[0]:
                t = t * q1 ** (e[0] - a[0])
            total = total + t
        return total
    return evaluate(partial_derivative(P, a), q)


def jacobian_at(polys, q):
    n = len(polys)
    rows = []
    for P in polys:
        row = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            row.append(deriv_at(P, e, q))
        rows.append(row)
    return Matrix(rows)


def index_set(degrees, alpha, k=0, min_support=2):
    """I_alpha^(k) = {a : a.d = d_alpha + k d_1, |a| >= 2}, sorted by |a| then graded-lex."""
    return weighted_monomials(degrees, degrees[alpha] + k * degrees[0], min_support=min_support)


def zero_index_set(degrees, target):
    """a in Z (no weight on the d_1-eigenspace) with a.d = target."""
    a_count = sum(1 for d in degrees if d == degrees[0])
    return weighted_monomials(degrees, target, zero_prefix=a_count)


# -- products of invariants ---------------------------------------------------------

class _PowerCache:
    """Memoised monomials x^b in the invariants (b built up one factor at a time)."""

    def __init__(self, polys):
        self.polys = list(polys)
        n = len(polys)
        one = MultiPoly.constant(polys[0].frame, 1, polys[0].order)
        self.memo = {(0,) * n: one}

    def __call__(self, b):
        b = tuple(b)
        hit = self.memo.get(b)
        if hit is not None:
            return hit
        i = max(range(len(b)), key=lambda j: b[j])
        prev = list(b)
        prev[i] -= 1
        out = self(tuple(prev)) * self.polys[i]
        self.memo[b] = out
        return out


def monomial_in(polys, b, cache=None):
    return (cache or _PowerCache(polys))(b)


# -- invariantization ---------------------------------------------------------------

class Invariantizer:
    """Writes invariant polynomials as polynomials in a fixed set of basic invariants.

    For each total degree D the products x^b with b.d = D are put into a
    row-echelon basis keyed by leading monomial (lex, which on homogeneous
    polynomials is graded-lex).  The basis is kept per degree, so repeated
    calls with many polynomials of one degree share the work.  For compatible
    invariants in graded coordinates the leading monomials are already
    distinct and no elimination is needed.
    """

    def __init__(self, polys, degrees, xframe: VarFrame | None = None):
        self.polys = list(polys)
        self.degrees = tuple(degrees)
        self.xframe = xframe or VarFrame.make("x", len(polys), degrees)
        self.order = polys[0].order
        self.powers = _PowerCache(self.polys)
        self._bases = {}

    def _basis(self, D):
        hit = self._bases.get(D)
        if hit is not None:
            return hit
        pivots = {}  # leading monomial -> (terms, combination)
        for b in weighted_monomials(self.degrees, D):
            terms = dict(self.powers(b).terms)
            comb = {b: rational(1, self.order)}
            while terms:
                lm = max(terms)
                piv = pivots.get(lm)
                if piv is None:
                    inv = terms[lm].inverse()
                    terms = {e: c * inv for e, c in terms.items()}
                    comb = {k: c * inv for k, c in comb.items()}
                    pivots[lm] = (terms, comb)
                    break
                f = terms[lm]
                _axpy(terms, piv[0], -f)
                _axpy(comb, piv[1], -f)
            else:
                raise SingularBlock(f"basic invariants are algebraically dependent in degree {D}")
        basis = sorted(pivots.items(), reverse=True)
        self._bases[D] = basis
        return basis

    def express(self, P: MultiPoly) -> MultiPoly:
        by_degree = {}
        for e, c in P.terms.items():
            by_degree.setdefault(sum(e), {})[e] = c
        n = lcm(self.order, P.order)
        out = {}
        for D, terms in by_degree.items():
            residual = {e: (c if c.order == n else c.embed(n)) for e, c in terms.items()}
            for lm, (pterms, comb) in self._basis(D):
                c = residual.get(lm)
                if c is None:
                    continue
                _axpy(residual, pterms, -c)
                _axpy(out, comb, c)
            if residual:
                raise NotInvariant(f"polynomial of degree {D} is not in the span of products of the invariants")
        return MultiPoly(self.xframe, out, n)


def _axpy(target: dict, src: dict, f):
    """target += f * src, dropping zeros."""
    for e, c in src.items():
        v = target.get(e)
        w = c * f
        if v is None:
            target[e] = w
        else:
            v = v + w
            if v:
                target[e] = v
            else:
                del target[e]


def express_in_basic(P: MultiPoly, x, degrees=None, xframe: VarFrame | None = None) -> MultiPoly:
    """The unique Q with Q(x(z)) = P(z); raises NotInvariant otherwise.

    ``x`` is a BasicInvariantSet, an Invariantizer, or a list of polynomials
    (then ``degrees`` is required).
    """
    if isinstance(x, Invariantizer):
        return x.express(P)
    if isinstance(x, BasicInvariantSet):
        degrees = x.degrees if degrees is None else degrees
        x = x.polys
    return Invariantizer(x, degrees, xframe).express(P)


# -- compatibility ------------------------------------------------------------------

def to_u_frame(x: BasicInvariantSet) -> BasicInvariantSet:
    """Rewrite invariants given in a frame w (u = Q w) back in the u-frame."""
    Q = x.to_ambient
    if Q.is_identity():
        return x
    n = Q.rows
    uframe = VarFrame.make("u", n)
    rows = inverse(Q).to_lists()
    polys = [linear_substitution(P, rows, uframe) for P in x.polys]
    return BasicInvariantSet(polys, x.degrees, uframe, Matrix.identity(n, Q.order), x.label)


def _as_z(x: BasicInvariantSet, frame: GradedFrame) -> BasicInvariantSet:
    if x.frame == frame.z_frame and x.to_ambient == frame.basis:
        return x
    return frame.invariants_in_z(to_u_frame(x))


def is_compatible(x: BasicInvariantSet, frame: GradedFrame, q=None) -> bool:
    x = _as_z(x, frame)
    q = frame.q_coords if q is None else q
    return jacobian_at(x.polys, q).is_identity()


def make_compatible(x: BasicInvariantSet, frame: GradedFrame, q=None) -> BasicInvariantSet:
    """Left-multiply x by the inverse of J(q), one equal-degree block at a time.

    Entries of J(q) between different degrees vanish, so the blockwise
    inverse is the full inverse.
    """
    x = _as_z(x, frame)
    q = frame.q_coords if q is None else q
    J = jacobian_at(x.polys, q)
    n = len(x.polys)
    deg = x.degrees
    for i in range(n):
        for j in range(n):
            if deg[i] != deg[j] and J[i, j]:
                raise NotCompatible(f"J(q)[{i},{j}] links different degrees")
    new = list(x.polys)
    for d in sorted(set(deg), reverse=True):
        idx = [i for i in range(n) if deg[i] == d]
        block = Matrix([[J[i, j] for j in idx] for i in idx])
        if block.is_identity():
            continue
        try:
            binv = inverse(block)
        except Singular:
            raise SingularBlock(f"Jacobian block for degree {d} is singular at q") from None
        for r, i in enumerate(idx):
            acc = MultiPoly.zero(x.frame, x.polys[0].order)
            for s, j in enumerate(idx):
                c = binv[r, s]
                if c:
                    acc = acc + x.polys[j] * c
            new[i] = acc
    return BasicInvariantSet(new, x.degrees, x.frame, x.to_ambient, (x.label + " compatible").strip())


# -- goodness -----------------------------------------------------------------------

@dataclass
class GoodInvariantRecord:
    x: BasicInvariantSet
    triplet_id: str
    corrections: dict            # (alpha, b) -> B_b^alpha
    compatible: BasicInvariantSet
    frame: GradedFrame | None = None

    @property
    def polys(self):
        return self.x.polys

    @property
    def degrees(self):
        return self.x.degrees

    @property
    def xframe(self):
        return VarFrame.make("x", len(self.x.polys), self.x.degrees)


@dataclass
class GoodCheck:
    ok: bool
    violations: list = field(default_factory=list)  # (alpha, a, value)

    def __bool__(self):
        return self.ok


def make_good(x_compat: BasicInvariantSet, frame: GradedFrame, q=None) -> GoodInvariantRecord:
    x = _as_z(x_compat, frame)
    q = frame.q_coords if q is None else q
    if not jacobian_at(x.polys, q).is_identity():
        raise NotCompatible("make_good needs invariants compatible at q")
    degrees = x.degrees
    cache = _PowerCache(x.polys)
    corrections = {}
    new = []
    for alpha, P in enumerate(x.polys):
        B = {}
        for a in index_set(degrees, alpha):
            s = deriv_at(P, a, q)
            for b, Bb in B.items():
                if sum(b) < sum(a):
                    v = deriv_at(cache(b), a, q)
                    if v:
                        s = s + Bb * v
            B[a] = -s / multi_factorial(a)
        y = P
        for b, Bb in B.items():
            if Bb:
                y = y + cache(b) * Bb
                corrections[(alpha, b)] = Bb
        new.append(y)
    good = BasicInvariantSet(new, x.degrees, x.frame, x.to_ambient, "good")
    return GoodInvariantRecord(good, frame.triplet.triplet_id, corrections, x, frame)


def check_good(x, frame: GradedFrame, q=None) -> GoodCheck:
    """Evaluate d^a x^alpha/dz^a(q) for all a in I_alpha^(0)."""
    if isinstance(x, GoodInvariantRecord):
        x = x.x
    x = _as_z(x, frame)
    q = frame.q_coords if q is None else q
    bad = []
    for alpha, P in enumerate(x.polys):
        for a in index_set(x.degrees, alpha):
            v = deriv_at(P, a, q)
            if v:
                bad.append((alpha, a, v))
    return GoodCheck(not bad, bad)


def _coeff_columns(polys):
    keys = sorted({e for P in polys for e in P.terms})
    return keys, [[P.coefficient(e) for e in keys] for P in polys]


def in_span(P: MultiPoly, basis) -> bool:
    keys = sorted({e for Q in list(basis) + [P] for e in Q.terms})
    if not basis:
        return P.is_zero()
    A = Matrix([[Q.coefficient(e) for Q in basis] for e in keys])
    try:
        solve_linear(A, [P.coefficient(e) for e in keys])
    except Inconsistent:
        return False
    return True


def span_equal(x: BasicInvariantSet, y: BasicInvariantSet) -> bool:
    """Each y^alpha lies in the span of the x^beta of the same degree, and conversely."""
    if x.degrees != y.degrees:
        return False
    for d in set(x.degrees):
        xs = [P for P, e in zip(x.polys, x.degrees) if e == d]
        ys = [P for P, e in zip(y.polys, y.degrees) if e == d]
        if not all(in_span(P, xs) for P in ys) or not all(in_span(P, ys) for P in xs):
            return False
    return True


# -- pipeline -----------------------------------------------------------------------

_PIPELINE = {}


def good_invariants(G: ReflectionGroup, zeta_exp=None, search=False, triplet: AdmissibleTriplet | None = None):
    """catalog invariants -> graded coordinates -> compatible -> good."""
    key = (G.name, zeta_exp, search) if triplet is None else None
    if key is not None and key in _PIPELINE:
        return _PIPELINE[key]
    T = triplet or find_admissible_triplet(G, zeta_exp=zeta_exp, search=search)
    frame = graded_frame(G, T)
    xz = frame.invariants_in_z(G.invariants)
    rec = make_good(make_compatible(xz, frame), frame)
    if key is not None:
        _PIPELINE[key] = rec
    return rec
