"""Finite complex reflection groups given by explicit generators.

The catalog holds the rank-2 exceptional groups G5, G6, G12, G13, G22, the
families G(m,m,n) and G(m,1,n), G(m,p,n) for 1<p<m, and a data-only G15.
Each catalog entry carries exact generators, degrees in the family's index
convention (d_1 is always the largest), basic invariants in the standard
coordinates u, and a stored admissible triplet where one is known.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm, prod, gcd
import re

from .errors import (DomainError, GroupTooLarge, UnknownGroup, FactorizationFailed,
                     NotInvariant, ConsistencyFailure)
from .exactnum import CycloNumber, rational, root_of_unity, sqrt_rational, imag_unit
from .exactla import Matrix, rank, kernel, det_generic
from .polyring import MultiPoly, VarFrame, compose, exact_divide, diff, linear_substitution

DEFAULT_CAP = 10000


@dataclass
class Hyperplane:
    normal: tuple        # covector l with H = ker l, first nonzero entry 1
    order: int           # e(H): order of the pointwise stabiliser
    form: MultiPoly      # l as a linear polynomial in u


@dataclass
class BasicInvariantSet:
    """Basic invariants written in some coordinate frame w.

    ``to_ambient`` is the matrix Q with u = Q w (identity for the u-frame).
    """
    polys: list
    degrees: tuple
    frame: VarFrame
    to_ambient: Matrix
    label: str = ""

    def __len__(self):
        return len(self.polys)


@dataclass
class CatalogTriplet:
    g: Matrix
    zeta_power: int          # zeta = zeta_{d1} ** zeta_power
    basis: list              # eigenbasis columns q_1..q_n (q_1 = q)
    note: str = ""

    @property
    def q(self):
        return self.basis[0]


class ReflectionGroup:
    def __init__(self, name, dim, field_order, generators, degrees, codegrees,
                 invariants=None, *, triplet=None, duality=None, coxeter=False,
                 group_order=None, verified=True, notes=None, invariant_builder=None):
        self.name = name
        self.dim = dim
        self.field_order = field_order
        self.generators = [g.with_order(field_order) for g in generators] if generators else []
        self.degrees = tuple(degrees)
        self.codegrees = tuple(codegrees)
        self._invariants = invariants
        self._invariant_builder = invariant_builder
        self.triplet = triplet
        self.coxeter = coxeter
        self.expected_order = group_order if group_order is not None else prod(self.degrees)
        self.verified = verified
        self.notes = list(notes or [])
        d1 = max(self.degrees)
        if duality is None:
            duality = sorted(self.degrees) == sorted(d1 - c for c in self.codegrees)
        self.duality = duality
        self.ambient_frame = VarFrame.make("u", dim)
        self._elements = None
        self._reflections = None
        self._hyperplanes = None

    def __repr__(self):
        return f"ReflectionGroup({self.name})"

    @property
    def data_only(self):
        return not self.generators

    @property
    def d1(self):
        return self.degrees[0]

    @property
    def invariants(self) -> BasicInvariantSet:
        if self._invariants is None and self._invariant_builder is not None:
            self._invariants = self._invariant_builder(self)
        if self._invariants is None:
            raise DomainError(f"{self.name}: no basic invariants available")
        return self._invariants

    # -- enumeration -------------------------------------------------------
    def elements(self, cap=DEFAULT_CAP):
        if self._elements is None:
            self._elements = enumerate_group(self, cap)
        return self._elements

    def order(self, cap=DEFAULT_CAP):
        if self.data_only:
            return self.expected_order
        return len(self.elements(cap))


def enumerate_group(G: ReflectionGroup, cap=DEFAULT_CAP):
    """Breadth-first closure of the generators, identity first."""
    if G.data_only:
        raise DomainError(f"{G.name} has no generator data")
    e = Matrix.identity(G.dim, G.field_order)
    seen = {e: 0}
    out = [e]
    queue = deque([e])
    while queue:
        h = queue.popleft()
        for s in G.generators:
            k = h * s
            if k not in seen:
                if len(out) >= cap:
                    raise GroupTooLarge(f"{G.name}: more than {cap} elements")
                seen[k] = len(out)
                out.append(k)
                queue.append(k)
    return out


def is_reflection(g: Matrix) -> bool:
    return rank(g - Matrix.identity(g.rows, g.order)) == 1


def reflections(G: ReflectionGroup, cap=DEFAULT_CAP):
    if G._reflections is None:
        G._reflections = [g for g in G.elements(cap) if is_reflection(g)]
    return G._reflections


def _normal_of(g: Matrix):
    m = g - Matrix.identity(g.rows, g.order)
    for r in m.data:
        if any(r):
            piv = next(x for x in r if x)
            inv = piv.inverse()
            return tuple(x * inv for x in r)
    raise ValueError("identity has no reflecting hyperplane")


def hyperplanes(G: ReflectionGroup, cap=DEFAULT_CAP):
    """Reflecting hyperplanes with their orders e(H)."""
    if G._hyperplanes is None:
        counts = {}
        for s in reflections(G, cap):
            ell = _normal_of(s)
            counts[ell] = counts.get(ell, 0) + 1
        out = []
        for ell, c in counts.items():
            out.append(Hyperplane(ell, c + 1, MultiPoly.linear(G.ambient_frame, ell, G.field_order)))
        G._hyperplanes = out
    return G._hyperplanes


def is_regular_vector(G: ReflectionGroup, v) -> bool:
    for H in hyperplanes(G):
        s = rational(0, G.field_order)
        for a, b in zip(H.normal, v):
            s = s + a * b
        if not s:
            return False
    return True


def regularity_counts(degrees, codegrees, d):
    """(a(d), b(d)): how many degrees / codegrees d divides."""
    a = sum(1 for x in degrees if x % d == 0)
    b = sum(1 for x in codegrees if x % d == 0)
    return a, b


def group_regularity_counts(G: ReflectionGroup, d=None):
    return regularity_counts(G.degrees, G.codegrees, G.d1 if d is None else d)


# -- invariant theory oracles ---------------------------------------------------------

def act(g: Matrix, F: MultiPoly, frame_matrix: Matrix | None = None) -> MultiPoly:
    """(g^-1)^* F, i.e. the polynomial v -> F(g v) used by the Reynolds sum.

    With ``frame_matrix`` Q (u = Q w) the action is conjugated into the w-frame.
    """
    if frame_matrix is not None:
        from .exactla import inverse
        g = inverse(frame_matrix) * g * frame_matrix
    return linear_substitution(F, g.to_lists(), F.frame)


def reynolds(G: ReflectionGroup, F: MultiPoly, frame_matrix=None) -> MultiPoly:
    acc = MultiPoly.zero(F.frame, F.order)
    els = G.elements()
    for g in els:
        acc = acc + act(g, F, frame_matrix)
    return acc * Fraction(1, len(els))


def is_invariant(G: ReflectionGroup, F: MultiPoly, frame_matrix=None) -> bool:
    return all(act(s, F, frame_matrix) == F for s in G.generators)


def _elementary_from_traces(p, n, order):
    # Newton identities: e_k from power sums p_1..p_n
    e = [rational(1, order)]
    for k in range(1, n + 1):
        s = rational(0, order)
        for i in range(1, k + 1):
            t = e[k - i] * p[i - 1]
            s = s + t if i % 2 == 1 else s - t
        e.append(s * Fraction(1, k))
    return e


def molien_series(G: ReflectionGroup, length):
    """First ``length`` coefficients of the Molien series (rational ints)."""
    n = G.dim
    N = G.field_order
    total = [rational(0, N) for _ in range(length)]
    for g in G.elements():
        p = []
        h = g
        for k in range(n):
            p.append(reduce(lambda a, b: a + b, (h[i, i] for i in range(n))))
            if k < n - 1:
                h = h * g
        e = _elementary_from_traces(p, n, N)
        # 1/det(1 - t g) = sum h_k t^k with h_k = sum_i (-1)^(i-1) e_i h_{k-i}
        hs = [rational(1, N)]
        for k in range(1, length):
            s = rational(0, N)
            for i in range(1, min(k, n) + 1):
                t = e[i] * hs[k - i]
                s = s + t if i % 2 == 1 else s - t
            hs.append(s)
        total = [a + b for a, b in zip(total, hs)]
    size = len(G.elements())
    out = []
    for c in total:
        c = c * Fraction(1, size)
        if not c.is_rational() or c.to_fraction().denominator != 1:
            raise FactorizationFailed("Molien coefficient is not an integer")
        out.append(int(c.to_fraction()))
    return out


def molien_degrees(G: ReflectionGroup):
    """Degrees read off the Molien series as prod (1 - t^d)^-1."""
    length = sum(G.degrees) + 2
    series = molien_series(G, length)
    found = []
    s = list(series)
    for k in range(1, length):
        while s[k] > 0 and len(found) < G.dim:
            found.append(k)
            # multiply by (1 - t^k)
            s = [s[j] - (s[j - k] if j >= k else 0) for j in range(length)]
        if s[k] < 0:
            raise FactorizationFailed(f"negative coefficient at t^{k}")
    if len(found) != G.dim or any(s[1:]):
        raise FactorizationFailed("Molien series is not a product of (1 - t^d)^-1")
    return sorted(found, reverse=True)


def jacobian(polys, frame=None):
    n = len(polys)
    return [[diff(P, j) for j in range(n)] for P in polys]


def jacobian_det(polys):
    J = jacobian(polys)
    zero = MultiPoly.zero(polys[0].frame, polys[0].order)
    return det_generic(J, zero)


def hyperplane_forms(G, frame_matrix: Matrix | None, frame: VarFrame):
    """(L_H, e_H) with L_H written in the frame w where u = Q w."""
    out = []
    for H in hyperplanes(G):
        ell = H.normal
        if frame_matrix is not None:
            ell = tuple(sum((ell[i] * frame_matrix[i, j] for i in range(G.dim)), rational(0, G.field_order))
                        for j in range(G.dim))
        out.append((MultiPoly.linear(frame, ell, G.field_order), H.order))
    return out


def jacobian_constant(G: ReflectionGroup, x: BasicInvariantSet):
    """c with det(dx/dw) = c * prod L_H^(e_H - 1); the constant is recorded, not normalised."""
    detj = jacobian_det(x.polys)
    prodL = MultiPoly.constant(x.frame, 1, G.field_order)
    for L, e in hyperplane_forms(G, x.to_ambient, x.frame):
        prodL = prodL * L ** (e - 1)
    q = exact_divide(detj, prodL)
    if q.degree() > 0:
        raise ConsistencyFailure("Jacobian quotient is not constant")
    return q.coefficient((0,) * G.dim)


def discriminant_in_frame(G, x: BasicInvariantSet) -> MultiPoly:
    acc = MultiPoly.constant(x.frame, 1, G.field_order)
    for L, e in hyperplane_forms(G, x.to_ambient, x.frame):
        acc = acc * L ** e
    return acc


def discriminant(G: ReflectionGroup, x: BasicInvariantSet, xframe: VarFrame | None = None):
    """Delta = prod L_H^e_H, normalised so its (x^1)^n coefficient is 1.

    Returns (Delta in the w-frame, Delta in the x-frame).
    """
    from .goodinv import express_in_basic
    dz = discriminant_in_frame(G, x)
    xframe = xframe or VarFrame.make("x", len(x.polys), x.degrees)
    dx = express_in_basic(dz, x.polys, x.degrees, xframe)
    lead = [0] * len(x.polys)
    lead[0] = len(x.polys)
    c = dx.coefficient(lead)
    if not c:
        raise ConsistencyFailure("discriminant has no (x^1)^n term")
    inv = c.inverse()
    return dz * inv, dx * inv


# -- catalog ---------------------------------------------------------------------------

def _elem_sym(vals, k, frame, order):
    one = MultiPoly.constant(frame, 1, order)
    if k == 0:
        return one
    acc = MultiPoly.zero(frame, order)
    for idx in combinations(range(len(vals)), k):
        t = one
        for i in idx:
            t = t * vals[i]
        acc = acc + t
    return acc


def _swap(n, i, order):
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i], rows[i + 1] = rows[i + 1], rows[i]
    return Matrix(rows, order)


def _sqrt_conductor(k):
    # smallest N with sqrt(k) in Q(zeta_N), k a positive integer
    free = 1
    f = k
    p = 2
    while p * p <= f:
        while f % (p * p) == 0:
            f //= p * p
        if f % p == 0:
            free *= p
            f //= p
        p += 1
    free *= f
    if free == 1:
        return 1
    return free if free % 4 == 1 else 4 * free


def _u_invariant_set(G, polys, label):
    n = G.dim
    return BasicInvariantSet(polys, G.degrees, G.ambient_frame, Matrix.identity(n, G.field_order), label)


def _g5_family_forms(frame, N):
    u1, u2 = MultiPoly.var(frame, 0, N), MultiPoly.var(frame, 1, N)
    i3 = imag_unit(N) * sqrt_rational(3, N)
    fT = u1 ** 4 + u1 ** 2 * u2 ** 2 * (2 * i3) + u2 ** 4
    tT = u1 ** 5 * u2 - u1 * u2 ** 5
    return fT, tT


def _r1(N):
    i, w = imag_unit(N), root_of_unity(3, N)
    h = w * Fraction(1, 2)
    return Matrix([[h * (-1 - i), h * (1 - i)], [h * (-1 - i), h * (-1 + i)]], N)


def _g5():
    N = 24
    i, w = imag_unit(N), root_of_unity(3, N)
    h = w * Fraction(1, 2)
    r1 = _r1(N)
    r2p = Matrix([[h * (-1 + i), h * (1 - i)], [h * (-1 - i), h * (-1 - i)]], N)
    from .exactla import inverse
    g = inverse(r2p * r1)
    s = sqrt_rational(Fraction(1, 2), N)
    basis = [(s, s), (-s, s)]
    G = ReflectionGroup("G5", 2, N, [r1, r2p], (12, 6), (0, 6), group_order=72,
                        triplet=CatalogTriplet(g, 1, basis))
    fT, tT = _g5_family_forms(G.ambient_frame, N)
    G._invariants = _u_invariant_set(G, [fT ** 3, tT], "(f_T^3, t_T)")
    return G


def g6_basis_scale():
    """The stored G6 eigenbasis is the catalog one divided by sqrt(3+sqrt(3))."""
    return "sqrt(3+sqrt(3))"


def _g6():
    N = 24
    i = imag_unit(N)
    s3, s6 = sqrt_rational(3, N), sqrt_rational(6, N)
    r = Matrix([[1, 0], [0, -1]], N)
    r1 = _r1(N)
    from .exactla import inverse
    g = inverse(r1 * r)
    # eigenvectors with the non-cyclotomic common factor sqrt(3+sqrt(3)) removed
    p1 = ((1 - i) / (2 * s3), (3 - s3) * Fraction(1, 6))
    p2 = ((-1 + i) * (3 - s3) / (2 * s3 * s6), 1 / s6)
    G = ReflectionGroup("G6", 2, N, [r, r1], (12, 4), (0, 8), group_order=48,
                        triplet=CatalogTriplet(g, 1, [p1, p2], note="basis scaled by 1/" + g6_basis_scale()))
    fT, tT = _g5_family_forms(G.ambient_frame, N)
    G._invariants = _u_invariant_set(G, [tT ** 2, fT], "(t_T^2, f_T)")
    return G


def _rank2_std(N):
    r = Matrix([[1, 0], [0, -1]], N)
    rp = Matrix([[0, 1], [1, 0]], N)
    if N % 8:
        return None, None, None, r, rp
    s = sqrt_rational(Fraction(1, 2), N)
    i = imag_unit(N)
    r3 = Matrix([[s, -s], [-s, -s]], N)
    r3p = Matrix([[s, s], [s, -s]], N)
    r3pp = Matrix([[0, s * (1 + i)], [s * (1 - i), 0]], N)
    return r3, r3p, r3pp, r, rp


def _reynolds_basic(G):
    """Basic invariants from Reynolds images of monomials, one per degree."""
    frame = G.ambient_frame
    N = G.field_order
    polys = []
    for d in G.degrees:
        for a in range(d, -1, -1):
            F = reynolds(G, MultiPoly.monomial(frame, (a, d - a), 1, N))
            if F:
                lead = F.sorted_terms()[0][1]
                polys.append(F * lead.inverse())
                break
    if not jacobian_det(polys):
        raise ConsistencyFailure("Reynolds images are algebraically dependent")
    return _u_invariant_set(G, polys, "Reynolds images")


def _eigvec_basis(g, zeta, degrees, q):
    # q first, then one eigenvector per remaining degree
    basis = [q]
    for d in degrees[1:]:
        lam = zeta ** (1 - d)
        basis.append(kernel(g - Matrix.identity(g.rows, g.order).scale(lam))[0])
    return basis


def _g12():
    N = 8
    r3, r3p, r3pp, _, _ = _rank2_std(N)
    g = r3pp * r3p * r3
    zeta = root_of_unity(8, N)
    basis = _eigvec_basis(g, zeta, (8, 6), (rational(1, N), rational(0, N)))
    return ReflectionGroup("G12", 2, N, [r3, r3p, r3pp], (8, 6), (0, 10), group_order=48,
                           triplet=CatalogTriplet(g, 1, basis), duality=False,
                           invariant_builder=_reynolds_basic)


def _g13():
    N = 24
    r3, _, r3pp, r, _ = _rank2_std(N)
    g = r * r3 * r3pp
    zeta = root_of_unity(12, N)
    i, s3 = imag_unit(N), sqrt_rational(3, N)
    q = ((1 + i) * (s3 - 1) * Fraction(1, 2), rational(1, N))
    basis = _eigvec_basis(g, zeta, (12, 8), q)
    return ReflectionGroup("G13", 2, N, [r, r3, r3pp], (12, 8), (0, 16), group_order=96,
                           triplet=CatalogTriplet(g, 1, basis, note="q stored without its 1/sqrt(3-sqrt(3)) factor"),
                           duality=False, invariant_builder=_reynolds_basic)


def _g22():
    N = 20
    _, _, _, r, rp = _rank2_std(N)
    i = imag_unit(N)
    c = (root_of_unity(5, N) + root_of_unity(5, N, -1)) * Fraction(1, 2)  # cos(2 pi/5)
    h = Fraction(1, 2)
    rpp = Matrix([[c + h, i * c + h], [h - i * c, -h - c]], N)
    g = rpp * rp * r
    zeta = root_of_unity(20, N)
    s5 = sqrt_rational(5, N)
    # sqrt(10 + 2 sqrt 5) = 4 cos(pi/10); with the minus sign under the root
    # the vector is not a zeta-eigenvector of g
    z20 = root_of_unity(20, N)
    root = (z20 + z20.inverse()) * 2
    q = (-(2 + root) / (s5 + 1), rational(1, N))
    basis = _eigvec_basis(g, zeta, (20, 12), q)
    return ReflectionGroup("G22", 2, N, [r, rp, rpp], (20, 12), (0, 28), group_order=240,
                           triplet=CatalogTriplet(g, 1, basis, note="q stored without its normalising factor; sqrt(10+2sqrt5) in the first entry"),
                           duality=False, invariant_builder=_reynolds_basic)


def _g15():
    return ReflectionGroup("G15", 2, 1, [], (24, 12), (0, 24), group_order=288, duality=False,
                           notes=["data-only entry: degrees and codegrees, no generators"])


def gmmn(m: int, dim: int):
    """G(m,m,dim) with dim = n+1 >= 2."""
    if m < 2 or dim < 2:
        raise UnknownGroup("G(m,m,n) needs m >= 2 and n >= 2")
    n = dim - 1
    N = lcm(n * m, _sqrt_conductor(n))
    z = root_of_unity(n * m, N)
    gens = [_swap(dim, i, N) for i in range(n)]
    rows = [[0] * dim for _ in range(dim)]
    rows[0][1] = z ** (-n)
    rows[1][0] = z ** n
    for k in range(2, dim):
        rows[k][k] = 1
    s = Matrix(rows, N)
    gens.append(s)
    degrees = tuple((n + 1 - i) * m for i in range(1, n + 1)) + (n + 1,)
    d1 = n * m
    codegrees = tuple(d1 - d for d in degrees)
    # g = (r_{n-1}..r_1)(r_n..r_1) s (r_2..r_n)
    r = gens[:n]
    one = Matrix.identity(dim, N)
    left = reduce(lambda a, b: a * b, [r[k] for k in range(n - 2, -1, -1)], one)
    mid = reduce(lambda a, b: a * b, [r[k] for k in range(n - 1, -1, -1)], one)
    right = reduce(lambda a, b: a * b, [r[k] for k in range(1, n)], one)
    g = left * mid * s * right
    inv_sqrt_n = 1 / sqrt_rational(n, N)
    basis = []
    for i in range(1, n + 1):
        lam = z ** (1 + (i - 1) * m)
        basis.append(tuple([lam ** k * inv_sqrt_n for k in range(n)] + [rational(0, N)]))
    basis.append(tuple([rational(0, N)] * n + [rational(1, N)]))
    G = ReflectionGroup(f"G({m},{m},{dim})", dim, N, gens, degrees, codegrees,
                        triplet=CatalogTriplet(g, 1, basis), duality=True,
                        coxeter=(m == 2 or dim == 2), group_order=m ** n * prod(range(1, dim + 1)))
    G.family = ("mmn", m, dim)
    frame = G.ambient_frame
    us = [MultiPoly.var(frame, k, N) for k in range(dim)]
    um = [u ** m for u in us]
    sig = [_elem_sym(um, n + 1 - i, frame, N) for i in range(1, n + 1)]
    sig.append(reduce(lambda a, b: a * b, us))
    G._invariants = _u_invariant_set(G, sig, "sigma")
    return G


def gm1n(m: int, n: int):
    if m < 2 or n < 2:
        raise UnknownGroup("G(m,1,n) needs m >= 2 and n >= 2")
    N = lcm(n * m, _sqrt_conductor(n))
    z = root_of_unity(n * m, N)
    gens = [_swap(n, i, N) for i in range(n - 1)]
    t = Matrix.diag([z ** n] + [1] * (n - 1), N)
    gens.append(t)
    degrees = tuple((n + 1 - i) * m for i in range(1, n + 1))
    codegrees = tuple(degrees[0] - d for d in degrees)
    one = Matrix.identity(n, N)
    g = reduce(lambda a, b: a * b, [gens[k] for k in range(n - 2, -1, -1)], one) * t
    inv_sqrt_n = 1 / sqrt_rational(n, N)
    basis = []
    for i in range(1, n + 1):
        lam = z ** (1 + (i - 1) * m)
        basis.append(tuple(lam ** k * inv_sqrt_n for k in range(n)))
    G = ReflectionGroup(f"G({m},1,{n})", n, N, gens, degrees, codegrees,
                        triplet=CatalogTriplet(g, 1, basis), duality=True, coxeter=(m == 2),
                        group_order=m ** n * prod(range(1, n + 1)))
    G.family = ("m1n", m, n)
    frame = G.ambient_frame
    us = [MultiPoly.var(frame, k, N) for k in range(n)]
    um = [u ** m for u in us]
    sig = [_elem_sym(um, n + 1 - i, frame, N) for i in range(1, n + 1)]
    G._invariants = _u_invariant_set(G, sig, "sigma_bar")
    return G


def gmpn(m: int, p: int, n: int):
    """G(m,p,n) for 1 < p < m, p | m.  Used for the regularity-count checks."""
    if not (1 < p < m and m % p == 0 and n >= 2):
        raise UnknownGroup("G(m,p,n) needs 1 < p < m, p | m, n >= 2")
    N = m
    zm = root_of_unity(m, N)
    gens = [_swap(n, i, N) for i in range(n - 1)]
    rows = [[0] * n for _ in range(n)]
    rows[0][1] = zm ** (-1)
    rows[1][0] = zm
    for k in range(2, n):
        rows[k][k] = 1
    gens.append(Matrix(rows, N))
    gens.append(Matrix.diag([zm ** p] + [1] * (n - 1), N))
    degrees = sorted([k * m for k in range(1, n)] + [n * m // p], reverse=True)
    codegrees = tuple(k * m for k in range(n))
    G = ReflectionGroup(f"G({m},{p},{n})", n, N, gens, degrees, codegrees, duality=False,
                        group_order=m ** n * prod(range(1, n + 1)) // p)
    G.family = ("mpn", m, p, n)
    frame = G.ambient_frame
    us = [MultiPoly.var(frame, k, N) for k in range(n)]
    um = [u ** m for u in us]
    inv = [_elem_sym(um, k, frame, N) for k in range(1, n)]
    inv.append(reduce(lambda a, b: a * b, us) ** (m // p))
    inv.sort(key=lambda P: -P.degree())
    G._invariants = _u_invariant_set(G, inv, "e_k(u^m), (u_1...u_n)^(m/p)")
    return G


_EXCEPTIONAL = {"G5": _g5, "G6": _g6, "G12": _g12, "G13": _g13, "G22": _g22, "G15": _g15}
_CACHE = {}

_FAMILY = re.compile(r"^G\((\d+),(\d+),(\d+)\)$")


def canonical_name(name: str) -> str:
    s = name.replace(" ", "").replace("_", "")
    if s[:1] == "g":
        s = "G" + s[1:]
    return s


def catalog_group(name: str, *params) -> ReflectionGroup:
    """Catalog lookup: 'G5', 'G(3,3,4)', or ('G(m,m,n)', m, n) style."""
    if params:
        name = "G(" + ",".join(str(int(p)) for p in params) + ")"
    key = canonical_name(name)
    if key in _CACHE:
        return _CACHE[key]
    if key in _EXCEPTIONAL:
        G = _EXCEPTIONAL[key]()
    else:
        mt = _FAMILY.match(key)
        if not mt:
            raise UnknownGroup(f"unknown group {name!r}")
        m, p, n = (int(v) for v in mt.groups())
        if p == m:
            G = gmmn(m, n)
        elif p == 1:
            G = gm1n(m, n)
        else:
            G = gmpn(m, p, n)
    _CACHE[key] = G
    return G


def list_groups():
    return ["G5", "G6", "G12", "G13", "G15", "G22", "G(m,m,n)", "G(m,1,n)", "G(m,p,n)"]


def custom_group(name, generators, degrees, codegrees, invariants=None):
    """Non-catalog group: accepted, but flagged unverified until checks pass."""
    N = reduce(lcm, (g.order for g in generators), 1)
    G = ReflectionGroup(name, generators[0].rows, N, generators, degrees, codegrees, verified=False)
    if invariants is not None:
        G._invariants = _u_invariant_set(G, invariants, "user")
    return G


def verify_group(G: ReflectionGroup):
    """Cross-checks of catalog data against enumeration; returns a dict of results."""
    els = G.elements()
    refl = reflections(G)
    hyp = hyperplanes(G)
    res = {
        "order": len(els) == prod(G.degrees),
        "reflections": len(refl) == sum(d - 1 for d in G.degrees),
        "hyperplane_count": sum(H.order - 1 for H in hyp) == len(refl),
        "codegree_sum": sum(c + 1 for c in G.codegrees) == len(hyp),
        "molien": molien_degrees(G) == sorted(G.degrees, reverse=True),
        "invariants": all(is_invariant(G, P) for P in G.invariants.polys),
    }
    if all(res.values()):
        G.verified = True
    return res
