"""Admissible triplets (g, zeta, q) and the graded coordinates they induce."""

from dataclasses import dataclass, field
from math import gcd
from itertools import product as iproduct

from .errors import NoAdmissibleTriplet, InvalidZeta, TripletCheckFailed, DomainError
from .exactnum import CycloNumber, rational, root_of_unity
from .exactla import Matrix, kernel, inverse, rank, matrix_order
from .polyring import MultiPoly, VarFrame, linear_substitution
from .groups import (ReflectionGroup, BasicInvariantSet, group_regularity_counts,
                     is_regular_vector, DEFAULT_CAP)


class EigenvalueMultisetMismatch(DomainError):
    pass


class SearchExhausted(DomainError):
    pass


@dataclass
class AdmissibleTriplet:
    g: Matrix
    zeta: CycloNumber
    zeta_power: int          # zeta = zeta_{d1}^zeta_power
    q: tuple
    source: str              # "catalog" or "search"
    triplet_id: str
    d1: int
    basis: list | None = None  # catalog eigenbasis, when stored

    def describe(self):
        return f"{self.triplet_id}: zeta = zeta_{self.d1}^{self.zeta_power}"


@dataclass
class GradedFrame:
    basis: Matrix            # columns q_1..q_n
    dual: Matrix             # rows are the coordinate functionals z^alpha in u
    z_frame: VarFrame
    degrees: tuple
    triplet: AdmissibleTriplet

    @property
    def n(self):
        return self.basis.cols

    @property
    def q_coords(self):
        """z(q); equals e_1 because q is the first basis vector."""
        return self.dual.apply(self.triplet.q)

    def to_z(self, P: MultiPoly) -> MultiPoly:
        """Rewrite a u-polynomial in the graded coordinates (u = basis * z)."""
        return linear_substitution(P, self.basis.to_lists(), self.z_frame)

    def invariants_in_z(self, x: BasicInvariantSet) -> BasicInvariantSet:
        polys = [self.to_z(P) for P in x.polys]
        return BasicInvariantSet(polys, x.degrees, self.z_frame, self.basis, x.label + " in z")


def _zeta(d1, k, order):
    return root_of_unity(d1, order, k)


def find_admissible_triplet(G: ReflectionGroup, zeta_exp: int | None = None,
                            search: bool = False, cap: int = DEFAULT_CAP) -> AdmissibleTriplet:
    d1 = G.d1
    a, b = group_regularity_counts(G)
    if a != b:
        raise NoAdmissibleTriplet(f"{G.name}: a(d1)={a} != b(d1)={b}; no d1-regular element", a, b)
    if zeta_exp is not None and gcd(zeta_exp, d1) != 1:
        raise InvalidZeta(f"zeta exponent {zeta_exp} is not coprime to d1={d1}")
    N = G.field_order
    if not search and G.triplet is not None:
        T = G.triplet
        k = T.zeta_power if zeta_exp is None else zeta_exp % d1
        # g^j q = zeta_{d1}^(p j) q, so j = k / p mod d1 moves the eigenvalue to zeta^k
        j = (k * pow(T.zeta_power, -1, d1)) % d1
        g = T.g if j == 1 else T.g ** j
        return AdmissibleTriplet(g, _zeta(d1, k, N), k, tuple(T.q), "catalog",
                                 f"{G.name}:catalog:k={k}", d1, list(T.basis))
    k = 1 if zeta_exp is None else zeta_exp % d1
    zeta = _zeta(d1, k, N)
    ident = Matrix.identity(G.dim, N)
    for g in G.elements(cap):
        if not (g ** d1).is_identity():
            continue
        V = kernel(g - ident.scale(zeta))
        if not V:
            continue
        q = _regular_in_span(G, V)
        if q is None:
            continue
        if matrix_order(g, d1) != d1:
            continue
        return AdmissibleTriplet(g, zeta, k, q, "search", f"{G.name}:search:k={k}", d1)
    raise SearchExhausted(f"{G.name}: no zeta-regular element found")


def _regular_in_span(G, V):
    N = G.field_order
    n = G.dim
    ranges = [range(0, 3)] * len(V)
    for coeffs in iproduct(*ranges):
        if not any(coeffs):
            continue
        v = [rational(0, N)] * n
        for c, vec in zip(coeffs, V):
            if c:
                v = [x + y * c for x, y in zip(v, vec)]
        if is_regular_vector(G, v):
            piv = next(x for x in v if x)
            inv = piv.inverse()
            return tuple(x * inv for x in v)
    return None


def _complete_basis(first, vectors):
    """first, then vectors that keep the family independent."""
    out = list(first)
    for v in vectors:
        if rank(Matrix.from_columns(out + [v])) == len(out) + 1:
            out.append(v)
    return out


def graded_frame(G: ReflectionGroup, T: AdmissibleTriplet) -> GradedFrame:
    n = G.dim
    N = G.field_order
    ident = Matrix.identity(n, N)
    degrees = G.degrees
    zeta = T.zeta
    if T.basis is not None:
        basis = list(T.basis)
    else:
        basis = [None] * n
        for d in sorted(set(degrees), key=degrees.index):
            cols = [i for i, x in enumerate(degrees) if x == d]
            V = kernel(T.g - ident.scale(zeta ** (1 - d)))
            if len(V) != len(cols):
                raise EigenvalueMultisetMismatch(
                    f"eigenspace of zeta^{1 - d} has dim {len(V)}, expected {len(cols)}")
            if d == degrees[0]:
                V = _complete_basis([T.q], V)
            for i, v in zip(cols, V):
                basis[i] = tuple(v)
    Q = Matrix.from_columns(basis, N)
    for col, d in zip(basis, degrees):
        if T.g.apply(col) != tuple(x * zeta ** (1 - d) for x in col):
            raise EigenvalueMultisetMismatch(f"basis column is not a zeta^{1 - d} eigenvector")
    for d in set(degrees):
        dim = len(kernel(T.g - ident.scale(zeta ** (1 - d))))
        if dim != sum(1 for e in degrees if (zeta ** (1 - e)) == zeta ** (1 - d)):
            raise EigenvalueMultisetMismatch("eigenvalue multiplicities differ from the degrees")
    frame = VarFrame.make("z", n, degrees)
    return GradedFrame(Q, inverse(Q), frame, tuple(degrees), T)


def conjugate_triplet(T: AdmissibleTriplet, h: Matrix) -> AdmissibleTriplet:
    """(h g h^-1, zeta, h q); the stored basis is moved along with q."""
    hinv = inverse(h)
    basis = [h.apply(v) for v in T.basis] if T.basis is not None else None
    return AdmissibleTriplet(h * T.g * hinv, T.zeta, T.zeta_power, h.apply(T.q), T.source,
                             T.triplet_id + ":conj", T.d1, basis)


def centralizer_order(G: ReflectionGroup, g: Matrix) -> int:
    return sum(1 for h in G.elements() if h * g == g * h)


def verify_triplet(G: ReflectionGroup, T: AdmissibleTriplet, raise_on_failure=False) -> dict:
    d1 = G.d1
    N = G.field_order
    n = G.dim
    ident = Matrix.identity(n, N)
    a, _ = group_regularity_counts(G)
    report = {}
    try:
        report["order"] = matrix_order(T.g, max(d1, 1) * 2) == d1
    except DomainError:
        report["order"] = False
    report["eigenvector"] = T.g.apply(T.q) == tuple(x * T.zeta for x in T.q)
    report["regular"] = is_regular_vector(G, T.q)
    report["eigenspace_dim"] = len(kernel(T.g - ident.scale(T.zeta))) == a
    # eigenvalue multiset {zeta^(1-d)} : compare multiplicities
    ok = True
    for d in set(G.degrees):
        lam = T.zeta ** (1 - d)
        want = sum(1 for e in G.degrees if T.zeta ** (1 - e) == lam)
        ok &= len(kernel(T.g - ident.scale(lam))) == want
    report["eigenvalues"] = ok
    expected = 1
    for d in G.degrees:
        if d % d1 == 0:
            expected *= d
    report["centralizer"] = centralizer_order(G, T.g) == expected
    if raise_on_failure and not all(report.values()):
        bad = [k for k, v in report.items() if not v]
        raise TripletCheckFailed(f"{G.name}: triplet checks failed: {bad}")
    return report


def regular_elements(G: ReflectionGroup, zeta: CycloNumber):
    """All zeta-regular elements (a regular zeta-eigenvector exists)."""
    N = G.field_order
    ident = Matrix.identity(G.dim, N)
    out = []
    for g in G.elements():
        V = kernel(g - ident.scale(zeta))
        if V and _regular_in_span(G, V) is not None:
            out.append(g)
    return out


def are_conjugate(G: ReflectionGroup, g: Matrix, h: Matrix) -> bool:
    for k in G.elements():
        if k * g == h * k:
            return True
    return False
