"""Flat metric and potential function for Coxeter groups.

The invariant symmetric form is found by solving g S g^T = S for the dual
form S on V^* directly; this keeps every normalisation condition linear.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotCoxeter, UnexpectedFormDimension, SplitFailed, GradientCheckFailed, Singular
from .exactnum import rational
from .exactla import Matrix, inverse, kernel, det
from .polyring import (MultiPoly, VarFrame, diff, coefficient_in, multi_factorial,
                       weighted_monomials, support_size)
from .groups import ReflectionGroup
from .goodinv import GoodInvariantRecord, Invariantizer, deriv_at, zero_index_set, good_invariants
from .saito import potential_vector_field


@dataclass
class CoxeterData:
    B: Matrix               # invariant form on V in the u-frame
    dual_z: Matrix          # <z^a, z^b>^*
    omega_tilde: list       # <dx^a, dx^b>^* in C[x]
    eta_tilde: Matrix
    upsilon: list
    eta: Matrix
    x_hat: list             # x^_a in the z-frame
    x_hat_x: list           # x^_a as linear forms in x
    F: MultiPoly
    checks: dict = field(default_factory=dict)


def _sym_pairs(n):
    return [(i, j) for i in range(n) for j in range(i, n)]


def _form_from(vec, pairs, n, N):
    M = [[rational(0, N)] * n for _ in range(n)]
    for (i, j), c in zip(pairs, vec):
        M[i][j] = c
        M[j][i] = c
    return Matrix(M, N)


def _pairing(degrees):
    """alpha -> partner index for block anti-diagonal pairing by degree."""
    d1 = degrees[0]
    n = len(degrees)
    out = {}
    for a in range(n):
        block = [b for b in range(n) if degrees[b] == d1 + 2 - degrees[a]]
        own = [b for b in range(n) if degrees[b] == degrees[a]]
        if block:
            out[a] = block[len(block) - 1 - own.index(a)] if len(block) == len(own) else None
    return out


def invariant_dual_forms(G: ReflectionGroup):
    """Basis of the symmetric S on V^* with g S g^T = S for all generators."""
    n, N = G.dim, G.field_order
    pairs = _sym_pairs(n)
    rows = []
    for g in G.generators:
        for k in range(n):
            for l in range(k, n):
                row = []
                for (i, j) in pairs:
                    # coefficient of S_ij in (g S g^T - S)_kl
                    c = g[k, i] * g[l, j]
                    if i != j:
                        c = c + g[k, j] * g[l, i]
                    if (i, j) == (k, l):
                        c = c - 1
                    row.append(c)
                rows.append(row)
    return [_form_from(v, pairs, n, N) for v in kernel(Matrix(rows, N))], pairs


def _dual_in_z(S: Matrix, Q: Matrix):
    """<z^a, z^b>^* = (Q^-1 S Q^-T)_ab, since the z^a are the rows of Q^-1."""
    Qi = inverse(Q)
    return Qi * S * Qi.T


def invariant_bilinear_form(G: ReflectionGroup, frame=None):
    """Invariant form B (u-frame) and its dual in graded coordinates.

    The scale is fixed by eta~^{1 kappa} = 1 where d_kappa = 2.  When the
    invariant forms are not unique up to scale (reducible groups) the
    entries of <z, z>^* off the degree pairing are set to zero first.
    """
    forms, _ = invariant_dual_forms(G)
    if not forms:
        raise NotCoxeter(f"{G.name} has no invariant symmetric bilinear form")
    if frame is None:
        rec = good_invariants(G)
        frame = rec.frame
    Q = frame.basis
    d = frame.degrees
    n = len(d)
    zforms = [_dual_in_z(S, Q) for S in forms]
    pair = _pairing(d)
    if len(forms) > 1:
        cons = []
        for a in range(n):
            for b in range(a, n):
                if pair.get(a) != b:
                    cons.append([Z[a, b] for Z in zforms])
        ker = kernel(Matrix(cons, Q.order)) if cons else [tuple(rational(int(i == j), Q.order) for j in range(len(forms))) for i in range(len(forms))]
        if len(ker) != 1:
            raise UnexpectedFormDimension(f"{G.name}: invariant forms span dimension {len(ker)}")
        S = forms[0].scale(0)
        Zs = zforms[0].scale(0)
        for c, F_, Z in zip(ker[0], forms, zforms):
            S = S + F_.scale(c)
            Zs = Zs + Z.scale(c)
        forms, zforms = [S], [Zs]
    S, Z = forms[0], zforms[0]
    kappa = [k for k in range(n) if d[k] == 2]
    if not kappa:
        raise NotCoxeter(f"{G.name} has no degree-2 invariant")
    k = pair.get(0) if pair.get(0) in kappa else kappa[-1]
    z1 = frame.q_coords[0]
    val = Z[0, k] * d[0] / z1
    if not val:
        raise UnexpectedFormDimension("normalising entry of the dual form vanishes")
    s = val.inverse()
    S, Z = S.scale(s), Z.scale(s)
    try:
        B = inverse(S)
    except Singular:
        raise NotCoxeter(f"{G.name}: invariant form is degenerate") from None
    return B, S, Z


def eta_split(rec: GoodInvariantRecord, G: ReflectionGroup, frame=None, dual_z: Matrix | None = None,
              inv: Invariantizer | None = None):
    """omega~ = <dx, dx>^* in C[x], split as eta~ x^1 + upsilon."""
    frame = frame or rec.frame
    if dual_z is None:
        _, _, dual_z = invariant_bilinear_form(G, frame)
    polys = rec.polys
    n = len(polys)
    d = rec.degrees
    N = polys[0].order
    inv = inv or Invariantizer(polys, d, rec.xframe)
    grads = [[diff(P, m) for m in range(n)] for P in polys]
    zf = polys[0].frame
    omega = [[None] * n for _ in range(n)]
    eta_t = [[None] * n for _ in range(n)]
    ups = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            s = MultiPoly.zero(zf, N)
            for m in range(n):
                if not grads[a][m]:
                    continue
                for k in range(n):
                    c = dual_z[m, k]
                    if c and grads[b][k]:
                        s = s + grads[a][m] * grads[b][k] * c
            w = inv.express(s)
            if any(e[0] > 1 for e in w.terms):
                raise SplitFailed(f"omega~[{a},{b}] has degree > 1 in x^1")
            lin = coefficient_in(w, 0, 1)
            if lin.degree() > 0:
                raise SplitFailed(f"eta~[{a},{b}] is not constant")
            omega[a][b] = omega[b][a] = w
            eta_t[a][b] = eta_t[b][a] = lin.coefficient((0,) * n)
            ups[a][b] = ups[b][a] = coefficient_in(w, 0, 0)
    eta_tilde = Matrix(eta_t, N)
    z1 = frame.q_coords[0]
    expected = dual_z.scale(rational(d[0], N) / z1)
    if eta_tilde != expected.with_order(eta_tilde.order):
        raise SplitFailed("eta~ differs from (d_1/z^1(q)) <z, z>^*")
    eta = inverse(eta_tilde)
    return omega, eta_tilde, ups, eta


def hat_x(rec: GoodInvariantRecord, eta: Matrix):
    """x^_a = sum_m x^m eta_{m a}, in z and as linear forms in x."""
    n = len(rec.polys)
    N = rec.polys[0].order
    zf = rec.polys[0].frame
    xf = rec.xframe
    out_z, out_x = [], []
    for a in range(n):
        s = MultiPoly.zero(zf, N)
        lin = []
        for m in range(n):
            c = eta[m, a]
            lin.append(c)
            if c:
                s = s + rec.polys[m] * c
        out_z.append(s)
        out_x.append(MultiPoly.linear(xf, lin, N))
    return out_z, out_x


def potential_function(rec: GoodInvariantRecord, eta: Matrix, frame=None, xhat=None):
    frame = frame or rec.frame
    q = frame.q_coords
    z1 = q[0]
    d = rec.degrees
    n = len(d)
    N = rec.polys[0].order
    if xhat is None:
        xhat, _ = hat_x(rec, eta)
    acc = {}
    for b in weighted_monomials(d, 2 * d[0] + 2, min_support=3):
        lb = support_size(b)
        denom = multi_factorial(b) * lb
        for lam in range(n):
            if not b[lam]:
                continue
            a = list(b)
            a[lam] -= 1
            v = deriv_at(xhat[lam], a, q)
            if v:
                t = v * z1 / (denom * (d[0] + 1 - d[lam]))
                acc[b] = acc[b] + t if b in acc else t
    return MultiPoly(rec.xframe, acc, N)


def gradient_check(F: MultiPoly, G_vec, eta: Matrix) -> bool:
    n = len(G_vec)
    for ga in range(n):
        rhs = MultiPoly.zero(F.frame, F.order)
        for lam in range(n):
            c = eta[lam, ga]
            if c:
                rhs = rhs + G_vec[lam] * c
        if diff(F, ga) != rhs:
            return False
    return True


def satake_structure_constants(rec: GoodInvariantRecord, eta_tilde: Matrix, eta: Matrix,
                               frame=None, xhat=None):
    """C_{ab}^c via x^ (the metric-lowered form); stored as C[a][c][b]."""
    frame = frame or rec.frame
    q = frame.q_coords
    z1 = q[0]
    d = rec.degrees
    n = len(d)
    N = rec.polys[0].order
    xf = rec.xframe
    if xhat is None:
        xhat, _ = hat_x(rec, eta)
    C = [[[None] * n for _ in range(n)] for _ in range(n)]
    for ga in range(n):
        for be in range(n):
            # inner = dx^c/dz^b + sum_l eta~^{l c} dx^_b/dz^l
            inner = diff(rec.polys[ga], be)
            for lam in range(n):
                c = eta_tilde[lam, ga]
                if c:
                    inner = inner + diff(xhat[be], lam) * c
            pref = z1 / (d[0] + d[ga] - d[be])
            for al in range(n):
                acc = {}
                for a in zero_index_set(d, d[0] + d[ga] - d[al] - d[be]):
                    full = list(a)
                    full[al] += 1
                    v = deriv_at(inner, full, q)
                    if v:
                        acc[a] = v * pref / multi_factorial(a)
                C[al][ga][be] = MultiPoly(xf, acc, N)
    return C


def coxeter_data(G: ReflectionGroup, rec: GoodInvariantRecord | None = None, **kw) -> CoxeterData:
    rec = rec or good_invariants(G, **kw)
    frame = rec.frame
    B, S, Z = invariant_bilinear_form(G, frame)
    omega, eta_tilde, ups, eta = eta_split(rec, G, frame, Z)
    xz, xx = hat_x(rec, eta)
    F = potential_function(rec, eta, frame, xz)
    G_vec = potential_vector_field(rec, G=G)
    if not gradient_check(F, G_vec, eta):
        raise GradientCheckFailed(f"{G.name}: dF/dx differs from G eta")
    return CoxeterData(B, Z, omega, eta_tilde, ups, eta, xz, xx, F, {"gradient": True})
