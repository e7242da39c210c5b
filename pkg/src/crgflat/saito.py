"""Saito structures of duality groups from good basic invariants.

Two independent routes to the structure constants C_{ab}^c are provided:
the closed derivative formula evaluated at q, and the Omega-matrix oracle
that goes through the Jacobian, its inverse and the discriminant.  A third
route takes the Hessian of the potential vector field.

Matrices of structure constants are stored as ``C[alpha][gamma][beta]``,
i.e. C_alpha is the matrix whose (gamma, beta) entry is C_{alpha beta}^gamma.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotDualityGroup, ConsistencyFailure, Singular
from .exactnum import rational
from .exactla import det_generic, adjugate_generic
from .polyring import (MultiPoly, VarFrame, diff, partial_derivative, exact_divide,
                       coefficient_in, multi_factorial, evaluate)
from .groups import ReflectionGroup, BasicInvariantSet, hyperplane_forms, jacobian
from .goodinv import (GoodInvariantRecord, Invariantizer, deriv_at, index_set, zero_index_set,
                      good_invariants)


def _x_monomial(xframe, a, c, order):
    return MultiPoly(xframe, {tuple(a): c}, order)


def _require_duality(G, formal):
    if G is not None and not G.duality and not formal:
        raise NotDualityGroup(f"{G.name} is not a duality group (pass formal=True for the formal objects)")


def _z1q(frame):
    return frame.q_coords[0]


def potential_vector_field(rec: GoodInvariantRecord, frame=None, q=None, G: ReflectionGroup | None = None,
                           formal: bool = False):
    """G^c = z1(q)/(d_c - 1) * sum_{a in I_c^(1)} d^a x^c/dz^a(q) x^a / a!."""
    _require_duality(G, formal)
    frame = frame or rec.frame
    q = frame.q_coords if q is None else q
    z1 = q[0]
    degrees = rec.degrees
    xf = rec.xframe
    N = rec.polys[0].order
    out = []
    for c, P in enumerate(rec.polys):
        acc = {}
        pref = z1 / (degrees[c] - 1)
        for a in index_set(degrees, c, k=1):
            v = deriv_at(P, a, q)
            if v:
                acc[a] = v * pref / multi_factorial(a)
        out.append(MultiPoly(xf, acc, N))
    return out


def structure_constants_direct(rec: GoodInvariantRecord, frame=None, q=None, G=None, formal=False):
    """C_{ab}^c from derivatives of x^c at q (a runs over the zero-prefix set)."""
    _require_duality(G, formal)
    frame = frame or rec.frame
    q = frame.q_coords if q is None else q
    z1 = q[0]
    d = rec.degrees
    n = len(d)
    xf = rec.xframe
    N = rec.polys[0].order
    C = [[[None] * n for _ in range(n)] for _ in range(n)]
    for al in range(n):
        for be in range(al, n):
            for ga in range(n):
                P = rec.polys[ga]
                target = d[0] + d[ga] - d[al] - d[be]
                acc = {}
                pref = z1 / (d[ga] - 1)
                for a in zero_index_set(d, target):
                    full = list(a)
                    full[al] += 1
                    full[be] += 1
                    v = deriv_at(P, full, q)
                    if v:
                        acc[a] = v * pref / multi_factorial(a)
                entry = MultiPoly(xf, acc, N)
                C[al][ga][be] = entry
                C[be][ga][al] = entry
    return C


def hessian_structure_constants(G_vec):
    n = len(G_vec)
    return [[[diff(diff(G_vec[ga], al), be) for be in range(n)] for ga in range(n)] for al in range(n)]


def trivial_structure(xframe: VarFrame, order=1):
    """The formal rank-2 structure G^1 = x1^2/2, G^2 = x1 x2 (Gamma = 0)."""
    x1 = MultiPoly.var(xframe, 0, order)
    x2 = MultiPoly.var(xframe, 1, order)
    G_vec = [x1 * x1 * Fraction(1, 2), x1 * x2]
    return G_vec, hessian_structure_constants(G_vec)


# -- Omega oracle -------------------------------------------------------------------

@dataclass
class OmegaOracle:
    J: list                 # J[c][b] = dx^c/dz^b
    adjJ: list              # J_tilde = adjJ / detJ
    detJ: MultiPoly
    Omega_num: list         # Omega_{ab}^c = Omega_num[a][c][b] / detJ^2
    Delta_z: MultiPoly
    Delta_x: MultiPoly
    DeltaOmega_x: list      # [a][c][b] in C[x]
    Gamma: list             # coefficient of (x^1)^n in DeltaOmega
    D: list                 # coefficient of (x^1)^(n-1)
    Omega_tilde: list       # inverse of Omega_1, entries in C[x]
    C: list
    xframe: VarFrame
    degrees: tuple
    checks: dict = field(default_factory=dict)

    @property
    def J_tilde_denominator(self):
        return self.detJ

    @property
    def flat(self):
        return all(not e for M in self.Gamma for row in M for e in row)


def _matmul(A, B, zero):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = zero
            for k in range(m):
                a, b = A[i][k], B[k][j]
                if a and b:
                    s = s + a * b
            row.append(s)
        out.append(row)
    return out


def omega_oracle(x: BasicInvariantSet, G: ReflectionGroup, formal: bool = False) -> OmegaOracle:
    """Omega_{ab}^c = -sum J~^m_a J~^n_b d^2x^c/dz^m dz^n, scaled by the discriminant.

    J~ = adj(J)/det(J), so Delta*Omega = -(adj^T H^c adj) * Delta / det^2.
    det(J)^2 / Delta = const * prod L_H^(e_H - 2) is a polynomial R, and
    Delta*Omega is obtained by one exact division by R.
    """
    _require_duality(G, formal)
    polys = x.polys
    n = len(polys)
    d = tuple(x.degrees)
    N = polys[0].order
    zf = x.frame
    zero = MultiPoly.zero(zf, N)
    xf = VarFrame.make("x", n, d)
    inv = Invariantizer(polys, d, xf)

    J = jacobian(polys)
    adj = adjugate_generic(J, zero)
    detJ = zero
    for k in range(n):
        if J[0][k] and adj[k][0]:
            detJ = detJ + J[0][k] * adj[k][0]
    if not detJ:
        raise Singular("Jacobian determinant vanishes")

    # discriminant, normalised through its x-form
    dz = MultiPoly.constant(zf, 1, N)
    for L, e in hyperplane_forms(G, x.to_ambient, zf):
        dz = dz * L ** e
    dx = inv.express(dz)
    lead = [0] * n
    lead[0] = n
    c = dx.coefficient(lead)
    if not c:
        raise ConsistencyFailure("discriminant has no (x^1)^n term")
    cinv = c.inverse()
    dz, dx = dz * cinv, dx * cinv
    R = exact_divide(detJ * detJ, dz)

    adjT = [list(r) for r in zip(*adj)]
    num = [[[None] * n for _ in range(n)] for _ in range(n)]
    dom = [[[None] * n for _ in range(n)] for _ in range(n)]
    for ga in range(n):
        H = [[diff(diff(polys[ga], i), j) for j in range(n)] for i in range(n)]
        T = _matmul(H, adj, zero)
        for al in range(n):
            for be in range(al, n):
                s = zero
                for k in range(n):
                    if adjT[al][k] and T[k][be]:
                        s = s + adjT[al][k] * T[k][be]
                s = -s
                num[al][ga][be] = num[be][ga][al] = s
                e = inv.express(exact_divide(s, R))
                dom[al][ga][be] = dom[be][ga][al] = e

    Gamma = [[[coefficient_in(dom[al][ga][be], 0, n) for be in range(n)] for ga in range(n)] for al in range(n)]
    D = [[[coefficient_in(dom[al][ga][be], 0, n - 1) for be in range(n)] for ga in range(n)] for al in range(n)]

    xzero = MultiPoly.zero(xf, N)
    M = dom[0]
    detM = det_generic(M, xzero)
    if not detM:
        raise Singular("Omega_1 is singular")
    adjM = adjugate_generic(M, xzero)
    Om_t = [[exact_divide(dx * adjM[i][j], detM) for j in range(n)] for i in range(n)]

    C = []
    for al in range(n):
        diffm = [[dom[al][ga][be] - dx * Gamma[al][ga][be] for be in range(n)] for ga in range(n)]
        prodm = _matmul(Om_t, diffm, xzero)
        C.append([[exact_divide(e, dx) for e in row] for row in prodm])

    orc = OmegaOracle(J, adj, detJ, num, dz, dx, dom, Gamma, D, Om_t, C, xf, d)
    orc.checks = oracle_checks(orc)
    return orc


def oracle_checks(orc: OmegaOracle) -> dict:
    """Euler identity, D_1 invertibility and the D_1 / Gamma relation."""
    n = len(orc.degrees)
    d = orc.degrees
    xf = orc.xframe
    N = orc.Delta_x.order
    xzero = MultiPoly.zero(xf, N)
    X = [MultiPoly.var(xf, i, N) for i in range(n)]
    euler = True
    for ga in range(n):
        for be in range(n):
            s = xzero
            for al in range(n):
                s = s + X[al] * orc.DeltaOmega_x[al][ga][be] * d[al]
            want = orc.Delta_x * (1 - d[ga]) if ga == be else xzero
            euler &= s == want
    D1 = orc.D[0]
    d1_det = det_generic(D1, xzero)
    rel = True
    for ga in range(n):
        for be in range(n):
            want = MultiPoly.constant(xf, Fraction(1 - d[ga], d[0]), N) if ga == be else xzero
            for al in range(1, n):
                want = want - X[al] * orc.Gamma[al][ga][be] * Fraction(d[al], d[0])
            rel &= D1[ga][be] == want
    return {"euler": euler, "D1_invertible": bool(d1_det), "D1_gamma": rel}


# -- data bundle and verification --------------------------------------------------

@dataclass
class SaitoData:
    G_vec: list
    C: list
    triplet_id: str
    record: GoodInvariantRecord
    trivial: bool = False


def saito_data(G: ReflectionGroup, rec: GoodInvariantRecord | None = None, **kw) -> SaitoData:
    rec = rec or good_invariants(G, **kw)
    if not G.duality:
        if G.dim == 2:
            G_vec, C = trivial_structure(rec.xframe, rec.polys[0].order)
            return SaitoData(G_vec, C, rec.triplet_id, rec, trivial=True)
        raise NotDualityGroup(f"{G.name} is not a duality group")
    G_vec = potential_vector_field(rec, G=G)
    C = structure_constants_direct(rec, G=G)
    return SaitoData(G_vec, C, rec.triplet_id, rec)


def verify_flat_and_consistent(G: ReflectionGroup, rec: GoodInvariantRecord | None = None,
                               oracle: bool = True, **kw) -> dict:
    rec = rec or good_invariants(G, **kw)
    _require_duality(G, False)
    frame = rec.frame
    q = frame.q_coords
    z1 = q[0]
    d = rec.degrees
    n = len(d)
    report = {}
    G_vec = potential_vector_field(rec, G=G)
    Cd = structure_constants_direct(rec, G=G)
    Ch = hessian_structure_constants(G_vec)
    report["direct_eq_hessian"] = Cd == Ch
    report["C1_identity"] = all(
        Cd[0][ga][be] == (MultiPoly.constant(rec.xframe, 1, Cd[0][ga][be].order) if ga == be
                          else MultiPoly.zero(rec.xframe))
        for ga in range(n) for be in range(n))
    # derivative values at q behind C_1 = I
    ok = True
    for ga in range(n):
        for be in range(n):
            for a in zero_index_set(d, d[ga] - d[be]):
                full = list(a)
                full[0] += 1
                full[be] += 1
                v = deriv_at(rec.polys[ga], full, q)
                want = (d[ga] - 1) / z1 if (ga == be and not any(a)) else 0
                ok &= v == want
    report["C1_derivatives"] = ok
    if oracle:
        orc = omega_oracle(rec.x, G)
        report["gamma_zero"] = orc.flat
        report["oracle_eq_direct"] = orc.C == Cd
        report.update(orc.checks)
        # Omega_{1b}^c at q: numerator and det J evaluated in z
        det_q = evaluate(orc.detJ, q)
        ok = True
        for ga in range(n):
            for be in range(n):
                v = evaluate(orc.Omega_num[0][ga][be], q) / (det_q * det_q)
                want = (1 - d[ga]) / z1 if ga == be else 0
                ok &= v == want
        report["omega1_at_q"] = ok
    return report
