from fractions import Fraction as Fr
from itertools import product

import pytest

from conftest import poly, sqrt_rational
from crgflat.errors import NotDualityGroup
from crgflat.exactla import adjugate_generic, det_generic
from crgflat.groups import catalog_group
from crgflat.goodinv import good_invariants
from crgflat.polyring import MultiPoly, compose, diff, weighted_monomials
from crgflat.saito import (potential_vector_field, structure_constants_direct, hessian_structure_constants,
                           omega_oracle, oracle_checks, saito_data, verify_flat_and_consistent,
                           trivial_structure)

DUALITY = ["G5", "G6", "G(2,2,2)", "G(4,4,2)", "G(2,2,3)", "G(3,3,3)", "G(2,1,2)", "G(3,1,2)",
           "G(2,1,3)", "G(3,1,3)"]


def test_g5_potential_vector_field(g5):
    G, rec = g5
    xf, N = rec.xframe, G.field_order
    want = [poly(xf, {(2, 0): Fr(1, 2), (0, 4): Fr(-1, 4)}, N), poly(xf, {(1, 1): 1}, N)]
    assert potential_vector_field(rec, G=G) == want


def test_g5_second_structure_matrix(g5):
    G, rec = g5
    C = structure_constants_direct(rec, G=G)
    xf, N = rec.xframe, G.field_order
    # C[a][c][b] = C_{ab}^c
    assert C[1][0][1] == poly(xf, {(0, 2): -3}, N)
    assert C[1][1][1] == poly(xf, {}, N)
    assert C[1][1][0] == poly(xf, {(0, 0): 1}, N)
    assert C[1][0][0] == poly(xf, {}, N)


@pytest.mark.parametrize("name", DUALITY)
def test_structure_constants(name):
    G = catalog_group(name)
    rec = good_invariants(G)
    d = rec.degrees
    n = len(d)
    C = structure_constants_direct(rec, G=G)
    assert C == hessian_structure_constants(potential_vector_field(rec, G=G))
    for al, be, ga in product(range(n), repeat=3):
        assert C[al][ga][be] == C[be][ga][al]
        e = C[al][ga][be]
        if e:
            assert all(sum(x * y for x, y in zip(m, d)) == d[0] + d[ga] - d[al] - d[be] for m in e.terms)
        if al == 0:
            assert e == (MultiPoly.constant(rec.xframe, 1, e.order) if ga == be else MultiPoly.zero(rec.xframe))


@pytest.mark.parametrize("name", DUALITY + ["G(2,2,4)", "G(2,1,4)"])
def test_flat_and_consistent(name):
    G = catalog_group(name)
    rep = verify_flat_and_consistent(G)
    assert all(rep.values()), rep


def test_oracle_negative_control(g5):
    G, rec = g5
    orc = omega_oracle(rec.compatible, G)
    assert not orc.flat
    chk = oracle_checks(orc)
    assert chk["euler"] and chk["D1_gamma"]


def test_oracle_on_catalog_invariants_is_not_flat():
    G = catalog_group("G(3,3,3)")
    rec = good_invariants(G)
    raw = rec.frame.invariants_in_z(G.invariants)
    orc = omega_oracle(raw, G)
    assert not orc.flat
    assert oracle_checks(orc)["euler"]


def test_non_duality_groups():
    G = catalog_group("G12")
    rec = good_invariants(G)
    with pytest.raises(NotDualityGroup):
        potential_vector_field(rec, G=G)
    sd = saito_data(G)
    assert sd.trivial
    x1, x2 = (MultiPoly.var(rec.xframe, i) for i in range(2))
    assert sd.G_vec == [x1 * x1 * Fr(1, 2), x1 * x2]
    assert potential_vector_field(rec, G=G, formal=True)


def test_trivial_structure_is_identity_on_first_index():
    from crgflat.polyring import VarFrame
    G_vec, C = trivial_structure(VarFrame.make("x", 2, (8, 6)))
    one = MultiPoly.constant(G_vec[0].frame, 1)
    assert C[0][0][0] == one and C[0][1][1] == one and not C[0][0][1]


def _taylor(P, q, order):
    """Coefficients of P(q + w) up to total degree ``order``, as a polynomial in w."""
    f = P.frame
    shifted = compose(P, [MultiPoly.var(f, i, P.order) + q[i] for i in range(f.nvars)])
    return MultiPoly(f, {e: c for e, c in shifted.terms.items() if sum(e) <= order}, P.order)


def _trunc(P, order):
    return MultiPoly(P.frame, {e: c for e, c in P.terms.items() if sum(e) <= order}, P.order)


@pytest.mark.parametrize("name", ["G5", "G6", "G(2,2,3)", "G(3,3,3)", "G(2,1,3)", "G(3,1,3)"])
def test_inverse_jacobian_derivative_pattern(name):
    G = catalog_group(name)
    rec = good_invariants(G)
    q = rec.frame.q_coords
    d = rec.degrees
    n = len(d)
    zero = MultiPoly.zero(rec.polys[0].frame, G.field_order)
    J = [[diff(P, b) for b in range(n)] for P in rec.polys]
    adj = adjugate_generic(J, zero)
    D = _taylor(det_generic(J, zero), q, 3)
    D0 = D.coefficient((0,) * n)
    Dr = D - D0
    inv0 = D0.inverse()
    for ga, be in product(range(n), repeat=2):
        num = _taylor(adj[ga][be], q, 3)
        R = num * inv0
        for _ in range(3):
            R = _trunc(num - Dr * R, 3) * inv0
        assert R.coefficient((0,) * n) == (1 if ga == be else 0)
        for a, c in R.terms.items():
            if any(a) and c:
                k, r = divmod(sum(x * y for x, y in zip(a, d)) + d[be] - d[ga], d[0])
                assert r == 0 and k >= 1, (ga, be, a)
