import pytest

from crgflat.errors import DomainError
from crgflat.exactla import det
from crgflat.groups import (catalog_group, verify_group, regularity_counts, group_regularity_counts,
                            is_reflection, reflections, hyperplanes, is_invariant, reynolds,
                            molien_degrees, jacobian_det, jacobian_constant, discriminant,
                            canonical_name, list_groups)
from crgflat.polyring import MultiPoly, compose

SMALL = ["G5", "G6", "G12", "G13", "G(2,2,2)", "G(3,3,2)", "G(4,4,2)", "G(2,2,3)", "G(3,3,3)",
         "G(2,1,2)", "G(3,1,2)", "G(2,1,3)", "G(3,1,3)", "G(4,2,2)"]


@pytest.mark.parametrize("name", SMALL + ["G22", "G(2,2,4)", "G(2,1,4)"])
def test_catalog_data_consistent(name):
    G = catalog_group(name)
    res = verify_group(G)
    assert all(res.values()), res


@pytest.mark.parametrize("name", SMALL)
def test_generators_are_reflections(name):
    G = catalog_group(name)
    assert all(is_reflection(g) for g in G.generators)


def test_known_orders_and_degrees():
    assert catalog_group("G5").degrees == (12, 6)
    assert catalog_group("G6").degrees == (12, 4)
    assert len(catalog_group("G(3,3,3)").elements()) == 54
    assert catalog_group("G(3,1,2)").degrees == (6, 3)
    assert catalog_group("G(2,2,3)").degrees == (4, 2, 3)
    assert len(hyperplanes(catalog_group("G(2,2,3)"))) == 6


@pytest.mark.parametrize("name,expected", [
    ("G(4,2,2)", (2, 2)), ("G(4,2,3)", (1, 2)), ("G(6,3,2)", (1, 2)), ("G(6,2,3)", (1, 2)),
    ("G(6,2,2)", (2, 2)), ("G(6,3,3)", (1, 2)), ("G(4,2,4)", (1, 2)), ("G15", (1, 2)),
    ("G5", (1, 1)), ("G(3,3,4)", (1, 1)),
])
def test_regularity_counts(name, expected):
    G = catalog_group(name)
    assert group_regularity_counts(G) == expected


def test_regularity_counts_from_data():
    # degrees (12, 6), codegrees (0, 6)
    assert regularity_counts((12, 6), (0, 6), 12) == (1, 1)
    assert regularity_counts((24, 12), (0, 24), 24) == (1, 2)
    assert regularity_counts((6, 6), (0, 0), 6) == (2, 2)


def test_reynolds_projects_to_invariants():
    G = catalog_group("G(3,3,2)")
    u1, u2 = (MultiPoly.var(G.invariants.frame, i, G.field_order) for i in range(2))
    P = u1 ** 3
    R = reynolds(G, P)
    assert is_invariant(G, R)
    assert reynolds(G, R) == R
    assert not is_invariant(G, u1 ** 2)


def test_jacobian_is_constant_times_hyperplanes():
    G = catalog_group("G(2,1,3)")
    J = jacobian_det(G.invariants.polys)
    c = jacobian_constant(G, G.invariants)
    prod = MultiPoly.constant(G.invariants.frame, c, G.field_order)
    for H in hyperplanes(G):
        prod = prod * H.form ** (H.order - 1)
    assert J == prod


def test_discriminant_is_polynomial_in_invariants():
    G = catalog_group("G(2,2,2)")
    dz, dx = discriminant(G, G.invariants)
    assert compose(dx, G.invariants.polys) == dz
    assert dx.coefficient((2, 0)) == 1
    # degree of Delta = sum over hyperplanes of e_H = 2 * number of reflections here
    assert dz.degree() == 4


def test_molien():
    assert molien_degrees(catalog_group("G(3,3,3)")) == [6, 3, 3]


def test_names():
    assert canonical_name(" g( 3, 3, 3 ) ") == "G(3,3,3)"
    assert "G5" in list_groups()
    with pytest.raises(DomainError):
        catalog_group("G99")
