"""Shared helpers: exact constants and builders for expected polynomials."""

from fractions import Fraction as Fr

import pytest
from hypothesis import settings

from crgflat.exactnum import rational, root_of_unity, sqrt_rational, imag_unit
from crgflat.polyring import MultiPoly, VarFrame, compose
from crgflat.groups import catalog_group
from crgflat.goodinv import good_invariants

# criterion number -> PASS/FAIL line, filled by test_acceptance.py
ACCEPTANCE_LINES = {}

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def poly(frame, terms, order=1):
    """terms: {exponent tuple: coefficient}."""
    return MultiPoly(frame, terms, order)


def var_polys(frame, order=1):
    return [MultiPoly.var(frame, i, order) for i in range(frame.nvars)]


def catalog_in_z(rec, G):
    return rec.frame.invariants_in_z(G.invariants).polys


def in_invariants(expr, invs):
    """Substitute the invariants into a polynomial ``expr`` in the frame s1..sn."""
    return compose(expr, invs)


def sframe(n):
    return VarFrame.make("s", n)


@pytest.fixture(scope="session")
def g5():
    G = catalog_group("G5")
    return G, good_invariants(G)


@pytest.fixture(scope="session")
def g6():
    G = catalog_group("G6")
    return G, good_invariants(G)


@pytest.fixture(scope="session")
def g333():
    G = catalog_group("G(3,3,3)")
    return G, good_invariants(G)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
