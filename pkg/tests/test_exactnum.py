import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crgflat.errors import IncompatibleOrder
from crgflat.exactnum import (CycloNumber, rational, root_of_unity, sqrt_rational, imag_unit,
                              approx_complex, to_json, from_json, format_cyclo, recognize,
                              cyclotomic_polynomial, totient)

ORDERS = [1, 3, 4, 8, 12, 20, 24]
fractions = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 50))


@st.composite
def cyclo(draw, order=None):
    n = order or draw(st.sampled_from(ORDERS))
    cs = draw(st.lists(fractions, min_size=totient(n), max_size=totient(n)))
    return CycloNumber(n, cs)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]
    assert [totient(n) for n in (1, 8, 12, 20, 24)] == [1, 4, 4, 8, 8]


def test_root_of_unity_relations():
    z = root_of_unity(12, 24)
    assert z ** 12 == 1
    assert z ** 6 == -1
    assert imag_unit(8) ** 2 == -1
    with pytest.raises(IncompatibleOrder):
        root_of_unity(8, 20)


@pytest.mark.parametrize("r,order", [(2, 8), (3, 12), (5, 20), (6, 24), (Fraction(1, 2), 8), (-3, 12), (10, 40)])
def test_sqrt_squares_back(r, order):
    s = sqrt_rational(r, order)
    assert s * s == r
    # principal branch
    v = approx_complex(s)
    assert abs(v - cmath.sqrt(complex(r))) < 1e-12


def test_cross_order_equality_and_hash():
    a = root_of_unity(4, 4)
    b = root_of_unity(4, 24)
    assert a == b
    assert hash(a) == hash(b)
    assert hash(rational(Fraction(3, 7), 12)) == hash(Fraction(3, 7))
    assert rational(5, 8) == 5


def test_inverse_and_division():
    x = root_of_unity(12, 12) + 2
    assert x * x.inverse() == 1
    assert (x / x) == 1
    with pytest.raises(ZeroDivisionError):
        rational(0, 12).inverse()


def test_conjugate_of_zeta():
    z = root_of_unity(20, 20)
    assert z.conjugate() == z ** -1
    assert (z * z.conjugate()) == 1


def test_json_roundtrip_and_format():
    x = sqrt_rational(2, 8) * Fraction(1, 2)
    assert from_json(to_json(x)) == x
    assert format_cyclo(x) == "1/2*sqrt(2)"
    y = imag_unit(24) * sqrt_rational(3, 24) * Fraction(-5, 96)
    assert format_cyclo(y) == "-5/96*i*sqrt(3)"
    assert recognize(root_of_unity(24, 24, 2)) is None
    assert format_cyclo(root_of_unity(24, 24, 2)) == "(z24^2)"
    with pytest.raises(ValueError):
        from_json({"order": 8, "coeffs": [["1", "1"]]})


def test_approx_high_precision():
    v = approx_complex(sqrt_rational(2, 8), precision=40)
    import mpmath
    with mpmath.workdps(45):
        assert abs(v - mpmath.sqrt(2)) < mpmath.mpf(10) ** -40


@given(cyclo(), cyclo(), cyclo())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(cyclo())
def test_nonzero_has_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert a / a == 1


@given(cyclo(), st.sampled_from([24, 48, 120]))
def test_embedding_preserves_value_and_hash(a, m):
    from math import lcm
    big = a.embed(lcm(a.order, m))
    assert big == a
    assert hash(big) == hash(a)
    assert abs(approx_complex(big) - approx_complex(a)) < 1e-9


@given(cyclo(), cyclo())
def test_approx_is_ring_homomorphism(a, b):
    assert abs(approx_complex(a * b) - approx_complex(a) * approx_complex(b)) < 1e-6 * (1 + abs(approx_complex(a * b)))
