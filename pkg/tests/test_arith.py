from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cftorsion.arith import (Poly, bareiss_determinant, discriminant, format_rational, is_squarefree,
                             parse_rational, poly_divrem, poly_gcd, rational_root, resultant,
                             sylvester_resultant)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(rationals, min_size=0, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_trailing_zeros_trimmed_and_degree():
    p = Poly([1, 2, 0, 0])
    assert p.degree == 1
    assert list(p.coeffs) == [1, 2]
    assert Poly([]).is_zero()


def test_to_expr_and_string_round_trip():
    p = Poly([Fraction(-1, 2), 0, 3])
    assert p.to_expr() == "3*x^2 - 1/2"
    assert Poly.from_strings(p.to_strings()) == p


@given(polys, polys)
def test_ring_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) - b == a


@given(polys, nonzero_polys)
def test_divrem_identity(a, b):
    q, r = poly_divrem(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_is_monic_and_divides(a, b, c):
    g = poly_gcd(a * c, b * c)
    assert g.lc == 1
    assert poly_divrem(a * c, g)[1].is_zero()
    assert poly_divrem(g, c.monic())[1].is_zero()


def test_gcd_known():
    a = Poly.from_roots([1, 2, 3])
    b = Poly.from_roots([2, 3, 5]) * 7
    assert poly_gcd(a, b) == Poly.from_roots([2, 3])


@given(nonzero_polys, nonzero_polys)
def test_resultant_matches_sylvester(a, b):
    assert resultant(a, b) == sylvester_resultant(a, b)


def test_resultant_of_root_products():
    a = Poly.from_roots([1, 2])
    b = Poly.from_roots([3, 5])
    assert resultant(a, b) == (1 - 3) * (1 - 5) * (2 - 3) * (2 - 5)


def test_discriminant_quadratic_and_cubic():
    assert discriminant(Poly([3, 5, 1])) == 25 - 12
    # x^3 + px + q: -4p^3 - 27q^2
    assert discriminant(Poly([2, -3, 0, 1])) == -4 * (-27) - 27 * 4


def test_squarefree():
    assert is_squarefree(Poly.from_roots([1, 2, 3]))
    assert not is_squarefree(Poly.from_roots([1, 1, 3]))


def test_bareiss():
    assert bareiss_determinant([[2, 0, 1], [1, 3, 2], [1, 1, 1]]) == 2 * 1 + 1 * (1 - 3)
    assert bareiss_determinant([[1, 2], [2, 4]]) == 0


@given(rationals)
def test_rational_root_squares(q):
    assert rational_root(q * q, 2) in (q, -q)
    assert rational_root(q ** 3, 3) == q


def test_rational_root_none():
    assert rational_root(Fraction(2), 2) is None
    assert rational_root(Fraction(-4), 2) is None


@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_parse_rejects_floats():
    with pytest.raises(ValueError):
        parse_rational("0.5")
