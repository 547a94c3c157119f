from __future__ import annotations

import os
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cftorsion.arith import Poly, discriminant, resultant
from cftorsion.errors import NotSextic, NotSymmetric, SingularCurve
from cftorsion.families import (FLYNN, FLYNN_A, FLYNN_B_COMPUTED, FLYNN_C, FLYNN_D,
                                FLYNN_TRIVIAL_FACTORS, G_FAMILY,
                                flynn, g_u)
from cftorsion.igusa import (FULL_SYMBOLIC_ENV, Family, calibrate_d_sign, distinguish_families,
                             distinguish_specialized, igusa, igusa_ABCD, igusa_j, rational_roots,
                             root_sum_A, symmetric_reduce)
from cftorsion.multipoly import parse_multipoly

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero = small.filter(lambda q: q != 0)


def test_flynn_at_one():
    A, B, C, D = igusa_ABCD(flynn(1))
    assert (A, B, C, D) == (-376, 3268, -246968, -1445888)
    j = igusa_j(flynn(1))
    assert j[0] == Fraction(-376) ** 5 / -1445888


@pytest.mark.parametrize("t", [1, 2, -1, Fraction(1, 3), 5])
def test_flynn_reference_a_c_d(t):
    A, _, C, D = igusa_ABCD(flynn(t))
    t = Fraction(t)
    assert (A, C, D) == (FLYNN_A(t), FLYNN_C(t), FLYNN_D(t))


@pytest.mark.parametrize("t", [1, 2, -1, Fraction(1, 3), 5])
def test_flynn_b_closed_form(t):
    t = Fraction(t)
    assert igusa_ABCD(flynn(t))[1] == FLYNN_B_COMPUTED(t)


def test_d_is_signed_discriminant():
    assert calibrate_d_sign() == -1
    f = flynn(3) * 4
    assert igusa_ABCD(f)[3] == -resultant(f, f.derivative()) / f.lc == discriminant(f)


@st.composite
def sextics(draw):
    cs = [draw(small) for _ in range(6)] + [draw(nonzero)]
    f = Poly(cs)
    assume(discriminant(f) != 0)
    return f


@settings(max_examples=20)
@given(sextics(), nonzero, small, nonzero)
def test_j_invariant_under_affine_maps_and_scaling(f, a, b, e):
    g = f.compose(Poly([b, a])) * (e * e)
    assert igusa_j(g) == igusa_j(f)


def test_shift_invariance():
    f = g_u(2)
    assert igusa_j(f.compose(Poly([1, 1]))) == igusa_j(f)


def test_errors():
    with pytest.raises(NotSextic):
        igusa_ABCD(Poly([1, 0, 0, 0, 1]))
    with pytest.raises(SingularCurve):
        igusa(Poly.from_roots([0, 0, 1, 2, 3, 4]))


def test_symmetric_reduction():
    assert symmetric_reduce(root_sum_A()).variables() <= {f"e_{k}" for k in range(1, 7)}
    with pytest.raises(NotSymmetric):
        symmetric_reduce(parse_multipoly("z_1^2 + z_2"))


def test_rational_roots():
    assert rational_roots(Poly.from_roots([Fraction(1, 2), -3]) * 6) == [-3, Fraction(1, 2)]


def test_g_u_is_a_shifted_flynn_curve():
    for u in (1, 2, -1, Fraction(1, 3), 7):
        u = Fraction(u)
        assert g_u(u).compose(Poly([1, 1])) == flynn(4 * u)


def test_flynn_against_itself_has_diagonal_witness():
    rep = distinguish_specialized(FLYNN, FLYNN)
    assert rep.verdict == "OVERLAP"
    for t0, u in [(Fraction(1), Fraction(1)), (Fraction(5), Fraction(5))]:
        assert (t0, u) in rep.witnesses


def test_flynn_against_g_overlaps_at_u_equal_t_over_4():
    rep = distinguish_families(FLYNN, G_FAMILY, FLYNN_TRIVIAL_FACTORS)
    assert rep.verdict == "OVERLAP"
    assert all(u == t0 / 4 for t0, u in rep.witnesses)


def test_unrelated_family_is_disjoint():
    other = Family.from_multipoly("h", parse_multipoly("x^6 + (u+1)*x^5 + u*x^2 + 3*u^2 + 1"), "u")
    assert distinguish_specialized(FLYNN, other).verdict == "DISJOINT"


@pytest.mark.skipif(not os.environ.get(FULL_SYMBOLIC_ENV), reason=f"set {FULL_SYMBOLIC_ENV}=1 to run")
def test_full_symbolic_resultants():
    rep = distinguish_families(FLYNN, G_FAMILY, FLYNN_TRIVIAL_FACTORS, full_symbolic=True)
    assert rep.verdict == "OVERLAP"  # the families share every curve up to x -> x + 1
    other = Family.from_multipoly("h", parse_multipoly("x^6 + (u+1)*x^5 + u*x^2 + 3*u^2 + 1"), "u")
    assert distinguish_families(FLYNN, other, FLYNN_TRIVIAL_FACTORS, full_symbolic=True).verdict == "DISJOINT"
