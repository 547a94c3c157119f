from __future__ import annotations

import pytest

from cftorsion.errors import GenusMismatch, NotPeriodic
from cftorsion.families import flynn, g_u
from cftorsion.arith import Poly
from cftorsion.laurent import cf_expand
from cftorsion.torsion import DegreeVector, degree_constraint_check, degree_vector, torsion_order


def test_order_and_vector_of_g_u():
    e = cf_expand(g_u(3))
    v = degree_vector(e)
    assert v.deltas == (3, 2, 1, 1, 1, 1, 2)
    assert v.m == 7 and v.order == 11 and v.delta1 == 2
    assert v.delta(7) == 3
    assert degree_constraint_check(v).ok


def test_genus_mismatch_and_not_periodic():
    with pytest.raises(GenusMismatch):
        torsion_order(cf_expand(g_u(2)), 3)
    e = cf_expand(Poly([2, 1, 0, 1, 0, 0, 1]), max_steps=4)
    with pytest.raises(NotPeriodic):
        torsion_order(e, 2)


def test_constraint_check_flags_violations():
    bad = DegreeVector.from_interior(2, (1, 2, 1, 2))  # not symmetric
    assert not degree_constraint_check(bad).ok
    too_big = DegreeVector.from_interior(2, (3, 3))
    assert not degree_constraint_check(too_big).ok


def test_delta0_validated():
    with pytest.raises(ValueError):
        DegreeVector(2, (4, 1, 1))


@pytest.mark.parametrize("f", [g_u(1), g_u(-2), flynn(2), flynn(5)])
def test_bounds_hold(f):
    v = degree_vector(cf_expand(f))
    g, m, N = v.g, v.m, v.order
    assert g + m <= N <= m * g + 1
    assert N < 1 + m * g
