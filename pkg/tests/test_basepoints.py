from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from charsheaves import linalg as la
from charsheaves.affweyl import AffineWeylElement, alcove_stabilizer
from charsheaves.apartment import alcove_barycenter, facet_of_point, facets_of_closed_alcove
from charsheaves.basepoints import (assign_s, basepoint_suite, check_equivariance, check_nesting, check_telescoping,
                                    check_transport, project_along_coroots, project_gram)
from charsheaves.rootdata import invariant_form

from .conftest import RANK_LE_2, datum

rationals = st.fractions(min_value=-2, max_value=2, max_denominator=9)


def test_a1_values():
    rd = datum("A1 sc")
    asg = assign_s(rd, 2)
    assert asg[facet_of_point(rd, (0,))] == (0,)
    assert asg[facet_of_point(rd, (F(1, 2),))] == (F(1, 2),)
    assert asg[facet_of_point(rd, (F(1, 4),))] == (F(1, 4),)


def test_gl1_value():
    rd = datum("GL(1)")
    asg = assign_s(rd, 2)
    assert list(asg.points.values()) == [(0,)]


def test_a2_values():
    rd = datum("A2 sc")
    asg = assign_s(rd, 2)
    s_a = alcove_barycenter(rd)
    form = invariant_form(rd)
    for f in facets_of_closed_alcove(rd):
        p = asg[f]
        assert facet_of_point(rd, p) == f
        if f.dim == 2:
            assert p == s_a
        if f.dim == 1:
            # foot of the perpendicular: s_A - p is orthogonal to the edge direction
            direction = [v for v in la.nullspace([rd.roots[i] for i in f.zero_roots], 2)]
            diff = la.vsub(s_a, p)
            for d in direction:
                assert la.dot(la.matvec(form.gram, diff), d) == 0


def test_reflection_fixes_vertex1():
    rd = datum("A1 sc")
    asg = assign_s(rd, 2)
    v1 = facet_of_point(rd, (F(1, 2),))
    r = AffineWeylElement.reflection(rd, 0, -1)
    assert r.act_facet(v1) == v1 and r(asg[v1]) == asg[v1]


def test_omega_swaps_vertices_in_a1_ad():
    rd = datum("A1 ad")
    asg = assign_s(rd, 2)
    v0, v1 = [f for f in facets_of_closed_alcove(rd) if f.dim == 0]
    (omega,) = [o for o in alcove_stabilizer(rd).finite_part if not o.is_identity()]
    assert omega.act_facet(v0) == v1
    assert omega(asg[v0]) == asg[v1] and omega(asg[v1]) == asg[v0]


def test_a1_nesting_difference():
    rd = datum("A1 sc")
    asg = assign_s(rd, 2)
    diff = la.vsub(asg[facet_of_point(rd, (0,))], asg[facet_of_point(rd, (F(1, 4),))])
    assert diff == (F(-1, 4),)
    assert la.in_span([rd.coroots[0]], diff)


@pytest.mark.parametrize("spec", RANK_LE_2 + ("GL(3)",))
def test_suite(spec):
    for rep in basepoint_suite(datum(spec), 2):
        assert rep.passed, (rep.name, rep.failures[:3])


def test_checks_are_not_vacuous():
    asg = assign_s(datum("A2 sc"), 2)
    for rep in (check_transport(asg), check_equivariance(asg), check_nesting(asg), check_telescoping(asg.rd)):
        assert rep.checked > 0


def test_corrupted_assignment_is_caught():
    rd = datum("A2 sc")
    asg = assign_s(rd, 2)
    f = next(f for f in asg.points if f.dim == 1 and asg.log[f] == "transport")
    asg.points[f] = la.vadd(asg.points[f], (F(1, 100), 0))
    assert not check_equivariance(asg).passed or not check_transport(asg).passed


@pytest.mark.parametrize("spec", ["B2 sc", "G2 sc", "GL(2)"])
@given(x=st.tuples(rationals, rationals))
def test_projection_methods_agree(spec, x):
    rd = datum(spec)
    for f in facets_of_closed_alcove(rd):
        p = project_along_coroots(f, x)
        assert p == project_gram(f, x)
        assert project_along_coroots(f, p) == p
