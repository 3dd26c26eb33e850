from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from charsheaves.apartment import (alcove_barycenter, alcove_facets_by_grid, closure_le, facet_of_point,
                                   facets_of_closed_alcove, in_closed_alcove, simplex_face_count,
                                   star_membership, support)

from .conftest import RANK_LE_2, datum

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_a1_points():
    rd = datum("A1 sc")
    f = facet_of_point(rd, (F(1, 4),))
    assert f.dim == 1 and not f.zero_roots
    v = facet_of_point(rd, (0,))
    assert v.dim == 0 and v.zero_roots == frozenset({0, 1})


@given(rationals)
def test_gl1_single_facet(x):
    rd = datum("GL(1)")
    assert facet_of_point(rd, (x,)) == facet_of_point(rd, (0,))
    assert facet_of_point(rd, (x,)).dim == 1


@pytest.mark.parametrize("spec,count", [("A1 sc", 3), ("A2 sc", 7), ("GL(1)", 1), ("B2 sc", 7), ("G2 sc", 7),
                                        ("A3 sc", 15)])
def test_alcove_face_counts(spec, count):
    rd = datum(spec)
    facets = facets_of_closed_alcove(rd)
    assert len(facets) == count == simplex_face_count(rd)
    assert {f.key for f in facets} == alcove_facets_by_grid(rd)


@pytest.mark.parametrize("spec", RANK_LE_2)
def test_faces_are_faces_of_the_alcove(spec):
    rd = datum(spec)
    facets = facets_of_closed_alcove(rd)
    top = max(facets, key=lambda f: f.dim)
    for f in facets:
        assert closure_le(f, top)
        assert in_closed_alcove(rd, f.witness)
        assert facet_of_point(rd, f.witness) == f


def test_support_examples():
    rd = datum("A1 sc")
    facets = facets_of_closed_alcove(rd)
    alcove = next(f for f in facets if f.dim == 1)
    vertex0 = facet_of_point(rd, (0,))
    assert len(support(alcove).direction) == 1
    assert support(vertex0).direction == ()
    a2 = datum("A2 sc")
    edge = facet_of_point(a2, (F(2, 9), F(4, 9)))  # alpha_1 = 0, alpha_2 = 2/3
    assert edge.dim == 1 and len(support(edge).direction) == 1


def test_closure_examples():
    rd = datum("A1 sc")
    v0, v1 = facet_of_point(rd, (0,)), facet_of_point(rd, (F(1, 2),))
    alcove = facet_of_point(rd, (F(1, 4),))
    assert closure_le(v0, alcove)
    assert not closure_le(v0, v1)
    a2 = datum("A2 sc")
    top = facet_of_point(a2, alcove_barycenter(a2))
    assert all(closure_le(f, top) for f in facets_of_closed_alcove(a2))


def test_star_examples():
    rd = datum("A1 sc")
    v0 = facet_of_point(rd, (0,))
    alcove = facet_of_point(rd, (F(1, 4),))
    assert star_membership(v0, (F(1, 8),))
    assert not star_membership(v0, (F(1, 2),))
    assert star_membership(alcove, (F(1, 5),))


@pytest.mark.parametrize("spec", ["A1 sc", "A2 sc", "B2 sc", "GL(2)"])
def test_closure_is_a_partial_order(spec):
    rd = datum(spec)
    facets = facets_of_closed_alcove(rd)
    for a in facets:
        assert closure_le(a, a)
    for a, b in combinations(facets, 2):
        assert not (closure_le(a, b) and closure_le(b, a))
        if closure_le(a, b):
            assert a.dim < b.dim


@given(st.tuples(rationals, rationals))
def test_facet_contains_its_points(x):
    rd = datum("A2 sc")
    f = facet_of_point(rd, x)
    # the witness lies in the same facet, and facets are determined by their key
    assert facet_of_point(rd, f.witness) == f
    for i in rd.positive:
        v = rd.pair(i, x)
        w = rd.pair(i, f.witness)
        assert (v == int(v)) == (w == int(w))
        assert (v // 1) == (w // 1)


@given(st.tuples(rationals, rationals), st.tuples(rationals, rationals))
def test_star_matches_closure(x, y):
    rd = datum("B2 sc")
    fx, fy = facet_of_point(rd, x), facet_of_point(rd, y)
    assert star_membership(fx, y) == closure_le(fx, fy)
