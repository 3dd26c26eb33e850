from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from charsheaves.affweyl import (AffineWeylElement, alcove_stabilizer, length, normalizer_parabolic, reduce_central,
                                 reduce_to_fundamental, stabilizer_facet, stabilizer_point, walk_to_alcove)
from charsheaves.apartment import facet_of_point, facets_of_closed_alcove, in_closed_alcove
from charsheaves.linalg import identity
from charsheaves.rootdata import weyl_group

from .conftest import datum

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)


def test_actions_in_a1():
    rd = datum("A1 sc")
    s = AffineWeylElement(((-1,),), (0,))
    assert s((F(1, 4),)) == (F(-1, 4),)
    t = AffineWeylElement(((1,),), (1,))
    assert t((0,)) == (1,)
    r = AffineWeylElement(((-1,),), (1,))  # the affine reflection in alpha = 1
    assert r((F(1, 2),)) == (F(1, 2),)
    assert AffineWeylElement.reflection(rd, 0, -1) == r


def test_reductions_in_a1():
    rd = datum("A1 sc")
    g, x = reduce_to_fundamental(rd, (F(3, 4),))
    assert g == AffineWeylElement(((-1,),), (1,)) and x == (F(1, 4),)
    g, x = reduce_to_fundamental(rd, (0,))
    assert g.is_identity() and x == (0,)
    g, x = reduce_to_fundamental(rd, (1,))
    assert x == (0,) and g((1,)) == (0,)


@given(st.tuples(rationals, rationals))
def test_walk_lands_in_alcove(x):
    rd = datum("A2 sc")
    g, y = walk_to_alcove(rd, x)
    assert g(x) == y
    assert in_closed_alcove(rd, y)


@given(st.tuples(rationals, rationals))
def test_reduction_is_orbit_invariant(x):
    rd = datum("B2 sc")
    _, y = reduce_to_fundamental(rd, x)
    s = AffineWeylElement.reflection(rd, rd.simple[0], 0)
    t = AffineWeylElement(identity(2), rd.coroots[rd.simple[1]])
    for g in (s, t, s * t):
        assert reduce_to_fundamental(rd, g(x))[1] == y


@given(st.tuples(rationals, rationals))
def test_inverse_and_composition(x):
    rd = datum("G2 sc")
    a = AffineWeylElement.reflection(rd, rd.simple[0], 1)
    b = AffineWeylElement.reflection(rd, rd.simple[1], -2)
    assert (a * b)(x) == a(b(x))
    assert (a * b).inverse()(((a * b)(x))) == tuple(F(v) for v in x)


def test_point_stabilizers():
    sc, ad = datum("A1 sc"), datum("A1 ad")
    assert stabilizer_point(sc, (0,)).quotient_order == 2
    assert stabilizer_point(sc, (F(1, 4),)).quotient_order == 1
    # alpha^vee / 4 is the coordinate 1/2 in the adjoint lattice
    assert stabilizer_point(ad, (F(1, 2),)).quotient_order == 2


@pytest.mark.parametrize("spec", ["A1 sc", "A2 sc", "B2 sc", "A2 ad"])
def test_point_stabilizer_brute_force(spec):
    rd = datum(spec)
    x = tuple(F(1, 3) * k for k in range(1, rd.rank + 1))
    stab = stabilizer_point(rd, x)
    count = 0
    for w in weyl_group(rd).elements:
        g = AffineWeylElement(w, tuple(0 for _ in range(rd.rank)))
        lam = tuple(a - b for a, b in zip(x, g(x)))
        if all(v == int(v) for v in lam):
            count += 1
    assert stab.quotient_order == count


def test_facet_stabilizers():
    gl1 = datum("GL(1)")
    s = stabilizer_facet(gl1, facets_of_closed_alcove(gl1)[0])
    assert len(s.lattice) == 1 and s.quotient_order == 1
    sc = datum("A1 sc")
    assert stabilizer_facet(sc, facet_of_point(sc, (0,))).quotient_order == 2
    assert stabilizer_facet(sc, facet_of_point(sc, (F(1, 4),))).quotient_order == 1


@pytest.mark.parametrize("spec,omega", [("A1 sc", 1), ("A1 ad", 2), ("A2 sc", 1), ("A2 ad", 3), ("B2 ad", 2)])
def test_alcove_stabilizer_orders(spec, omega):
    assert alcove_stabilizer(datum(spec)).quotient_order == omega


def test_normalizers_in_a2():
    rd = datum("A2 sc")
    n = normalizer_parabolic(rd, [])
    assert len(n.normalizer) == 6 and n.quotient_order == 6
    n = normalizer_parabolic(rd, [0, 3])
    assert len(n.parabolic) == 2 and len(n.normalizer) == 2 and n.quotient_order == 1
    a1 = datum("A1 sc")
    n = normalizer_parabolic(a1, [0, 1])
    assert n.quotient_order == 1


def test_length_of_simple_reflections():
    rd = datum("A2 sc")
    for i in rd.simple:
        assert length(rd, AffineWeylElement.reflection(rd, i, 0)) == 1


def test_central_reduction_is_idempotent():
    rd = datum("GL(2)")
    lam = (3, 5)
    once = reduce_central(rd, lam)
    assert reduce_central(rd, once) == once
