from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, strategies as st

from charsheaves.linalg import matvec, rank, transpose
from charsheaves.rootdata import (RootDatumError, invariant_form, levi_subdatum, parse_root_datum,
                                  reflection_subgroup, simple_type_decomposition, span_closure, weyl_group,
                                  weyl_order_from_degrees)

from .conftest import RANK_LE_2, datum


def test_a1_sc_defining_data():
    rd = datum("A1 sc")
    assert rd.rank == 1
    assert sorted(rd.roots) == [(-2,), (2,)]
    assert sorted(rd.coroots) == [(-1,), (1,)]


def test_gl1_has_no_roots():
    rd = datum("GL(1)")
    assert rd.rank == 1 and rd.roots == ()


def test_a1_ad_cocharacters_are_half_coroots():
    rd = datum("A1 ad")
    # the basis vector of X_* is alpha^vee / 2, and the pairing stays integral
    assert rd.coroots[0] == (2,)
    assert rd.pair(0, rd.coroots[0]) == 2


@pytest.mark.parametrize("spec,order", [("A1 sc", 2), ("A2 sc", 6), ("B2 sc", 8), ("G2 sc", 12),
                                        ("A3 sc", 24), ("GL(3)", 6)])
def test_weyl_orders(spec, order):
    assert weyl_group(datum(spec)).order == order


@pytest.mark.parametrize("letter,r,order", [("A", 1, 2), ("A", 2, 6), ("B", 2, 8), ("G", 2, 12), ("A", 3, 24)])
def test_degree_products(letter, r, order):
    assert weyl_order_from_degrees(letter, r) == order


def test_levi_of_a2():
    rd = datum("A2 sc")
    levi, emb = levi_subdatum(rd, [rd.simple[0]])
    assert len(levi.roots) == 2
    torus, _ = levi_subdatum(datum("A1 sc"), [])
    assert torus.roots == ()


def test_b2_short_levi_is_rationally_closed():
    rd = datum("B2 sc")
    short = rd.simple[1]
    levi, emb = levi_subdatum(rd, [short])
    assert len(levi.roots) == 2
    # brute force: roots in the rational span of the chosen simple root
    brute = {i for i, r in enumerate(rd.roots) if rank([r, rd.roots[short]]) == 1}
    assert span_closure(rd, [short]) == frozenset(brute)


def test_type_decomposition_examples():
    assert simple_type_decomposition(datum("GL(1)"), []).factors == ()
    full = simple_type_decomposition(datum("A1 sc"), range(2))
    assert [(f.letter, f.rank, f.lattice_key) for f in full.factors] == [("A", 1, "sc")]
    rd = datum("A2 sc")
    part = simple_type_decomposition(rd, [0, 3])
    assert [(f.letter, f.rank) for f in part.factors] == [("A", 1)]
    assert part.central_rank == 1


def test_invariant_form_normalisation():
    assert invariant_form(datum("A1 sc")).gram == ((2,),)
    assert invariant_form(datum("GL(1)")).gram == ((1,),)


@pytest.mark.parametrize("spec", RANK_LE_2)
def test_invariant_form_invariant(spec):
    rd = datum(spec)
    assert invariant_form(rd).is_invariant(weyl_group(rd))


@pytest.mark.parametrize("spec", RANK_LE_2)
def test_pairing_is_integral_and_cartan(spec):
    rd = datum(spec)
    for i, j in product(range(len(rd.roots)), repeat=2):
        v = rd.pair(i, rd.coroots[j])
        assert v == int(v)
        if i == j:
            assert v == 2


@pytest.mark.parametrize("spec", RANK_LE_2)
def test_weyl_group_permutes_roots(spec):
    rd = datum(spec)
    roots = set(rd.roots)
    for w in weyl_group(rd).elements:
        # roots live in X^*, on which W acts by the inverse transpose; check it stays a bijection
        images = {tuple(int(x) for x in matvec(transpose(w), r)) for r in rd.roots}
        assert images == roots


def test_reflection_subgroup_of_one_root():
    rd = datum("A2 sc")
    assert reflection_subgroup(rd, [0]).order == 2


@given(st.sampled_from(["A1", "A2", "B2", "G2"]), st.sampled_from(["sc", "ad"]))
def test_preset_strings_parse(kind, iso):
    if kind == "G2" and iso == "ad":
        iso = "sc"
    rd = parse_root_datum(f"{kind} {iso}")
    assert rd.rank == int(kind[1])


def test_malformed_specs_raise():
    for bad in ("X9", "A0 sc", "GL(0)", ""):
        with pytest.raises(RootDatumError):
            parse_root_datum(bad)


def test_explicit_toml_datum(tmp_path):
    p = tmp_path / "sl2.toml"
    p.write_text('format = 1\nroots = [[2]]\ncoroots = [[1]]\ngenerate = true\n')
    rd = parse_root_datum(str(p))
    assert sorted(rd.roots) == [(-2,), (2,)]
    assert weyl_group(rd).order == 2


def test_shipped_preset_files_resolve_by_name():
    assert parse_root_datum("A2sc.toml").name == datum("A2 sc").name
    assert parse_root_datum("SL2explicit.toml").rank == 1
