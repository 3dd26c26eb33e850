from __future__ import annotations

from dataclasses import replace

import pytest

from charsheaves.affweyl import stabilizer_point
from charsheaves.blocks import (affine_blocks, algebra_presentation, bijection_check, block_algebra_series,
                                block_signatures, finite_C, principal_block, principal_block_check, stabilizer_check)
from charsheaves.cuspidal import cuspidal_data_of_G
from charsheaves.rootdata import weyl_group
from charsheaves.series import sym_series

from .conftest import RANK_LE_2, datum


def test_a1_finite_triples():
    fc = finite_C(datum("A1 sc"))
    assert len(fc.triples) == 1 + 2 * 1
    assert len(fc.orbits) == 2


def test_gl1_finite_triples():
    fc = finite_C(datum("GL(1)"))
    assert len(fc.triples) == 1 and len(fc.orbits) == 1


@pytest.mark.parametrize("spec", ["GL(1)", "GL(2)", "GL(3)", "A1 sc", "A1 ad", "A2 sc", "A2 ad", "B2 sc",
                                  "G2 sc"])
def test_bijection(spec):
    rep = bijection_check(datum(spec))
    assert rep.k_count == rep.d_count == rep.orbit_count
    assert rep.injective and rep.surjective and rep.orbit_stabilizer and rep.w_c_matches


@pytest.mark.parametrize("spec", RANK_LE_2)
def test_orbit_stabilizer(spec):
    rd = datum(spec)
    fc = finite_C(rd)
    order = weyl_group(rd).order
    assert sum(o.size for o in fc.orbits) == len(fc.triples)
    for o in fc.orbits:
        assert o.size * len(o.stabilizer) == order


def test_affine_blocks_gl1():
    (b,) = affine_blocks(datum("GL(1)")).blocks
    assert b.algebra_kind == "lattice-smash" and b.z_dim == 1


def test_affine_blocks_a1():
    rd = datum("A1 sc")
    blocks = affine_blocks(rd).blocks
    assert len(blocks) == 3
    principal = [b for b in blocks if b.z_dim == 1]
    assert len(principal) == 1
    vertex = [b for b in blocks if b.z_dim == 0]
    assert len(vertex) == 2 and all(b.stabilizer.is_finite for b in vertex)


def test_omega_fuses_vertices():
    assert len(affine_blocks(datum("A1 ad")).blocks) < len(affine_blocks(datum("A1 sc")).blocks)


@pytest.mark.parametrize("spec", RANK_LE_2 + ("GL(3)",))
def test_principal_block(spec):
    rd = datum(spec)
    rep = principal_block_check(rd)
    assert rep.full_weyl and rep.lattice_rank == rd.rank and rep.lattice_index == 1
    assert rep.finite_part_order == weyl_group(rd).order
    assert rep.z_dim == rd.rank


def test_principal_series():
    # affine principal block: K_c is infinite, so only the Sym part has a series
    b = principal_block(affine_blocks(datum("A2 sc")))
    s = block_algebra_series(b)
    assert s.numerator_text() == "1" and s.denominator_text() == "(1-t^2q^2)^2"
    assert "Z^2 . 6" in algebra_presentation(b)
    # finite principal model C[W] # Sym: |W| / (1 - t^2 q^2)^rank
    assert sym_series(1).scale(len(finite_C(datum("A1 sc")).orbits[0].stabilizer)).numerator_text() == "2"
    fin = sym_series(2).scale(len(finite_C(datum("A2 sc")).orbits[0].stabilizer))
    assert (fin.numerator_text(), fin.denominator_text()) == ("6", "(1-t^2q^2)^2")


def test_finite_stabilizer_series():
    a1 = datum("A1 sc")
    b = principal_block(affine_blocks(a1))
    finite = replace(b, stabilizer=stabilizer_point(a1, (0,)), z_dim=0)
    assert block_algebra_series(finite).t_coefficients(3) == [2, 0, 0]


@pytest.mark.parametrize("spec", RANK_LE_2)
def test_stabilizers_fix_representatives(spec):
    assert stabilizer_check(affine_blocks(datum(spec))) == []


@pytest.mark.parametrize("spec", ["A1 sc", "A2 sc", "B2 sc", "G2 sc"])
def test_block_count_vs_cuspidal_data(spec):
    # each affine block is labelled by a cuspidal datum of some pseudo-Levi; the principal one always appears
    rd = datum(spec)
    ac = affine_blocks(rd)
    assert any(b.cuspidal == "trivial" and b.z_dim == rd.rank for b in ac.blocks)
    assert len(ac.blocks) >= len(cuspidal_data_of_G(rd))


def test_block_signatures_are_deterministic():
    a = block_signatures(affine_blocks(datum("B2 sc")))
    b = block_signatures(affine_blocks(datum("B2 sc")))
    assert a == b
