from __future__ import annotations

import pytest

from charsheaves.cuspidal import (ClassificationError, admitted_types, cuspidal_data_of_G, cuspidal_set, load_table,
                                  pair_count, partition_count, preset_for_record, relative_weyl, set_table_override,
                                  springer_identity_check)
from charsheaves.rootdata import parse_preset, simple_type_decomposition

from .conftest import datum


def test_torus_has_one_label():
    for spec in ("GL(1)", "T2"):
        rd = parse_preset(spec)
        assert len(cuspidal_set(simple_type_decomposition(rd, []))) == 1


def test_a1_sc_count_from_table():
    rd = datum("A1 sc")
    labels = cuspidal_set(simple_type_decomposition(rd, range(len(rd.roots))))
    assert len(labels) == 1


def test_product_rule():
    single = len(cuspidal_set(simple_type_decomposition(datum("A2 sc"), range(6))))
    rd = parse_preset("A2 sc x A2 sc")
    assert len(cuspidal_set(simple_type_decomposition(rd, range(len(rd.roots))))) == single * single


@pytest.mark.parametrize("spec,count", [("GL(1)", 1), ("GL(3)", 1), ("A1 sc", 2), ("A1 ad", 1), ("A2 sc", 3)])
def test_cuspidal_data_counts(spec, count):
    assert len(cuspidal_data_of_G(datum(spec))) == count


def test_relative_weyl_groups():
    a1 = datum("A1 sc")
    principal, cusp = cuspidal_data_of_G(a1)
    assert relative_weyl(a1, principal).group.order == 2
    assert relative_weyl(a1, cusp).group.order == 1
    a2 = datum("A2 sc")
    assert relative_weyl(a2, cuspidal_data_of_G(a2)[0]).group.order == 6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gl_identity_uses_partitions(n):
    rep = springer_identity_check(datum(f"GL({n})"))
    assert rep.passed
    assert rep.lhs == rep.rhs == partition_count(n)


def test_partition_counts():
    assert [partition_count(n) for n in range(1, 7)] == [1, 2, 3, 5, 7, 11]


@pytest.mark.parametrize("record", load_table().keys())
def test_every_table_record_is_admitted(record):
    rd = parse_preset(preset_for_record(*record))
    rep = springer_identity_check(rd)
    assert rep.passed, rep


def test_admitted_types_cover_shipped_presets():
    keys = set(admitted_types())
    assert ("A1", "sc") in keys and ("G2", "sc") in keys


def test_missing_type_is_an_error():
    with pytest.raises(ClassificationError):
        pair_count(parse_preset("A4 sc"))


def test_table_override(tmp_path):
    broken = tmp_path / "table.toml"
    broken.write_text('''format = 1
[[record]]
type = "A1"
key = "sc"
group = "SL(2)"
provenance = "deliberately wrong: the cuspidal is dropped"
orbits = [
  { label = "(2)", component_group = 2, local_systems = 2 },
  { label = "(1,1)", component_group = 1, local_systems = 1 },
]
total = 3
''')
    try:
        set_table_override(broken)
        rep = springer_identity_check(datum("A1 sc"))
        assert not rep.passed
    finally:
        set_table_override(None)
    assert springer_identity_check(datum("A1 sc")).passed
