from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from charsheaves.cli import build_parser, run


def invoke(*argv):
    buf = io.StringIO()
    code = run(list(argv), stream=buf)
    return code, buf.getvalue()


def table(text, name):
    lines = text.splitlines()
    start = lines.index(f"## {name}") + 1
    rows = []
    for line in lines[start + 1:]:
        if line.startswith("#") or line.startswith("check\t"):
            break
        rows.append(line.split("\t"))
    return lines[start].split("\t"), rows


def test_defaults():
    args = build_parser().parse_args(["verify", "A1 sc"])
    assert (args.seed, args.radius, args.samples, args.format) == (0, 2, 100, "tsv")


def test_info():
    code, out = invoke("info", "B2 sc")
    assert code == 0
    assert "check\tweyl_order_matches_degrees\tPASS\t8 = 8" in out


def test_facets_columns():
    code, out = invoke("facets", "A1 sc")
    cols, rows = table(out, "facets")
    assert code == 0 and cols == ["facet_id", "dim", "vanishing_roots", "witness"]
    assert len(rows) == 3


def test_blocks_affine_a1_from_preset_file():
    code, out = invoke("blocks", "--affine", "A1sc.toml")
    cols, rows = table(out, "affine_blocks")
    assert code == 0 and len(rows) == 3
    assert cols[:5] == ["block_id", "pseudo_levi", "cuspidal", "z_dim", "stabilizer"]


def test_springer_gl1():
    code, out = invoke("springer", "GL1.toml", "--terms", "6")
    _, rows = table(out, "endo_series")
    assert code == 0 and rows[0][2] == "[1,1,1,1,1,1]"
    assert "check\tspringer_counting_identity\tPASS\t1 = 1" in out


def test_indres_character_values():
    code, out = invoke("indres", "A2 sc", "--levi", "1", "--char", "1,1")
    _, rows = table(out, "ind_result")
    principal = sorted((int(r[2]), r[3]) for r in rows if r[0] == "0")
    assert code == 0 and principal == [(1, "3"), (2, "0"), (3, "1")]


def test_bijection_and_basepoints():
    assert invoke("bijection", "GL(2)")[0] == 0
    assert invoke("basepoints", "A1 ad")[0] == 0


def test_verify_a2_sc():
    code, out = invoke("verify", "--samples", "100", "--seed", "0", "A2sc.toml")
    assert code == 0 and "FAIL" not in out


def test_json_round_trip():
    code, out = invoke("blocks", "A1 sc", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["passed"]
    assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == out


@pytest.mark.parametrize("argv", [["info", "Q7 sc"], ["info", "missing.toml"], ["indres", "A2 sc", "--levi", "9"],
                                  ["indres", "A2 sc", "--char", "irr:99"], ["blocks", "A4 sc"]])
def test_usage_errors(argv):
    assert invoke(*argv)[0] == 2


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate", "A1 sc"])
    assert exc.value.code == 2


def test_check_failure_exit_code(tmp_path):
    bad = tmp_path / "table.toml"
    bad.write_text('''format = 1
[[record]]
type = "A1"
key = "sc"
group = "SL(2)"
provenance = "wrong on purpose"
orbits = [{ label = "(2)", component_group = 2, local_systems = 2 }, { label = "(1,1)", component_group = 1, local_systems = 1 }]
total = 3
''')
    code, out = invoke("springer", "A1 sc", "--table", str(bad))
    assert code == 1 and "FAIL" in out
    # the override does not leak into later runs
    assert invoke("springer", "A1 sc")[0] == 0


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "charsheaves", "verify", "--colim", "--samples", "20", "--seed", "5", "A1 ad"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b"colimit_groupoid\tPASS" in first
