"""Batch front end.

Every subcommand takes a root datum (a preset such as ``"A2 sc"`` or a TOML
file) and prints tables and check lines.  Exit status: 0 when every check
passes, 1 when a check fails, 2 for usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .affweyl import alcove_stabilizer
from .apartment import FINITE, alcove_facets_by_grid, facet_of_point, facets_of_closed_alcove, simplex_face_count
from .basepoints import assign_s, basepoint_suite
from .blocks import (TheoremCheckError, affine_blocks, algebra_presentation, bijection_check, block_algebra_series,
                     finite_C, principal_block_check, stabilizer_check)
from .cuspidal import ClassificationError, label_text, set_table_override, springer_identity_check
from .facetcat import (SHIPPED_FIBER_CASES, WindowTooLarge, alcove_equivalence_check, build_truncation,
                       colim_check, one_category_check, run_fiber_case)
from .indres import (affine_res_incidence, distinguished_module_characters, frobenius_check, ind_K,
                     irreducible_characters, levi_setup, lp_text, mackey_check, res_K, res_springer_rank,
                     springer_endo_series, springer_series_bruteforce, GradedCharacter)
from .linalg import matvec, rank
from .rootdata import (RootDatum, RootDatumError, invariant_form, parse_root_datum, simple_type_of, weyl_group,
                       weyl_order_from_degrees)
from .series import sym_series

SCHEMA = 1


# ---------------------------------------------------------------------------
# Output model
# ---------------------------------------------------------------------------

@dataclass
class Table:
    name: str
    columns: list
    rows: list = field(default_factory=list)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Output:
    command: str
    datum: str
    tables: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    def table(self, name: str, columns: Sequence[str]) -> Table:
        t = Table(name, list(columns))
        self.tables.append(t)
        return t

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _cell(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_cell(x) for x in v]
    return v


def _tsv_cell(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_tsv_cell(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(_cell(v))


def render_tsv(out: Output) -> str:
    lines = [f"# {out.command}\t{out.datum}"]
    for t in out.tables:
        lines.append(f"## {t.name}")
        lines.append("\t".join(t.columns))
        for row in t.rows:
            lines.append("\t".join(_tsv_cell(v) for v in row))
    for c in out.checks:
        lines.append("\t".join(["check", c.name, "PASS" if c.passed else "FAIL", c.detail]).rstrip("\t"))
    return "\n".join(lines) + "\n"


def to_json(out: Output) -> dict:
    return {
        "schema": SCHEMA,
        "command": out.command,
        "datum": out.datum,
        "tables": [{"name": t.name, "columns": t.columns, "rows": [[_cell(v) for v in r] for r in t.rows]}
                   for t in out.tables],
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in out.checks],
        "passed": out.passed,
    }


def render_json(out: Output) -> str:
    return json.dumps(to_json(out), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _vec(v: Sequence) -> list:
    return [str(Fraction(x)) for x in v]


def cmd_info(rd: RootDatum, args, out: Output) -> None:
    s = rd.summary()
    t = out.table("summary", ["key", "value"])
    for k in sorted(s):
        t.rows.append([k, s[k]])
    group = weyl_group(rd)
    t.rows.append(["weyl_order", group.order])
    t.rows.append(["weyl_classes", group.num_classes])
    t.rows.append(["omega_order", alcove_stabilizer(rd).quotient_order])
    expected = 1
    for comp in rd.components:
        typ = simple_type_of(rd, comp)
        expected *= weyl_order_from_degrees(typ[0], int(typ[1:]))
    out.check("weyl_order_matches_degrees", expected == group.order, f"{group.order} = {expected}")
    form = invariant_form(rd)
    g = out.table("invariant_form", ["row"] + [f"c{k}" for k in range(rd.rank)])
    for k, row in enumerate(form.gram):
        g.rows.append([k] + _vec(row))
    out.check("invariant_form_is_invariant", form.is_invariant(group))


def cmd_facets(rd: RootDatum, args, out: Output) -> None:
    if args.finite:
        pts = {}
        for w in weyl_group(rd).elements:
            for f in facets_of_closed_alcove(rd):
                x = matvec(w, f.witness)
                ff = facet_of_point(rd, x, FINITE)
                pts.setdefault(ff.key, ff)
        facets = sorted(pts.values(), key=lambda f: (f.dim, f.key))
    else:
        facets = facets_of_closed_alcove(rd)
    t = out.table("facets", ["facet_id", "dim", "vanishing_roots", "witness"])
    for k, f in enumerate(facets):
        t.rows.append([k, f.dim, sorted(f.zero_roots), _vec(f.witness)])
    if not args.finite:
        grid = alcove_facets_by_grid(rd)
        keys = {f.key for f in facets}
        out.check("alcove_facet_count", len(facets) == simplex_face_count(rd) == len(grid) and keys == grid,
                  f"vertex subsets {len(facets)}, grid {len(grid)}, formula {simplex_face_count(rd)}")


def cmd_blocks(rd: RootDatum, args, out: Output) -> None:
    both = not (args.finite or args.affine)
    if args.finite or both:
        fc = finite_C(rd)
        t = out.table("finite_blocks", ["orbit_id", "vanishing_roots", "borel", "cuspidal", "orbit_size",
                                        "W_c", "W_eps", "numerator", "denominator"])
        for k, o in enumerate(fc.orbits):
            rep = o.representative
            z = rd.rank - rank([rd.roots[i] for i, _ in rep.equations])
            series = sym_series(z).scale(len(o.stabilizer))
            t.rows.append([k, [i for i, _ in rep.equations], list(rep.borel), label_text(rep.label), o.size,
                           len(o.stabilizer), o.w_eps_order, series.numerator_text(), series.denominator_text()])
            out.check(f"finite_orbit_{k}_W_c_iso_W_eps", o.injective and len(o.stabilizer) == o.w_eps_order)
    if args.affine or both:
        ac = affine_blocks(rd)
        t = out.table("affine_blocks", ["block_id", "pseudo_levi", "cuspidal", "z_dim", "stabilizer", "kind",
                                        "members", "numerator", "denominator"])
        for b in ac.blocks:
            s = block_algebra_series(b)
            t.rows.append([b.block_id, b.pseudo_levi, b.cuspidal, b.z_dim, b.stabilizer.describe(),
                           b.algebra_kind, len(b.members), s.numerator_text(), s.denominator_text()])
        p = out.table("presentations", ["block_id", "algebra"])
        for b in ac.blocks:
            p.rows.append([b.block_id, algebra_presentation(b)])
        bad = stabilizer_check(ac)
        out.check("stabilizers_fix_representatives", not bad, "; ".join(bad[:3]))
        pr = principal_block_check(rd, ac)
        out.check("principal_block_is_full", pr.passed,
                  f"lattice rank {pr.lattice_rank} index {pr.lattice_index}, finite part {pr.finite_part_order}"
                  f" of {pr.weyl_order}, zDim {pr.z_dim}")


def cmd_bijection(rd: RootDatum, args, out: Output) -> None:
    r = bijection_check(rd)
    t = out.table("counts", ["K_G", "D_G", "C_G//W"])
    t.rows.append([r.k_count, r.d_count, r.orbit_count])
    out.check("counts_agree", r.k_count == r.d_count == r.orbit_count)
    out.check("h_injective", r.injective)
    out.check("h_surjective", r.surjective)
    out.check("orbit_stabilizer", r.orbit_stabilizer)
    out.check("W_c_iso_W_eps", r.w_c_matches, "; ".join(r.failures[:3]))


def _parse_levi(rd: RootDatum, text: str) -> tuple:
    if not text.strip():
        return ()
    try:
        pos = [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError:
        raise RootDatumError(f"malformed Levi subset '{text}'") from None
    if any(p < 1 or p > len(rd.simple) for p in pos):
        raise RootDatumError(f"Levi subset {pos} is outside 1..{len(rd.simple)}")
    return tuple(sorted(rd.simple[p - 1] for p in pos))


def _character(group, spec: str) -> GradedCharacter:
    if spec.startswith("irr:"):
        k = int(spec[4:])
        chars = irreducible_characters(group)
        if not 0 <= k < len(chars):
            raise RootDatumError(f"irreducible index {k} outside 0..{len(chars) - 1}")
        return chars[k]
    vals = [Fraction(v) for v in spec.split(",")]
    return GradedCharacter.from_values(group, vals)


def cmd_indres(rd: RootDatum, args, out: Output) -> None:
    subset = _parse_levi(rd, args.levi)
    setup = levi_setup(rd, subset)
    m = out.table("matching", ["L_datum", "L_description", "G_datum", "W_L_kappa", "W_G_kappa"])
    for k, (j, emb) in enumerate(setup.match):
        m.rows.append([k, setup.data_l[k].describe(setup.levi), j, emb.source.order, emb.target.order])
    if args.char is not None:
        if args.direction == "ind":
            grp = setup.groups_l[args.datum_index]
            y = {args.datum_index: _character(grp, args.char)}
            result = ind_K(setup, y)
        else:
            grp = setup.groups_g[args.datum_index]
            x = {args.datum_index: _character(grp, args.char)}
            result = res_K(setup, x)
        t = out.table(f"{args.direction}_result", ["datum", "class", "class_size", "value"])
        for k in sorted(result):
            chi = result[k]
            for c, members in enumerate(chi.group.conjugacy_classes):
                t.rows.append([k, c, len(members), lp_text(chi.values[c])])
    fr = frobenius_check(setup)
    out.check("frobenius_reciprocity", fr.passed, f"{fr.pairs_checked} basis pairs")
    mk = mackey_check(setup)
    out.check("mackey_double_cosets", mk.passed, f"{mk.double_cosets} double cosets, pairing {mk.pairing}")
    if args.affine:
        inc = affine_res_incidence(rd, subset)
        t = out.table("affine_incidence", ["G_block", "L_block", "conjugator", "stabilizer_inclusion"])
        for row in inc.rows:
            for lb, conj, ok in row.entries:
                t.rows.append([row.g_block, lb, conj.describe(), ok])
        out.check("incidence_partition", inc.passed, "; ".join(inc.failures[:3]))


def cmd_springer(rd: RootDatum, args, out: Output) -> None:
    s = springer_endo_series(rd)
    coeffs = s.t_coefficients(args.terms)
    t = out.table("endo_series", ["numerator", "denominator", "coefficients"])
    t.rows.append([s.numerator_text(), s.denominator_text(), coeffs])
    out.check("endo_series_expansion", coeffs == springer_series_bruteforce(rd, args.terms))
    rs = res_springer_rank(rd)
    r = out.table("res_springer", ["rank", "bimodule_count"])
    r.rows.append([rs.rank, rs.bimodule_count])
    out.check("res_springer_consistent", rs.endo_consistent and rs.rank == weyl_group(rd).order)
    rep = springer_identity_check(rd)
    i = out.table("springer_identity", ["datum", "irr_W_kappa"])
    for desc, n in rep.lhs_terms:
        i.rows.append([desc, n])
    out.check("springer_counting_identity", rep.passed, f"{rep.lhs} = {rep.rhs} ({rep.rhs_source})")
    d = distinguished_module_characters(rd, args.terms)
    c = out.table("distinguished_characters", ["class", "sign", "regular", "cohomology"])
    for k in range(d.sign.group.num_classes):
        c.rows.append([k, lp_text(d.sign.values[k]), lp_text(d.regular.values[k]),
                       lp_text(d.cohomology.values[k]).replace("q", "t")])


def cmd_basepoints(rd: RootDatum, args, out: Output) -> None:
    asg = assign_s(rd, args.radius)
    t = out.table("basepoints", ["facet_id", "dim", "construction", "s"])
    for k, f in enumerate(asg.window.objects):
        t.rows.append([k, f.dim, asg.log[f], _vec(asg.points[f])])
    for rep in basepoint_suite(rd, args.radius):
        out.check(f"basepoints_{rep.name}", rep.passed, "; ".join([f"{rep.checked} cases"] + rep.failures[:2]))


def cmd_verify(rd: RootDatum, args, out: Output) -> None:
    chosen = [args.facetcat, args.colim, args.fibers, args.basepoints]
    run_all = not any(chosen)
    if args.facetcat or run_all:
        reports = {}
        for radius in (args.radius, args.radius + 1):
            cat = build_truncation(rd, radius)
            reports[radius] = (one_category_check(cat), alcove_equivalence_check(cat))
        one, eq = reports[args.radius]
        one_next, eq_next = reports[args.radius + 1]
        t = out.table("facet_category", ["radius", "objects", "one_cells", "max_two_cells", "alcove_equivalence"])
        for radius, (o, e) in sorted(reports.items()):
            t.rows.append([radius, o.objects, o.one_cells, o.max_two_cells, e.status])
        out.check("one_category", one.passed, "; ".join(one.failures[:2]))
        out.check("alcove_equivalence", eq.passed, eq.status)
        out.check("radius_stable", one.signature() == one_next.signature() and eq.signature() == eq_next.signature(),
                  f"radius {args.radius} vs {args.radius + 1}")
    if args.fibers or run_all:
        t = out.table("alpha_fibers", ["case", "facets", "reduced_euler", "connected"])
        for case in SHIPPED_FIBER_CASES:
            if case.preset != rd.name and not args.fibers:
                continue
            f = run_fiber_case(case)
            t.rows.append([case.name, f.size, f.euler, f.connected])
            out.check(f"fiber[{case.name}]", f.passed, "proxy: reduced Euler characteristic 0 and connected")
    if args.colim or run_all:
        rep = colim_check(rd, args.samples, args.seed, args.radius)
        fails = rep.failures
        t = out.table("colimit", ["samples", "seed", "failures", "max_zigzag", "stabilizer_orders"])
        t.rows.append([len(rep.samples), args.seed, len(fails), max((s.zigzag_length for s in rep.samples), default=0),
                       sorted({s.stabilizer_direct for s in rep.samples})])
        out.check("colimit_groupoid", rep.passed,
                  "; ".join(f"x={_vec(s.point)}" for s in fails[:3]) or "pi_0 and automorphism orders")
    if args.basepoints or run_all:
        for r in basepoint_suite(rd, args.radius):
            out.check(f"basepoints_{r.name}", r.passed, f"{r.checked} cases")


COMMANDS = {
    "info": cmd_info,
    "facets": cmd_facets,
    "blocks": cmd_blocks,
    "bijection": cmd_bijection,
    "indres": cmd_indres,
    "springer": cmd_springer,
    "basepoints": cmd_basepoints,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("datum", help='preset such as "A2 sc", "GL(3)", "A1 ad x GL(1)", or a .toml file')
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--table", type=Path, default=None, help="classification file overriding the shipped one")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--radius", type=int, default=2)
    common.add_argument("--samples", type=int, default=100)

    parser = argparse.ArgumentParser(prog="charsheaves", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="root datum summary")
    p = sub.add_parser("facets", parents=[common], help="faces of the fundamental alcove")
    p.add_argument("--finite", action="store_true", help="facets of the finite arrangement instead")
    p = sub.add_parser("blocks", parents=[common], help="finite and affine block tables")
    p.add_argument("--finite", action="store_true")
    p.add_argument("--affine", action="store_true")
    sub.add_parser("bijection", parents=[common], help="K_G = D_G = C_G // W")
    p = sub.add_parser("indres", parents=[common], help="induction and restriction of graded characters")
    p.add_argument("--levi", default="", help="1-based simple root positions, e.g. 1,2 (empty: the torus)")
    p.add_argument("--direction", choices=("ind", "res"), default="ind")
    p.add_argument("--datum", dest="datum_index", type=int, default=0,
                   help="index of the cuspidal datum the character lives on")
    p.add_argument("--char", default=None, help="irr:K for the K-th irreducible, or comma-separated class values")
    p.add_argument("--affine", action="store_true", help="also print the affine incidence table")
    p = sub.add_parser("springer", parents=[common], help="Springer sheaf corollaries")
    p.add_argument("--terms", type=int, default=20)
    sub.add_parser("basepoints", parents=[common], help="equivariant base points s_I")
    p = sub.add_parser("verify", parents=[common], help="facet category, fibers, colimit and base point suites")
    p.add_argument("--facetcat", action="store_true")
    p.add_argument("--colim", action="store_true")
    p.add_argument("--fibers", action="store_true")
    p.add_argument("--basepoints", action="store_true")
    return parser


def run(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        set_table_override(args.table)
        rd = parse_root_datum(args.datum)
        out = Output(args.command, rd.name or args.datum)
        COMMANDS[args.command](rd, args, out)
    except (RootDatumError, ClassificationError, FileNotFoundError, WindowTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TheoremCheckError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    finally:
        set_table_override(None)
    stream.write(render_json(out) if args.format == "json" else render_tsv(out))
    return 0 if out.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
