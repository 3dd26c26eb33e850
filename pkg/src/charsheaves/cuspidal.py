"""Cuspidal data: classification tables, the set K_G, relative Weyl groups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .affweyl import normalizer_parabolic
from .groups import FiniteGroup
from .rootdata import (FORMAT_VERSION, PseudoLeviType, RootDatum, load_toml, simple_type_decomposition,
                       span_closure, weyl_group)


class ClassificationError(LookupError):
    """Classification data is missing or inconsistent."""


# ---------------------------------------------------------------------------
# Classification table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cuspidal:
    orbit: str
    name: str
    central: tuple  # coefficients on fundamental weights

    @property
    def label(self) -> str:
        return f"{self.orbit}/{self.name}"


@dataclass(frozen=True)
class Orbit:
    label: str
    component_group: int
    local_systems: int
    cuspidals: tuple


@dataclass(frozen=True)
class Record:
    cartan_type: str
    key: str
    group: str
    provenance: str
    orbits: tuple
    total: int

    @property
    def cuspidals(self) -> tuple:
        return tuple(c for o in self.orbits for c in o.cuspidals)


class ClassificationTable:
    def __init__(self, records: Iterable[Record]):
        self.records = {(r.cartan_type, r.key): r for r in records}

    def lookup(self, cartan_type: str, key: str) -> Record:
        rec = self.records.get((cartan_type, key))
        if rec is None:
            raise ClassificationError(f"classification data absent for type {cartan_type} [{key}]")
        return rec

    def __contains__(self, item) -> bool:
        return item in self.records

    def keys(self) -> list:
        return sorted(self.records)


def _parse_table(doc: dict) -> ClassificationTable:
    if doc.get("format") != FORMAT_VERSION:
        raise ClassificationError(f"unsupported classification format {doc.get('format')}")
    records = []
    for raw in doc.get("record", []):
        orbits = []
        for o in raw["orbits"]:
            cus = tuple(Cuspidal(o["label"], c["name"], tuple(c["central"])) for c in o.get("cuspidal", []))
            orbits.append(Orbit(o["label"], int(o["component_group"]), int(o["local_systems"]), cus))
        rec = Record(raw["type"], raw["key"], raw.get("group", ""), raw["provenance"], tuple(orbits), int(raw["total"]))
        if sum(o.local_systems for o in rec.orbits) != rec.total:
            raise ClassificationError(f"record {rec.cartan_type} [{rec.key}] total does not match its orbits")
        records.append(rec)
    return ClassificationTable(records)


@lru_cache(maxsize=None)
def _default_table() -> ClassificationTable:
    text = resources.files("charsheaves").joinpath("data/classification.toml")
    with resources.as_file(text) as path:
        return _parse_table(load_toml(path))


_OVERRIDE: list = []


def load_table(path: Optional[Path] = None) -> ClassificationTable:
    if path is not None:
        return _parse_table(load_toml(Path(path)))
    if _OVERRIDE:
        return _OVERRIDE[-1]
    return _default_table()


def set_table_override(path: Optional[Path]) -> None:
    """Use a different classification file for subsequent queries."""
    _OVERRIDE.clear()
    if path is not None:
        _OVERRIDE.append(load_table(path))


# ---------------------------------------------------------------------------
# Cuspidal labels of pseudo-Levi subgroups
# ---------------------------------------------------------------------------

# A label is a sorted tuple of (factor root indices, cuspidal label) pairs.
Label = tuple


def _label(parts: Iterable[tuple]) -> Label:
    return tuple(sorted((tuple(sorted(roots)), name) for roots, name in parts))


def cuspidal_set_split(pl: PseudoLeviType, table: Optional[ClassificationTable] = None) -> list[Label]:
    """Per-factor table lookup; valid when the projected lattice splits."""
    table = table or load_table()
    per = []
    for f in pl.factors:
        rec = table.lookup(f.cartan_type, f.lattice_key)
        per.append([(f.roots, f"{f.cartan_type}:{c.label}") for c in rec.cuspidals])
    return sorted(_label(combo) for combo in product(*per))


def cuspidal_set_central(pl: PseudoLeviType, table: Optional[ClassificationTable] = None) -> list[Label]:
    """Cuspidals of the simply connected cover whose central character is
    trivial on the projected cocharacter lattice."""
    table = table or load_table()
    per = []
    for f in pl.factors:
        rec = table.lookup(f.cartan_type, "sc")
        per.append([(f, c) for c in rec.cuspidals])
    out = []
    for combo in product(*per):
        zeta = tuple(x for _, c in combo for x in c.central)
        if all(la.dot(zeta, v).denominator == 1 for v in pl.projected_basis):
            out.append(_label((f.roots, f"{f.cartan_type}:{c.label}") for f, c in combo))
    return sorted(out)


def cuspidal_set(pl: PseudoLeviType, table: Optional[ClassificationTable] = None) -> list[Label]:
    """Cuspidal labels of a pseudo-Levi; the torus part contributes one trivial label."""
    if pl.split:
        return cuspidal_set_split(pl, table)
    return cuspidal_set_central(pl, table)


def transport_label(rd: RootDatum, perm: Sequence[int], label: Label) -> Label:
    """Image of a label under a Weyl element given by its root permutation."""
    return _label(((perm[i] for i in roots), name) for roots, name in label)


def label_text(label: Label) -> str:
    if not label:
        return "trivial"
    return " x ".join(name for _, name in label)


# ---------------------------------------------------------------------------
# The set K_G of cuspidal data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CuspidalDatum:
    levi: tuple  # standard simple-root subset (ambient root indices)
    label: Label
    z_dim: int

    def describe(self, rd: RootDatum) -> str:
        names = [rd.simple.index(i) + 1 for i in self.levi]
        return f"M={names} F={label_text(self.label)}"

    def is_principal(self) -> bool:
        return not self.levi


def levi_roots(rd: RootDatum, subset: Iterable[int]) -> frozenset:
    return span_closure(rd, subset)


def _canonical_form(rd: RootDatum, roots: frozenset, label: Label) -> tuple:
    best = None
    for w in weyl_group(rd).elements:
        perm = rd.permutation(w)
        key = (tuple(sorted(perm[i] for i in roots)), transport_label(rd, perm, label))
        if best is None or key < best:
            best = key
    return best


def _z_dim(rd: RootDatum, roots: Iterable[int]) -> int:
    rows = [rd.roots[i] for i in roots]
    return rd.rank - (la.rank(rows) if rows else 0)


def standard_levi_subsets(rd: RootDatum) -> list[tuple]:
    out = []
    for mask in range(2 ** len(rd.simple)):
        out.append(tuple(s for k, s in enumerate(rd.simple) if mask >> k & 1))
    return sorted(out, key=lambda s: (len(s), s))


def cuspidal_data_of_G(rd: RootDatum, table: Optional[ClassificationTable] = None) -> list[CuspidalDatum]:
    """One datum per W-conjugacy class of (Levi, cuspidal label)."""
    seen = {}
    for subset in standard_levi_subsets(rd):
        roots = levi_roots(rd, subset)
        pl = simple_type_decomposition(rd, roots)
        for label in cuspidal_set(pl, table):
            canon = _canonical_form(rd, roots, label)
            if canon not in seen:
                seen[canon] = CuspidalDatum(subset, label, _z_dim(rd, roots))
    return list(seen.values())


def datum_canonical_form(rd: RootDatum, datum: CuspidalDatum) -> tuple:
    return _canonical_form(rd, levi_roots(rd, datum.levi), datum.label)


# ---------------------------------------------------------------------------
# Relative Weyl groups
# ---------------------------------------------------------------------------

@dataclass
class RelativeWeyl:
    group: FiniteGroup  # matrices on t, a complement to W_M in N_W(W_M)
    z_basis: tuple
    z_action: list  # per element: matrix on z_M in z_basis coordinates

    @property
    def order(self) -> int:
        return self.group.order


def relative_weyl(rd: RootDatum, datum: CuspidalDatum) -> RelativeWeyl:
    """W_G^kappa = N_W(W_M)/W_M, realized as {w in N : w(Phi_M^+) = Phi_M^+}.

    Elements that would move the cuspidal label are dropped; with the
    shipped tables none ever is.
    """
    group = weyl_group(rd)
    roots = levi_roots(rd, datum.levi)
    norm = normalizer_parabolic(rd, roots)
    pos = frozenset(i for i in roots if rd.is_positive(i))
    mats = []
    for k in norm.normalizer:
        w = group.elements[k]
        perm = rd.permutation(w)
        if frozenset(perm[i] for i in pos) != pos:
            continue
        if transport_label(rd, perm, datum.label) != datum.label:
            continue
        mats.append(w)
    rel = FiniteGroup(mats, sort_key=lambda m: (rd.length(m), m))
    z = norm.z_basis
    actions = []
    if z:
        zt = la.transpose(z)
        for w in rel.elements:
            cols = [la.solve(zt, la.matvec(w, v)) for v in z]
            actions.append(la.transpose(tuple(cols)))
        if len(set(actions)) != rel.order:
            raise AssertionError("relative Weyl group does not act faithfully on z_M")
    elif rel.order != 1:
        raise AssertionError("nontrivial relative Weyl group with z_M = 0")
    return RelativeWeyl(rel, z, actions)


# ---------------------------------------------------------------------------
# Generalized Springer counting identity
# ---------------------------------------------------------------------------

def partition_count(n: int) -> int:
    table = [1] + [0] * n
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            table[m] += table[m - k]
    return table[n]


def is_gl(rd: RootDatum) -> bool:
    return rd.name.startswith("GL(")


def pair_count(rd: RootDatum, table: Optional[ClassificationTable] = None) -> int:
    """#{(O, L)} on the nilpotent cone, from the table for G / Z(G)^0."""
    table = table or load_table()
    pl = simple_type_decomposition(rd, range(len(rd.roots)))
    if not pl.split:
        raise ClassificationError("pair count for non-split semisimple quotient is not tabulated")
    out = 1
    for f in pl.factors:
        out *= table.lookup(f.cartan_type, f.lattice_key).total
    return out


@dataclass(frozen=True)
class SpringerReport:
    name: str
    lhs_terms: tuple  # (description, #Irr)
    lhs: int
    rhs: int
    rhs_source: str
    rhs_independent: Optional[int]

    @property
    def passed(self) -> bool:
        ok = self.lhs == self.rhs
        if self.rhs_independent is not None:
            ok = ok and self.rhs_independent == self.rhs
        return ok


def springer_identity_check(rd: RootDatum, table: Optional[ClassificationTable] = None) -> SpringerReport:
    data = cuspidal_data_of_G(rd, table)
    terms = []
    for d in data:
        rel = relative_weyl(rd, d)
        terms.append((d.describe(rd), rel.group.num_classes))
    lhs = sum(n for _, n in terms)
    rhs = pair_count(rd, table)
    indep = partition_count(rd.rank) if is_gl(rd) else None
    source = "table" + (" + partitions" if indep is not None else "")
    return SpringerReport(rd.name, tuple(terms), lhs, rhs, source, indep)


def admitted_types(table: Optional[ClassificationTable] = None) -> list[tuple]:
    """(type, key) pairs of the table; each must pass its counting identity."""
    return (table or load_table()).keys()


def preset_for_record(cartan_type: str, key: str) -> str:
    letter = cartan_type[0]
    if key in ("sc", "ad"):
        return f"{cartan_type} {key}"
    d = int(key.split("/")[1])
    if letter != "A":
        raise ClassificationError(f"no preset for {cartan_type} [{key}]")
    return f"{cartan_type} {d}"

