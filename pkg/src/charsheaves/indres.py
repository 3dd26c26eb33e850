"""Induction and restriction at the level of graded characters and orbits."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from . import linalg as la
from .affweyl import AffineWeylElement
from .blocks import AffineC, TheoremCheckError, TripleC, _support_map, act_linear, affine_blocks, locate
from .cuspidal import (ClassificationTable, CuspidalDatum, cuspidal_data_of_G, datum_canonical_form, levi_roots,
                       relative_weyl, transport_label)
from .groups import FiniteGroup, NonRationalCharacterError
from .rootdata import LeviEmbedding, RootDatum, levi_subdatum, weyl_group
from .series import BigradedSeries, cohomology_torus_series

# ---------------------------------------------------------------------------
# Laurent polynomials in q: dicts exponent -> Fraction
# ---------------------------------------------------------------------------

Laurent = dict


def lp(*pairs) -> Laurent:
    """Laurent polynomial from (exponent, coefficient) pairs."""
    out: dict = defaultdict(Fraction)
    for e, c in pairs:
        out[e] += Fraction(c)
    return {e: c for e, c in sorted(out.items()) if c}


def lp_const(c) -> Laurent:
    return lp((0, c))


def lp_add(a: Mapping, b: Mapping) -> Laurent:
    return lp(*a.items(), *b.items())


def lp_scale(c, a: Mapping) -> Laurent:
    return lp(*((e, c * x) for e, x in a.items()))


def lp_mul(a: Mapping, b: Mapping) -> Laurent:
    return lp(*((e + f, x * y) for e, x in a.items() for f, y in b.items()))


def lp_bar(a: Mapping) -> Laurent:
    """q -> q^{-1}."""
    return lp(*((-e, x) for e, x in a.items()))


def lp_text(a: Mapping) -> str:
    if not a:
        return "0"
    parts = []
    for e, c in sorted(a.items()):
        if e == 0:
            parts.append(str(c))
        else:
            mono = "q" if e == 1 else f"q^{e}"
            parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}{mono}")
    return "+".join(parts).replace("+-", "-")


# ---------------------------------------------------------------------------
# Graded characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedCharacter:
    group: FiniteGroup
    values: tuple  # per conjugacy class: Laurent dict

    @classmethod
    def from_values(cls, group: FiniteGroup, values: Sequence) -> "GradedCharacter":
        vals = []
        for v in values:
            if isinstance(v, Mapping):
                vals.append(lp(*v.items()))
            else:
                f = Fraction(v)
                vals.append(lp_const(f))
        if len(vals) != group.num_classes:
            raise ValueError("need one value per conjugacy class")
        return cls(group, tuple(vals))

    def at(self, element: int) -> Laurent:
        return self.values[self.group.class_of(element)]

    def __add__(self, other: "GradedCharacter") -> "GradedCharacter":
        return GradedCharacter(self.group, tuple(lp_add(a, b) for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "GradedCharacter":
        return GradedCharacter(self.group, tuple(lp_scale(c, a) for a in self.values))

    def shift(self, n: int) -> "GradedCharacter":
        return GradedCharacter(self.group, tuple(lp(*((e + n, x) for e, x in a.items())) for a in self.values))

    def dimension(self) -> Laurent:
        return self.values[0]

    def is_zero(self) -> bool:
        return not any(self.values)

    def plain(self) -> list:
        """Values at q = 1."""
        return [sum(v.values(), Fraction(0)) for v in self.values]

    def text(self) -> list[str]:
        return [lp_text(v) for v in self.values]


def zero_character(group: FiniteGroup) -> GradedCharacter:
    return GradedCharacter(group, tuple({} for _ in range(group.num_classes)))


def irreducible_characters(group: FiniteGroup) -> list[GradedCharacter]:
    table = group.character_table()
    out = []
    for row in table:
        if any(Fraction(x).denominator != 1 for x in row):
            raise NonRationalCharacterError("character value is not an integer")
        out.append(GradedCharacter.from_values(group, row))
    return out


def trivial_character(group: FiniteGroup) -> GradedCharacter:
    return GradedCharacter.from_values(group, [1] * group.num_classes)


def sign_character(group: FiniteGroup) -> GradedCharacter:
    vals = [la.det(group.elements[c[0]]) for c in group.conjugacy_classes]
    return GradedCharacter.from_values(group, vals)


def regular_character(group: FiniteGroup) -> GradedCharacter:
    vals = [group.order] + [0] * (group.num_classes - 1)
    return GradedCharacter.from_values(group, vals)


def inner(chi: GradedCharacter, psi: GradedCharacter) -> Laurent:
    """Graded Hom dimension: (1/|G|) sum_g conj(chi(g)) psi(g), conj inverting g and q."""
    g = chi.group
    if psi.group is not g:
        raise ValueError("characters of different groups")
    total: Laurent = {}
    for cls_idx, members in enumerate(g.conjugacy_classes):
        inv_cls = g.class_of(g.inv(members[0]))
        term = lp_mul(lp_bar(chi.values[inv_cls]), psi.values[cls_idx])
        total = lp_add(total, lp_scale(len(members), term))
    return lp_scale(Fraction(1, g.order), total)


@dataclass(frozen=True)
class Embedding:
    """Injective homomorphism H -> G given on element indices."""

    source: FiniteGroup
    target: FiniteGroup
    image: tuple  # image[h] = index in target

    @classmethod
    def conjugated(cls, source: FiniteGroup, target: FiniteGroup, w: Sequence) -> "Embedding":
        winv = la.inverse(w)
        img = []
        for u in source.elements:
            m = la.matmul(la.matmul(w, u), winv)
            if m not in target:
                raise TheoremCheckError("conjugated subgroup is not contained in the target")
            img.append(target.index(m))
        if len(set(img)) != len(img):
            raise TheoremCheckError("embedding is not injective")
        return cls(source, target, tuple(img))


def restrict(chi: GradedCharacter, emb: Embedding) -> GradedCharacter:
    h = emb.source
    vals = [chi.at(emb.image[c[0]]) for c in h.conjugacy_classes]
    return GradedCharacter(h, tuple(vals))


def induce(chi: GradedCharacter, emb: Embedding) -> GradedCharacter:
    """(Ind chi)(g) = (1/|H|) sum_{x in G} chi(x g x^-1) over x g x^-1 in H."""
    g = emb.target
    h = emb.source
    pre = {t: s for s, t in enumerate(emb.image)}
    vals = []
    for members in g.conjugacy_classes:
        rep = members[0]
        total: Laurent = {}
        for x in range(g.order):
            y = g.conj(x, rep)
            s = pre.get(y)
            if s is not None:
                total = lp_add(total, chi.at(s))
        vals.append(lp_scale(Fraction(1, h.order), total))
    return GradedCharacter(g, tuple(vals))


# ---------------------------------------------------------------------------
# K-classes over cuspidal data
# ---------------------------------------------------------------------------

@dataclass
class LeviSetup:
    """Cuspidal data of G and of a standard Levi L with the matching between them."""

    rd: RootDatum
    levi: RootDatum
    embedding: LeviEmbedding
    data_g: list
    data_l: list
    groups_g: list  # relative Weyl groups (FiniteGroup) per G datum
    groups_l: list
    match: list  # per L datum: (G datum index, Embedding)


def _conjugator(rd: RootDatum, src_roots: frozenset, src_label, dst_roots: frozenset, dst_label) -> tuple:
    """w in W with w(Phi_M) = Phi_M', w(Phi_M^+) = Phi_M'^+, w F = F'."""
    src_pos = frozenset(i for i in src_roots if rd.is_positive(i))
    dst_pos = frozenset(i for i in dst_roots if rd.is_positive(i))
    for w in weyl_group(rd).elements:
        perm = rd.permutation(w)
        if frozenset(perm[i] for i in src_pos) == dst_pos and transport_label(rd, perm, src_label) == dst_label:
            return w
    raise TheoremCheckError("no conjugator between matched cuspidal data")


def levi_setup(rd: RootDatum, simple_subset: Sequence[int], table: Optional[ClassificationTable] = None) -> LeviSetup:
    levi, emb = levi_subdatum(rd, simple_subset)
    data_g = cuspidal_data_of_G(rd, table)
    data_l = cuspidal_data_of_G(levi, table)
    groups_g = [relative_weyl(rd, d).group for d in data_g]
    groups_l = [relative_weyl(levi, d).group for d in data_l]
    canon_g = {datum_canonical_form(rd, d): k for k, d in enumerate(data_g)}
    to_g = emb.to_ambient
    match = []
    for k, d in enumerate(data_l):
        roots_l = frozenset(to_g[i] for i in levi_roots(levi, d.levi))
        label_g = transport_label(rd, to_g, d.label)
        simple_g = tuple(sorted(to_g[i] for i in d.levi))
        datum_g = CuspidalDatum(simple_g, label_g, d.z_dim)
        canon = datum_canonical_form(rd, datum_g)
        if canon not in canon_g:
            raise TheoremCheckError(f"L-datum {d.describe(levi)} has no G-counterpart")
        j = canon_g[canon]
        target = data_g[j]
        w = _conjugator(rd, roots_l, label_g, levi_roots(rd, target.levi), target.label)
        match.append((j, Embedding.conjugated(groups_l[k], groups_g[j], w)))
    return LeviSetup(rd, levi, emb, data_g, data_l, groups_g, groups_l, match)


KClass = dict  # datum index -> GradedCharacter


def res_K(setup: LeviSetup, x: Mapping) -> KClass:
    """Restriction along W_L^kappa -> W_G^kappa; G-blocks outside K_L are dropped."""
    out = {}
    for k, (j, emb) in enumerate(setup.match):
        chi = x.get(j)
        out[k] = restrict(chi, emb) if chi is not None else zero_character(setup.groups_l[k])
    return out


def ind_K(setup: LeviSetup, y: Mapping) -> KClass:
    out = {j: zero_character(g) for j, g in enumerate(setup.groups_g)}
    for k, (j, emb) in enumerate(setup.match):
        chi = y.get(k)
        if chi is not None:
            out[j] = out[j] + induce(chi, emb)
    return out


def k_inner(x: Mapping, y: Mapping) -> Laurent:
    total: Laurent = {}
    for k in x:
        if k in y:
            total = lp_add(total, inner(x[k], y[k]))
    return total


def k_equal(x: Mapping, y: Mapping) -> bool:
    keys = set(x) | set(y)
    for k in keys:
        a, b = x.get(k), y.get(k)
        if a is None or b is None:
            if not ((a is None or a.is_zero()) and (b is None or b.is_zero())):
                return False
        elif a.values != b.values:
            return False
    return True


@dataclass
class FrobeniusReport:
    pairs_checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def frobenius_check(setup: LeviSetup, extra_samples: Sequence = ()) -> FrobeniusReport:
    """<Ind chi, psi>_G = <chi, Res psi>_L over full irreducible bases (and samples)."""
    failures = []
    count = 0
    basis_l = [(k, chi) for k, g in enumerate(setup.groups_l) for chi in irreducible_characters(g)]
    basis_g = [(j, psi) for j, g in enumerate(setup.groups_g) for psi in irreducible_characters(g)]
    pairs = [({k: chi}, {j: psi}) for k, chi in basis_l for j, psi in basis_g]
    pairs += list(extra_samples)
    for y, x in pairs:
        lhs = k_inner(ind_K(setup, y), x)
        rhs = k_inner(y, res_K(setup, x))
        count += 1
        if lhs != rhs:
            failures.append(f"<Ind y, x> = {lp_text(lhs)} but <y, Res x> = {lp_text(rhs)}")
    return FrobeniusReport(count, failures)


def transitivity_check(rd: RootDatum, chain: Sequence[Sequence[int]], table=None) -> list[str]:
    """res(G->M) = res(L->M) . res(G->L) and dually for ind, on irreducible bases.

    ``chain`` lists simple subsets (of G's simple roots) for L and then M,
    with M's subset inside L's.
    """
    big, small = tuple(chain[0]), tuple(chain[1])
    g_l = levi_setup(rd, big, table)
    g_m = levi_setup(rd, small, table)
    lev = g_l.levi
    small_in_l = tuple(g_l.embedding.from_ambient()[i] for i in small)
    l_m = levi_setup(lev, small_in_l, table)
    failures = []
    for j, grp in enumerate(g_l.groups_g):
        for psi in irreducible_characters(grp):
            x = {j: psi}
            direct = res_K(g_m, x)
            twostep = res_K(l_m, res_K(g_l, x))
            if not _matched_equal(direct, twostep, g_m, l_m):
                failures.append(f"restriction not transitive on G-datum {j}")
    for k, grp in enumerate(g_m.groups_l):
        for chi in irreducible_characters(grp):
            y = {k: chi}
            direct = ind_K(g_m, y)
            twostep = ind_K(g_l, ind_K(l_m, y))
            if not k_equal(direct, twostep):
                failures.append(f"induction not transitive on M-datum {k}")
    return failures


def _matched_equal(a: Mapping, b: Mapping, g_m: LeviSetup, l_m: LeviSetup) -> bool:
    """Compare M-classes computed in two setups whose M-data are indexed alike."""
    if len(g_m.data_l) != len(l_m.data_l):
        return False
    for k in range(len(g_m.data_l)):
        x, y = a.get(k), b.get(k)
        if x is None or y is None:
            return False
        if [v for v in x.values] != [v for v in y.values]:
            return False
    return True


@dataclass
class MackeyReport:
    permutation_matches: bool
    double_cosets: int
    pairing: Fraction

    @property
    def passed(self) -> bool:
        return self.permutation_matches and self.pairing == self.double_cosets


def mackey_check(setup: LeviSetup) -> MackeyReport:
    """Res Ind of the trivial character on the principal block equals the
    permutation character of W_L on W/W_L; its norm counts double cosets."""
    j_prin = next(j for j, d in enumerate(setup.data_g) if d.is_principal())
    k_prin = next(k for k, d in enumerate(setup.data_l) if d.is_principal())
    wg = setup.groups_g[j_prin]
    wl = setup.groups_l[k_prin]
    emb = setup.match[k_prin][1]
    triv = trivial_character(wl)
    ri = restrict(induce(triv, emb), emb)
    sub = set(emb.image)
    cosets = []
    seen = set()
    for x in range(wg.order):
        if x in seen:
            continue
        c = frozenset(wg.mul(x, h) for h in sub)
        seen |= c
        cosets.append(c)
    perm_vals = []
    for members in wl.conjugacy_classes:
        u = emb.image[members[0]]
        fixed = sum(1 for c in cosets if frozenset(wg.mul(u, y) for y in c) == c)
        perm_vals.append(lp_const(fixed))
    dcs = set()
    for x in range(wg.order):
        dcs.add(frozenset(wg.mul(wg.mul(a, x), b) for a in sub for b in sub))
    pairing = inner(ri, trivial_character(wl)).get(0, Fraction(0))
    return MackeyReport(list(ri.values) == perm_vals, len(dcs), pairing)


# ---------------------------------------------------------------------------
# Affine incidence
# ---------------------------------------------------------------------------

@dataclass
class IncidenceRow:
    g_block: int
    entries: list  # (L block id, conjugator AffineWeylElement, stabilizer images ok)


@dataclass
class IncidenceReport:
    rows: list
    partition_ok: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.partition_ok and not self.failures


def to_ambient_triple(emb: LeviEmbedding, c: TripleC) -> TripleC:
    to_g = emb.to_ambient
    eqs = tuple(sorted((to_g[i], v) for i, v in c.equations))
    borel = tuple(sorted(to_g[i] for i in c.borel))
    label = transport_label(None, to_g, c.label)
    return TripleC(eqs, borel, label)


def affine_res_incidence(rd: RootDatum, simple_subset: Sequence[int], table=None,
                         ac_g: Optional[AffineC] = None) -> IncidenceReport:
    """Which W~_L-orbits of C~_L lie in each W~_G-orbit, with conjugators."""
    levi, emb = levi_subdatum(rd, simple_subset)
    ac_g = ac_g or affine_blocks(rd, table)
    ac_l = affine_blocks(levi, table)
    failures = []
    where = {}  # L triple -> (G block, g, image)
    for c in ac_l.triples:
        cg = to_ambient_triple(emb, c)
        where[c] = locate(ac_g, cg)
    rows = {b.block_id: [] for b in ac_g.blocks}
    covered = defaultdict(set)
    for bl in ac_l.blocks:
        targets = {where[m][0] for m in bl.members}
        if len(targets) != 1:
            failures.append(f"L-block {bl.block_id} meets several G-blocks {sorted(targets)}")
            continue
        gb = targets.pop()
        gblock = ac_g.blocks[gb]
        rep = bl.representative
        _, g, img = where[rep]
        # conjugate g so it lands on the G representative
        h = _to_representative(ac_g, img, gblock)
        conj = h * g
        ok = _stabilizer_inclusion(rd, bl, gblock, conj)
        if not ok:
            failures.append(f"K^L of L-block {bl.block_id} not inside conjugate of K^G of block {gb}")
        rows[gb].append((bl.block_id, conj, ok))
        for m in bl.members:
            covered[gb].add(m)
    # partition: every L triple counted once, L-orbits disjoint
    seen = set()
    for gb, items in covered.items():
        if seen & items:
            failures.append("L triples assigned to two G-blocks")
        seen |= items
    partition_ok = seen == set(ac_l.triples) and not failures
    out = [IncidenceRow(gb, sorted(entries, key=lambda e: e[0])) for gb, entries in sorted(rows.items())]
    return IncidenceReport(out, partition_ok, failures)


def _to_representative(ac: AffineC, img: TripleC, block) -> AffineWeylElement:
    rd = ac.rd
    rep = block.representative
    if img == rep:
        return AffineWeylElement.identity(rd.rank)
    src = next(s for s in ac.supports if s[1] == img.equations)
    dst = next(s for s in ac.supports if s[1] == rep.equations)
    for w in weyl_group(rd).elements:
        perm = rd.permutation(w)
        lam = _support_map(rd, w, perm, src, dst)
        if lam is None:
            continue
        if act_linear(rd, perm, img, rep.equations) == rep:
            return AffineWeylElement(w, la.int_vec(lam))
    raise TheoremCheckError("alcove triples in one block are not conjugate")


def _stabilizer_inclusion(rd: RootDatum, bl, gblock, conj) -> bool:
    """conj K^L conj^-1 lies in K^G (checked on generators)."""
    inv = conj.inverse()
    gens = list(bl.stabilizer.finite_part) + [AffineWeylElement.translation(v) for v in bl.stabilizer.lattice]
    for h in gens:
        if not gblock.stabilizer.contains(conj * h * inv):
            return False
    return True


# ---------------------------------------------------------------------------
# Springer sheaf corollaries
# ---------------------------------------------------------------------------

def springer_endo_series(rd: RootDatum) -> BigradedSeries:
    """|W| (1+t)^r / (1-t^2)^r."""
    return cohomology_torus_series(rd.rank).scale(weyl_group(rd).order)


def springer_series_bruteforce(rd: RootDatum, n: int) -> list:
    """Coefficients of |W| (1+t)^r prod 1/(1-t^2), multiplied out term by term."""
    r = rd.rank
    coeffs = [0] * n
    coeffs[0] = 1
    for _ in range(r):
        coeffs = [coeffs[k] + (coeffs[k - 1] if k else 0) for k in range(n)]
    for _ in range(r):
        geo = [1 if k % 2 == 0 else 0 for k in range(n)]
        coeffs = [sum(coeffs[i] * geo[k - i] for i in range(k + 1)) for k in range(n)]
    order = weyl_group(rd).order
    return [order * c for c in coeffs]


@dataclass(frozen=True)
class ResSpringerReport:
    rank: int
    endo_consistent: bool
    bimodule_count: int


def res_springer_rank(rd: RootDatum) -> ResSpringerReport:
    """Res(Spr) = C^{+W}; End_C(C[W]) (x) H*(BT)(x)H*(T) has series |W|^2 (1+t)^r/(1-t^2)^r."""
    order = weyl_group(rd).order
    lhs = springer_endo_series(rd).scale(order)
    rhs = cohomology_torus_series(rd.rank).scale(order * order)
    # bimodule count: C[W] as (W x W)-module has |W| x |W| = dim End_C(C[W]) entries
    return ResSpringerReport(order, lhs.same_function(rhs), order * order)


@dataclass
class DistinguishedCharacters:
    sign: GradedCharacter
    regular: GradedCharacter
    cohomology: GradedCharacter  # H*(BT) (x) H*(T), graded by t, truncated
    truncation: int


def _series_det_ratio(w: Sequence, n: int) -> Laurent:
    """det(1 + t w) / det(1 - t^2 w) expanded to t^{n-1}."""
    r = len(w)
    num = _char_poly_coeffs(w, sign=1)  # det(1 + t w) = sum e_k(w) t^k
    den = _char_poly_coeffs(w, sign=-1)  # det(1 - s w), s = t^2
    # invert den as power series in s
    inv = [Fraction(0)] * n
    inv[0] = Fraction(1)
    for k in range(1, n):
        inv[k] = -sum(Fraction(den[j]) * inv[k - j] for j in range(1, min(k, r) + 1))
    out: dict = defaultdict(Fraction)
    for i, a in enumerate(num):
        for k in range(n):
            d = i + 2 * k
            if d < n:
                out[d] += a * inv[k]
    return lp(*out.items())


def _char_poly_coeffs(w: Sequence, sign: int) -> list:
    """Coefficients of det(1 + sign*t*w) in t via principal minors."""
    r = len(w)
    coeffs = [Fraction(1)]
    for k in range(1, r + 1):
        e = Fraction(0)
        for rows in combinations(range(r), k):
            e += la.det(tuple(tuple(w[i][j] for j in rows) for i in rows))
        coeffs.append(e * sign ** k)
    return coeffs


def distinguished_module_characters(rd: RootDatum, truncation: int = 12) -> DistinguishedCharacters:
    group = weyl_group(rd)
    coh = [_series_det_ratio(group.elements[c[0]], truncation) for c in group.conjugacy_classes]
    return DistinguishedCharacters(sign_character(group), regular_character(group),
                                   GradedCharacter(group, tuple(coh)), truncation)
