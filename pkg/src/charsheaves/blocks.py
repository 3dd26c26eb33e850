"""Blocks: orbits of W on the finite set C_G and of the extended affine Weyl
group on the affine set C~_G, with stabilizers and block-algebra series."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .affweyl import AffineStabilizer, AffineWeylElement, normalizer_parabolic, parabolic_subgroup, \
    reduce_to_fundamental
from .apartment import Facet, facet_of_point, facets_of_closed_alcove
from .cuspidal import (ClassificationTable, cuspidal_data_of_G, cuspidal_set, label_text, levi_roots,
                       standard_levi_subsets, transport_label)
from .rootdata import RootDatum, simple_type_decomposition, weyl_group
from .series import BigradedSeries, sym_series


class TheoremCheckError(AssertionError):
    """A verified statement failed; carries a counterexample description."""


@dataclass(frozen=True, order=True)
class TripleC:
    """(epsilon, B, F).  epsilon is given by equations alpha(x) = value for the
    positive roots vanishing (up to a constant) on it; B is a positive system
    of Phi_eps; F a cuspidal label of the pseudo-Levi."""

    equations: tuple  # ((positive root index, value), ...)
    borel: tuple  # sorted root indices
    label: tuple

    def phi(self, rd: RootDatum) -> frozenset:
        pos = [i for i, _ in self.equations]
        return frozenset(pos + [rd.neg(i) for i in pos])

    def point(self, rd: RootDatum) -> tuple:
        """Some rational point of epsilon."""
        if not self.equations:
            return (0,) * rd.rank
        rows = tuple(rd.roots[i] for i, _ in self.equations)
        return la.normalize(la.solve(rows, [v for _, v in self.equations]))


def _equations(rd: RootDatum, roots: Iterable[int], x: Sequence) -> tuple:
    return tuple(sorted((i, la.normalize((rd.pair(i, x),))[0]) for i in roots if rd.is_positive(i)))


def positive_systems_of(rd: RootDatum, roots: frozenset) -> list[tuple]:
    out = set()
    for w in weyl_group(rd).elements:
        perm = rd.permutation(w)
        out.add(tuple(sorted(i for i in roots if rd.is_positive(perm[i]))))
    return sorted(out)


def act_linear(rd: RootDatum, perm: Sequence[int], c: TripleC, equations: tuple) -> TripleC:
    return TripleC(equations, tuple(sorted(perm[i] for i in c.borel)), transport_label(rd, perm, c.label))


# ---------------------------------------------------------------------------
# Finite model
# ---------------------------------------------------------------------------

@dataclass
class FiniteOrbit:
    representative: TripleC
    members: list
    stabilizer: list  # indices into weyl_group(rd)
    w_eps_order: int
    injective: bool

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class FiniteC:
    triples: list
    orbits: list
    orbit_of: dict


def finite_supports(rd: RootDatum) -> list[frozenset]:
    group = weyl_group(rd)
    found = set()
    for subset in standard_levi_subsets(rd):
        roots = levi_roots(rd, subset)
        for w in group.elements:
            perm = rd.permutation(w)
            found.add(frozenset(perm[i] for i in roots))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def finite_C(rd: RootDatum, table: Optional[ClassificationTable] = None) -> FiniteC:
    triples = []
    for phi in finite_supports(rd):
        eqs = tuple(sorted((i, 0) for i in phi if rd.is_positive(i)))
        labels = cuspidal_set(simple_type_decomposition(rd, phi), table)
        for b in positive_systems_of(rd, phi):
            for f in labels:
                triples.append(TripleC(eqs, b, f))
    triples.sort()
    group = weyl_group(rd)
    perms = [rd.permutation(w) for w in group.elements]

    def act(k: int, c: TripleC) -> TripleC:
        perm = perms[k]
        eqs = tuple(sorted((perm[i] if rd.is_positive(perm[i]) else rd.neg(perm[i]), 0) for i, _ in c.equations))
        return act_linear(rd, perm, c, eqs)

    orbit_of: dict = {}
    orbits = []
    for c in triples:
        if c in orbit_of:
            continue
        members = sorted({act(k, c) for k in range(group.order)})
        stab = [k for k in range(group.order) if act(k, c) == c]
        for m in members:
            orbit_of[m] = len(orbits)
        phi = c.phi(rd)
        norm = normalizer_parabolic(rd, phi)
        w_eps = set(parabolic_subgroup(rd, phi))
        injective = not (set(stab) & w_eps - {0}) and set(stab) <= set(norm.normalizer)
        orbits.append(FiniteOrbit(c, members, stab, norm.quotient_order, injective))
    return FiniteC(triples, orbits, orbit_of)


@dataclass
class BijectionReport:
    name: str
    k_count: int
    d_count: int
    orbit_count: int
    injective: bool
    surjective: bool
    orbit_stabilizer: bool
    w_c_matches: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.k_count == self.d_count == self.orbit_count and self.injective and self.surjective
                and self.orbit_stabilizer and self.w_c_matches and not self.failures)


def bijection_check(rd: RootDatum, table: Optional[ClassificationTable] = None) -> BijectionReport:
    """K_G = D_G = C_G // W, with h(J, F) = (eps_J, Phi_J^+, F) and W_c = W^eps."""
    fc = finite_C(rd, table)
    kset = cuspidal_data_of_G(rd, table)
    dset = []
    for subset in standard_levi_subsets(rd):
        roots = levi_roots(rd, subset)
        for f in cuspidal_set(simple_type_decomposition(rd, roots), table):
            dset.append((subset, f))
    failures = []
    images = []
    for subset, f in dset:
        roots = levi_roots(rd, subset)
        c = TripleC(tuple(sorted((i, 0) for i in roots if rd.is_positive(i))),
                    tuple(sorted(i for i in roots if rd.is_positive(i))), f)
        if c not in fc.orbit_of:
            failures.append(f"h(J={subset}, F={label_text(f)}) is not a triple of C_G")
            continue
        images.append(fc.orbit_of[c])
    injective = len(set(images)) == len(images)
    if not injective:
        dup = [k for k, n in Counter(images).items() if n > 1]
        failures.append(f"h not injective: orbits {dup} hit twice")
    surjective = set(images) == set(range(len(fc.orbits)))
    if not surjective:
        missing = [fc.orbits[k].representative for k in sorted(set(range(len(fc.orbits))) - set(images))]
        failures.append(f"h not surjective: missing {missing}")
    order = weyl_group(rd).order
    orbit_stab = all(o.size * len(o.stabilizer) == order for o in fc.orbits)
    w_c = True
    for o in fc.orbits:
        if not (o.injective and len(o.stabilizer) == o.w_eps_order):
            w_c = False
            failures.append(f"W_c -> W^eps fails at {o.representative}")
    return BijectionReport(rd.name, len(kset), len(dset), len(fc.orbits), injective, surjective,
                           orbit_stab, w_c, failures)


# ---------------------------------------------------------------------------
# Affine model
# ---------------------------------------------------------------------------

@dataclass
class BlockDescriptor:
    block_id: int
    representative: TripleC
    facet: Facet
    stabilizer: AffineStabilizer
    z_dim: int
    pseudo_levi: str
    cuspidal: str
    members: list  # triples on alcove supports in this orbit

    @property
    def algebra_kind(self) -> str:
        return "lattice-smash" if self.stabilizer.lattice else "finite-smash"

    @property
    def hilbert(self) -> BigradedSeries:
        return block_algebra_series(self)

    def signature(self) -> tuple:
        lat = self.stabilizer.lattice
        index = abs(la.det(lat)) if lat and len(lat) == len(lat[0]) else None
        return (self.pseudo_levi, self.cuspidal, self.z_dim, self.stabilizer.quotient_order,
                len(lat), index)


def block_algebra_series(b: BlockDescriptor) -> BigradedSeries:
    """|K_c| / (1 - t^2 q^2)^{zDim} for finite K_c; the Sym part alone otherwise."""
    if b.stabilizer.lattice:
        return sym_series(b.z_dim)
    return sym_series(b.z_dim).scale(b.stabilizer.quotient_order)


def algebra_presentation(b: BlockDescriptor) -> str:
    if b.stabilizer.lattice:
        return (f"C[K_c] # Sym(z_c[1]), K_c = Z^{len(b.stabilizer.lattice)} . {b.stabilizer.quotient_order}, "
                f"zDim {b.z_dim}")
    return f"C[K_c] # Sym(z_c[1]), |K_c| = {b.stabilizer.quotient_order}, zDim {b.z_dim}"


@dataclass
class AffineC:
    rd: RootDatum
    supports: list  # (facet, equations, phi)
    triples: list
    blocks: list
    block_of: dict  # triple -> block id


def _support_map(rd: RootDatum, w: Sequence, perm: Sequence[int], src: tuple, dst: tuple) -> Optional[tuple]:
    """lam with (w, lam) mapping support src onto support dst, or None."""
    _, eq1, phi1 = src
    _, eq2, phi2 = dst
    if frozenset(perm[i] for i in phi1) != phi2:
        return None
    p1 = TripleC(eq1, (), ()).point(rd)
    wp = la.matvec(w, p1)
    if not eq2:
        return (0,) * rd.rank
    rows = tuple(rd.roots[i] for i, _ in eq2)
    rhs = [v - rd.pair(i, wp) for i, v in eq2]
    return la.int_solve(rows, rhs)


def _alcove_supports(rd: RootDatum, shift: Optional[Sequence[int]] = None) -> list:
    out = []
    for f in facets_of_closed_alcove(rd):
        x = f.witness if shift is None else la.vadd(f.witness, shift)
        g = facet_of_point(rd, x)
        out.append((g, _equations(rd, g.zero_roots, x), g.zero_roots))
    return out


def affine_blocks(rd: RootDatum, table: Optional[ClassificationTable] = None,
                  shift: Optional[Sequence[int]] = None) -> AffineC:
    """W~-orbits on triples supported on faces of the (optionally translated) alcove."""
    supports = _alcove_supports(rd, shift)
    triples = []
    labels_of = {}
    for k, (_, eqs, phi) in enumerate(supports):
        labels_of[k] = cuspidal_set(simple_type_decomposition(rd, phi), table)
        for b in positive_systems_of(rd, phi):
            for f in labels_of[k]:
                triples.append((k, TripleC(eqs, b, f)))
    group = weyl_group(rd)
    perms = [rd.permutation(w) for w in group.elements]
    # support transporters: (k1, k2) -> list of (w index, lam)
    moves = {}
    for k1, s1 in enumerate(supports):
        for k2, s2 in enumerate(supports):
            found = []
            for widx, w in enumerate(group.elements):
                lam = _support_map(rd, w, perms[widx], s1, s2)
                if lam is not None:
                    found.append((widx, la.int_vec(lam)))
            moves[(k1, k2)] = found
    index = {t: n for n, (_, t) in enumerate(triples)}
    parent = list(range(len(triples)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for n, (k1, c) in enumerate(triples):
        for k2 in range(len(supports)):
            for widx, _ in moves[(k1, k2)]:
                img = act_linear(rd, perms[widx], c, supports[k2][1])
                m = index.get(img)
                if m is None:
                    raise TheoremCheckError(f"image {img} of {c} is not a triple")
                ra, rb = find(n), find(m)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for n in range(len(triples)):
        groups.setdefault(find(n), []).append(n)
    blocks = []
    block_of = {}
    for root in sorted(groups):
        members = groups[root]
        k, rep = triples[members[0]]
        reps = []
        for widx, lam in moves[(k, k)]:
            if act_linear(rd, perms[widx], rep, rep.equations) == rep:
                reps.append(AffineWeylElement(group.elements[widx], lam))
        lattice = tuple(la.int_kernel(tuple(rd.roots[i] for i, _ in rep.equations), rd.rank)) \
            if rep.equations else tuple(la.int_kernel((), rd.rank))
        stab = AffineStabilizer(lattice, tuple(sorted(reps, key=lambda g: g.sort_key(rd))))
        phi = supports[k][2]
        pl = simple_type_decomposition(rd, phi)
        z_dim = rd.rank - (la.rank([rd.roots[i] for i in phi]) if phi else 0)
        bd = BlockDescriptor(len(blocks), rep, supports[k][0], stab, z_dim, pl.label(),
                             label_text(rep.label), [triples[m][1] for m in members])
        for m in members:
            block_of[triples[m][1]] = bd.block_id
        blocks.append(bd)
    return AffineC(rd, supports, [t for _, t in triples], blocks, block_of)


def stabilizer_check(ac: AffineC) -> list[str]:
    """Every coset representative of K_c maps the representative triple to itself."""
    rd = ac.rd
    bad = []
    for b in ac.blocks:
        rep = b.representative
        p = rep.point(rd)
        for g in b.stabilizer.finite_part:
            perm = rd.permutation(g.w)
            img_eq = _equations(rd, rep.phi(rd), g(p)) if rep.equations else ()
            img = act_linear(rd, perm, rep, img_eq)
            if img != rep:
                bad.append(f"block {b.block_id}: {g.describe()} moves the representative")
        for v in b.stabilizer.lattice:
            if any(rd.pair(i, v) for i, _ in rep.equations):
                bad.append(f"block {b.block_id}: translation {v} moves the support")
    return bad


@dataclass
class PrincipalReport:
    name: str
    lattice_rank: int
    lattice_index: int
    finite_part_order: int
    weyl_order: int
    full_weyl: bool
    z_dim: int
    rank: int

    @property
    def passed(self) -> bool:
        return (self.lattice_rank == self.rank and self.lattice_index == 1 and self.full_weyl
                and self.finite_part_order == self.weyl_order and self.z_dim == self.rank)


def principal_block(ac: AffineC) -> BlockDescriptor:
    for b in ac.blocks:
        if not b.representative.equations:
            return b
    raise TheoremCheckError("no principal block")


def principal_block_check(rd: RootDatum, ac: Optional[AffineC] = None) -> PrincipalReport:
    """K_c = W~ (lattice X_*, linear parts all of W) and zDim = dim t."""
    ac = ac or affine_blocks(rd)
    b = principal_block(ac)
    lat = b.stabilizer.lattice
    index = abs(la.det(lat)) if lat and len(lat) == rd.rank else 0
    group = weyl_group(rd)
    linear = {g.w for g in b.stabilizer.finite_part}
    full = linear == set(group.elements)
    return PrincipalReport(rd.name, len(lat), int(index), b.stabilizer.quotient_order, group.order,
                           full, b.z_dim, rd.rank)


def block_signatures(ac: AffineC) -> list:
    return sorted(b.signature() for b in ac.blocks)


# ---------------------------------------------------------------------------
# Locating arbitrary affine triples
# ---------------------------------------------------------------------------

def generic_point(rd: RootDatum, equations: tuple) -> tuple:
    """A point of epsilon lying on no root hyperplane beyond those containing epsilon."""
    base = TripleC(equations, (), ()).point(rd)
    rows = tuple(rd.roots[i] for i, _ in equations)
    direction = la.nullspace(rows, rd.rank) if rows else la.nullspace((), rd.rank)
    phi = frozenset(i for i, _ in equations)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    for k in range(1, 200):
        v = base
        for d, p in zip(direction, primes):
            v = la.vadd(v, la.vscale(Fraction(1, p * k + 1), d))
        f = facet_of_point(rd, v)
        if frozenset(i for i in f.zero_roots if rd.is_positive(i)) == phi:
            return la.normalize(v)
    raise TheoremCheckError("no generic point found on support")


def locate(ac: AffineC, c: TripleC) -> tuple[int, AffineWeylElement, TripleC]:
    """Block id of any affine triple, with g mapping it onto an alcove-supported triple."""
    rd = ac.rd
    p = generic_point(rd, c.equations)
    g, target = reduce_to_fundamental(rd, facet_of_point(rd, p))
    perm = rd.permutation(g.w)
    img = act_linear(rd, perm, c, _equations(rd, target.zero_roots, g(p)))
    if img not in ac.block_of:
        raise TheoremCheckError(f"triple {c} reduces to {img}, which is not an alcove triple")
    return ac.block_of[img], g, img
