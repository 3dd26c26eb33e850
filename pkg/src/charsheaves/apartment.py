"""Facets of the finite and affine root-hyperplane arrangements on t.

An affine facet is encoded by one small integer per positive root alpha:
``floor(alpha(x)) + ceil(alpha(x))``, which is ``2k`` when alpha(x) = k and
``2k + 1`` when k < alpha(x) < k + 1.  This is the full sign vector of x
against every affine root, written finitely.  Finite facets use the sign
of alpha(x).  Central directions carry no hyperplanes and are invisible
to both encodings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .rootdata import RootDatum, fundamental_coweights

AFFINE = "affine"
FINITE = "finite"


@dataclass(frozen=True)
class AffineRoot:
    """x -> alpha(x) + level, with alpha = rd.roots[index]."""

    index: int
    level: int

    def __call__(self, rd: RootDatum, x: Sequence) -> Fraction:
        return rd.pair(self.index, x) + self.level


def _affine_code(v: Fraction) -> int:
    return math.floor(v) + math.ceil(v)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class Facet:
    """A facet, identified by its ambient flag and code tuple."""

    __slots__ = ("rd", "ambient", "key", "witness")

    def __init__(self, rd: RootDatum, ambient: str, key: tuple, witness: tuple):
        self.rd = rd
        self.ambient = ambient
        self.key = key
        self.witness = la.normalize(witness)

    def __eq__(self, other) -> bool:
        return isinstance(other, Facet) and (self.ambient, self.key) == (other.ambient, other.key)

    def __hash__(self) -> int:
        return hash((self.ambient, self.key))

    def __repr__(self) -> str:
        return f"Facet({self.ambient}, dim={self.dim}, key={self.key})"

    def sort_key(self) -> tuple:
        return (self.dim, self.key)

    @property
    def zero_roots(self) -> frozenset:
        """Finite parts of the vanishing (affine) roots, both signs."""
        rd = self.rd
        pos = [i for i, c in enumerate(self.key) if c % 2 == 0] if self.ambient == AFFINE \
            else [i for i, c in enumerate(self.key) if c == 0]
        return frozenset(pos + [rd.neg(i) for i in pos])

    @property
    def vanishing(self) -> frozenset:
        """Affine roots vanishing on the facet."""
        out = []
        for i in self.zero_roots:
            out.append(AffineRoot(i, -int(self.rd.pair(i, self.witness))))
        return frozenset(out)

    @property
    def dim(self) -> int:
        rows = [self.rd.roots[i] for i in self.zero_roots]
        return self.rd.rank - (la.rank(rows) if rows else 0)

    def sign_vector(self, bound: Optional[int] = None) -> dict:
        """Signs of affine roots (alpha, n) with alpha > 0 and |n| <= bound."""
        rd = self.rd
        if self.ambient == FINITE:
            return {AffineRoot(i, 0): c for i, c in enumerate(self.key)}
        if bound is None:
            bound = level_bound(rd, self.witness)
        out = {}
        for i in rd.positive:
            v = rd.pair(i, self.witness)
            for n in range(-bound, bound + 1):
                out[AffineRoot(i, n)] = _sign(v + n)
        return out


def level_bound(rd: RootDatum, x: Sequence) -> int:
    m = max((abs(rd.pair(i, x)) for i in rd.positive), default=Fraction(0))
    return math.ceil(m) + 1


def facet_of_point(rd: RootDatum, x: Sequence, ambient: str = AFFINE) -> Facet:
    x = la.frac_vec(x)
    if ambient == AFFINE:
        key = tuple(_affine_code(rd.pair(i, x)) for i in rd.positive)
    elif ambient == FINITE:
        key = tuple(_sign(rd.pair(i, x)) for i in rd.positive)
    else:
        raise ValueError(f"unknown ambient {ambient!r}")
    return Facet(rd, ambient, key, x)


def affine_vanishing_roots(rd: RootDatum, x: Sequence) -> frozenset:
    """All affine roots vanishing at x, by brute force over bounded levels."""
    b = level_bound(rd, x)
    return frozenset(AffineRoot(i, n) for i in range(len(rd.roots)) for n in range(-b, b + 1)
                     if rd.pair(i, x) + n == 0)


# ---------------------------------------------------------------------------
# The fundamental alcove
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlcoveComponent:
    simple: tuple  # simple root indices of one irreducible factor
    highest: int
    marks: tuple  # coefficient of each simple root in the highest root
    vertices: tuple  # 0 first, then omega_i^vee / m_i


@lru_cache(maxsize=None)
def _alcove_components(rd: RootDatum) -> tuple:
    cw = fundamental_coweights(rd) if rd.simple else []
    out = []
    zero = tuple(Fraction(0) for _ in range(rd.rank))
    for comp, hr in zip(rd.components, rd.highest_roots):
        coeffs = rd.simple_coefficients[hr]
        marks = tuple(coeffs[rd.simple.index(i)] for i in comp)
        verts = [zero]
        for i, m in zip(comp, marks):
            verts.append(la.vscale(Fraction(1, m), cw[rd.simple.index(i)]))
        out.append(AlcoveComponent(comp, hr, marks, tuple(verts)))
    return tuple(out)


def alcove_components(rd: RootDatum) -> tuple:
    return _alcove_components(rd)


def alcove_barycenter(rd: RootDatum) -> tuple:
    """Barycenter of the fundamental alcove (central coordinate 0)."""
    pt = tuple(Fraction(0) for _ in range(rd.rank))
    for comp in alcove_components(rd):
        c = la.vscale(Fraction(1, len(comp.vertices)), _vsum(comp.vertices, rd.rank))
        pt = la.vadd(pt, c)
    return la.normalize(pt)


def _vsum(vs: Iterable, n: int) -> tuple:
    out = tuple(Fraction(0) for _ in range(n))
    for v in vs:
        out = la.vadd(out, v)
    return out


def in_closed_alcove(rd: RootDatum, x: Sequence) -> bool:
    if any(rd.pair(i, x) < 0 for i in rd.simple):
        return False
    return all(rd.pair(h, x) <= 1 for h in rd.highest_roots)


def facets_of_closed_alcove(rd: RootDatum) -> list[Facet]:
    """Faces of the closed fundamental alcove, one per product of nonempty vertex subsets."""
    comps = alcove_components(rd)
    choices = []
    for comp in comps:
        verts = comp.vertices
        subs = []
        for mask in range(1, 2 ** len(verts)):
            chosen = [v for k, v in enumerate(verts) if mask >> k & 1]
            subs.append(la.vscale(Fraction(1, len(chosen)), _vsum(chosen, rd.rank)))
        choices.append(subs)
    out = []
    for combo in product(*choices):
        out.append(facet_of_point(rd, _vsum(combo, rd.rank)))
    if len(set(out)) != len(out):
        raise AssertionError("alcove faces are not distinct")
    return sorted(out, key=Facet.sort_key)


def alcove_facets_by_grid(rd: RootDatum) -> set:
    """Distinct facet codes at grid points of the closed alcove.

    Independent of the vertex-subset description: every point with
    alpha_i(x) in (1/D)Z and highest roots <= 1 is visited.
    """
    comps = alcove_components(rd)
    cw = fundamental_coweights(rd) if rd.simple else []
    per_comp = []
    for comp in comps:
        d = math.lcm(*comp.marks) * math.lcm(*range(1, len(comp.simple) + 2))
        pts = []
        for coords in product(range(d + 1), repeat=len(comp.simple)):
            x = _vsum((la.vscale(Fraction(c, d), cw[rd.simple.index(i)])
                       for c, i in zip(coords, comp.simple)), rd.rank)
            if rd.pair(comp.highest, x) <= 1:
                pts.append(x)
        per_comp.append(pts)
    keys = set()
    for combo in product(*per_comp):
        keys.add(facet_of_point(rd, _vsum(combo, rd.rank)).key)
    return keys


def simplex_face_count(rd: RootDatum) -> int:
    out = 1
    for comp in alcove_components(rd):
        out *= 2 ** (len(comp.simple) + 1) - 1
    return out


def open_alcove(rd: RootDatum) -> Facet:
    return facet_of_point(rd, alcove_barycenter(rd))


# ---------------------------------------------------------------------------
# Supports, closure, stars
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Support:
    basepoint: tuple
    direction: tuple  # Q-basis of z_eps
    vanishing_roots: frozenset  # finite parts, both signs
    levels: tuple  # (positive root index, value alpha(eps))

    @property
    def dim(self) -> int:
        return len(self.direction)

    def contains(self, rd: RootDatum, x: Sequence) -> bool:
        return all(rd.pair(i, x) == v for i, v in self.levels)


def support(facet: Facet) -> Support:
    rd = facet.rd
    roots = sorted(facet.zero_roots)
    rows = tuple(rd.roots[i] for i in roots)
    direction = la.nullspace(rows, rd.rank) if rows else la.nullspace((), rd.rank)
    levels = tuple((i, la.normalize((rd.pair(i, facet.witness),))[0]) for i in roots if rd.is_positive(i))
    return Support(facet.witness, tuple(direction), frozenset(roots), levels)


def closure_le(i: Facet, j: Facet) -> bool:
    """True iff facet i lies in the closure of facet j."""
    if i.ambient != j.ambient:
        raise ValueError("facets live in different arrangements")
    if i.ambient == FINITE:
        return all(a == 0 or a == b for a, b in zip(i.key, j.key))
    for a, b in zip(i.key, j.key):
        if b % 2 == 0:
            if a != b:
                return False
        elif not (b - 1 <= a <= b + 1):
            return False
    return True


def star_membership(facet: Facet, x: Sequence) -> bool:
    """x lies in the star of ``facet`` (real part of V_I)."""
    return closure_le(facet, facet_of_point(facet.rd, x, facet.ambient))

