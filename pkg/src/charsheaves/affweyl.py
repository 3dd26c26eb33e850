"""The extended affine Weyl group X_* x| W acting on t.

Elements are pairs (w, lam) with w an integer matrix in W and lam in X_*;
(w, lam) sends x to w x + lam.  Nothing is ever written as a word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .apartment import Facet, alcove_barycenter, facet_of_point
from .groups import FiniteGroup
from .rootdata import RootDatum, reflection_subgroup, weyl_group

WALK_CAP = 100000


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class AffineWeylElement:
    w: tuple
    lam: tuple

    @classmethod
    def identity(cls, n: int) -> "AffineWeylElement":
        return cls(la.identity(n), (0,) * n)

    @classmethod
    def translation(cls, lam: Sequence[int]) -> "AffineWeylElement":
        return cls(la.identity(len(lam)), la.int_vec(lam))

    @classmethod
    def linear(cls, w: Sequence) -> "AffineWeylElement":
        return cls(tuple(tuple(r) for r in w), (0,) * len(w))

    @classmethod
    def reflection(cls, rd: RootDatum, index: int, level: int = 0) -> "AffineWeylElement":
        """Reflection in the hyperplane alpha(x) + level = 0."""
        c = rd.coroots[index]
        return cls(rd.reflection(index), tuple(-level * a for a in c))

    def __post_init__(self):
        if not all(type(a) is int for r in self.w for a in r):
            object.__setattr__(self, "w", tuple(la.int_vec(r) for r in self.w))
        if not all(type(a) is int for a in self.lam):
            object.__setattr__(self, "lam", la.int_vec(self.lam))

    def __call__(self, x: Sequence) -> tuple:
        return la.normalize(la.vadd(la.matvec(self.w, x), self.lam))

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        return AffineWeylElement(la.matmul(self.w, other.w), la.vadd(la.matvec(self.w, other.lam), self.lam))

    def inverse(self) -> "AffineWeylElement":
        winv = _integer_inverse(self.w)
        return AffineWeylElement(winv, tuple(-a for a in la.matvec(winv, self.lam)))

    def is_identity(self) -> bool:
        return self.w == la.identity(len(self.w)) and not any(self.lam)

    def act_facet(self, facet: Facet) -> Facet:
        return facet_of_point(facet.rd, self(facet.witness), facet.ambient)

    def sort_key(self, rd: RootDatum) -> tuple:
        return (length(rd, self), self.w, self.lam)

    def describe(self) -> str:
        return f"w={[list(r) for r in self.w]} lam={list(self.lam)}"


@lru_cache(maxsize=None)
def _integer_inverse(w: tuple) -> tuple:
    return tuple(la.int_vec(r) for r in la.inverse(w))


def length(rd: RootDatum, g: AffineWeylElement) -> int:
    """Number of affine root hyperplanes separating the base alcove from its image."""
    b = alcove_barycenter(rd)
    gb = g(b)
    return sum(abs(math.floor(rd.pair(i, gb)) - math.floor(rd.pair(i, b))) for i in rd.positive)


# ---------------------------------------------------------------------------
# Central lattice bookkeeping
# ---------------------------------------------------------------------------

def central_coordinates(rd: RootDatum, lam: Sequence) -> tuple:
    """Coordinates of the central projection of lam in the basis of X_* cap z_g."""
    lat = rd.central_lattice
    if not lat:
        return ()
    cols = [rd.coroots[i] for i in rd.simple] + list(lat)
    c = la.solve(la.transpose(cols), lam)
    return c[len(rd.simple):]


def reduce_central(rd: RootDatum, lam: Sequence) -> tuple:
    """Canonical representative of lam modulo X_* cap z_g.

    The central coordinates (in the basis of that lattice, with the simple
    coroots completing it to a basis of t) are reduced into [0, 1).
    """
    lat = rd.central_lattice
    if not lat:
        return la.int_vec(lam)
    shift = (0,) * rd.rank
    for v, c in zip(lat, central_coordinates(rd, lam)):
        shift = la.vadd(shift, la.vscale(math.floor(c), v))
    return la.int_vec(la.vsub(lam, shift))


# ---------------------------------------------------------------------------
# Reduction to the fundamental alcove
# ---------------------------------------------------------------------------

def walk_to_alcove(rd: RootDatum, x: Sequence) -> tuple[AffineWeylElement, tuple]:
    """Alcove walk: reflect in violated walls until x lies in the closed alcove."""
    g = AffineWeylElement.identity(rd.rank)
    y = la.normalize(la.frac_vec(x))
    affine_walls = [AffineWeylElement.reflection(rd, h, -1) for h in rd.highest_roots]
    for _ in range(WALK_CAP):
        step = None
        for i in rd.simple:
            if rd.pair(i, y) < 0:
                step = AffineWeylElement.reflection(rd, i)
                break
        if step is None:
            for h, s in zip(rd.highest_roots, affine_walls):
                if rd.pair(h, y) > 1:
                    step = s
                    break
        if step is None:
            return g, y
        g = step * g
        y = step(y)
    raise ReductionError("alcove walk did not terminate")


def reduce_to_fundamental(rd: RootDatum, obj) -> tuple[AffineWeylElement, object]:
    """Return (g, I0) with g(obj) = I0 meeting the closed fundamental alcove.

    ``obj`` is a point or an affine Facet.  Among all valid g the one of
    minimal (length, matrix, translation) is returned; translations along
    the centre are first reduced to a fixed fundamental domain.
    """
    if isinstance(obj, Facet):
        g0, y = walk_to_alcove(rd, obj.witness)
        target = facet_of_point(rd, y)
        stab = stabilizer_facet(rd, target)
        cands = []
        for h in stab.finite_part:
            g = h * g0
            cands.append(AffineWeylElement(g.w, reduce_central(rd, g.lam)))
        best = min(cands, key=lambda g: g.sort_key(rd))
        return best, target
    g0, y = walk_to_alcove(rd, obj)
    stab = stabilizer_point(rd, y)
    best = min((h * g0 for h in stab.finite_part), key=lambda g: g.sort_key(rd))
    return best, y


# ---------------------------------------------------------------------------
# Stabilizers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineStabilizer:
    """Lattice of translations together with one element per coset."""

    lattice: tuple  # Z-basis of the translation subgroup
    finite_part: tuple  # AffineWeylElements, pairwise distinct mod the lattice

    @property
    def quotient_order(self) -> int:
        return len(self.finite_part)

    @property
    def is_finite(self) -> bool:
        return not self.lattice

    def contains(self, g: AffineWeylElement) -> bool:
        for h in self.finite_part:
            if h.w == g.w:
                diff = la.vsub(g.lam, h.lam)
                if not any(diff):
                    return True
                if self.lattice and la.int_solve(la.transpose(self.lattice), diff) is not None:
                    return True
        return False

    def linear_parts(self) -> list:
        return sorted({h.w for h in self.finite_part})

    def describe(self) -> str:
        if self.lattice:
            return f"Z^{len(self.lattice)} . {self.quotient_order}"
        return f"finite({self.quotient_order})"


def stabilizer_point(rd: RootDatum, x: Sequence) -> AffineStabilizer:
    x = la.frac_vec(x)
    out = []
    for w in weyl_group(rd).elements:
        lam = la.vsub(x, la.matvec(w, x))
        if la.is_integral(lam):
            out.append(AffineWeylElement(w, la.int_vec(lam)))
    return AffineStabilizer((), tuple(sorted(out, key=lambda g: g.sort_key(rd))))


def _required_simple_pairings(rd: RootDatum, key: tuple, y: Sequence) -> Optional[tuple]:
    """Integers n_i with y + lam in the facet ``key`` forcing <alpha_i, lam> = n_i."""
    out = []
    for i in rd.simple:
        code = key[i]
        v = rd.pair(i, y)
        if code % 2 == 0:
            n = Fraction(code // 2) - v
            if n.denominator != 1:
                return None
        else:
            if Fraction(v).denominator == 1:
                return None
            n = Fraction(code // 2 - math.floor(v))
        out.append(int(n))
    return tuple(out)


def translate_into(rd: RootDatum, w: Sequence, source: Facet, target: Facet) -> Optional[tuple]:
    """Some lam in X_* with w(source) + lam = target, or None."""
    y = la.matvec(w, source.witness)
    if not rd.simple:
        return (0,) * rd.rank
    n = _required_simple_pairings(rd, target.key, y)
    if n is None:
        return None
    lam = la.int_solve(tuple(rd.roots[i] for i in rd.simple), n)
    if lam is None:
        return None
    if facet_of_point(rd, la.vadd(y, lam)) != target:
        return None
    return reduce_central(rd, lam)


def stabilizer_facet(rd: RootDatum, facet: Facet) -> AffineStabilizer:
    """Setwise stabilizer of an affine facet.

    Translations fixing the facet form X_* cap z_g.  For every w in W the
    simple-root pairings of a compatible translation are forced by the
    facet code, so each coset is found by one integer solve.
    """
    reps = []
    for w in weyl_group(rd).elements:
        lam = translate_into(rd, w, facet, facet)
        if lam is not None:
            reps.append(AffineWeylElement(w, lam))
    reps.sort(key=lambda g: g.sort_key(rd))
    return AffineStabilizer(tuple(rd.central_lattice), tuple(reps))


def alcove_stabilizer(rd: RootDatum) -> AffineStabilizer:
    """Omega: the stabilizer of the fundamental alcove."""
    return stabilizer_facet(rd, facet_of_point(rd, alcove_barycenter(rd)))


# ---------------------------------------------------------------------------
# Normalizers of parabolic subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicNormalizer:
    normalizer: tuple  # indices into weyl_group(rd)
    parabolic: tuple  # indices of W_eps
    coset_reps: tuple  # one minimal element per W_eps-coset in N
    z_basis: tuple  # basis of z_eps
    z_action: tuple  # matrices of coset reps on z_eps (coordinates in z_basis)

    @property
    def quotient_order(self) -> int:
        return len(self.coset_reps)


def parabolic_subgroup(rd: RootDatum, roots: Iterable[int]) -> tuple:
    group = weyl_group(rd)
    sub = reflection_subgroup(rd, sorted(roots))
    return tuple(sorted(group.index(m) for m in sub.elements))


def normalizer_parabolic(rd: RootDatum, roots: Iterable[int]) -> ParabolicNormalizer:
    roots = frozenset(roots)
    group = weyl_group(rd)
    normal = []
    for k, w in enumerate(group.elements):
        perm = rd.permutation(w)
        if frozenset(perm[i] for i in roots) == roots:
            normal.append(k)
    par = parabolic_subgroup(rd, roots)
    par_set = set(par)
    seen = set()
    reps = []
    for k in normal:  # elements are sorted by (length, entries)
        if k in seen:
            continue
        coset = {group.mul(k, p) for p in par}
        seen |= coset
        reps.append(k)
    rows = tuple(rd.roots[i] for i in sorted(roots))
    z = tuple(la.nullspace(rows, rd.rank)) if rows else tuple(la.nullspace((), rd.rank))
    actions = []
    if z:
        zt = la.transpose(z)
        for k in reps:
            imgs = [la.matvec(group.elements[k], v) for v in z]
            coords = [la.solve(zt, img) for img in imgs]
            actions.append(la.transpose(tuple(coords)))
    else:
        actions = [() for _ in reps]
    if not par_set <= set(normal):
        raise AssertionError("parabolic subgroup not inside its normalizer")
    return ParabolicNormalizer(tuple(normal), par, tuple(reps), z, tuple(actions))


def element_group(matrices: Sequence, rd: RootDatum) -> FiniteGroup:
    mats = list(matrices) or [la.identity(rd.rank)]
    return FiniteGroup(mats, sort_key=lambda m: (rd.length(m), m))

