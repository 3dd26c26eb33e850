"""Truncations of the facet category F_G, fiber complexes, and the colimit verifier.

A window of radius R is the set of alcoves g(A0) with g in the affine Weyl
group of length at most R.  Its objects are the faces of those alcoves and
its 1-cells are (I, J, w) with I in the closure of w(J), where w runs over

    W_aff(<= R)  x  Omega  x  {central translations with coefficients in [-R, R]}.

A 2-cell w1 => w2 between parallel 1-cells is an element u of W_I with
w2 = u w1; W_I is the reflection group of the roots vanishing on I, realized
as the pointwise fixer of I.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .affweyl import AffineWeylElement, alcove_stabilizer, reduce_central, stabilizer_point, walk_to_alcove
from .apartment import (Facet, alcove_components, closure_le, facet_of_point, facets_of_closed_alcove,
                        in_closed_alcove, star_membership)
from .blocks import TheoremCheckError
from .rootdata import RootDatum, levi_subdatum, parse_preset, reflection_subgroup, weyl_group

WINDOW_CAP = 20000


class WindowTooLarge(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Windows
# ---------------------------------------------------------------------------

def simple_affine_reflections(rd: RootDatum) -> list[AffineWeylElement]:
    """Reflections in the walls of the fundamental alcove (finite simple ones first)."""
    out = [AffineWeylElement.reflection(rd, i) for i in rd.simple]
    out += [AffineWeylElement.reflection(rd, h, -1) for h in rd.highest_roots]
    return out


def affine_ball(rd: RootDatum, radius: int) -> list[AffineWeylElement]:
    """Elements of W_aff of length <= radius, by breadth-first search on words."""
    ident = AffineWeylElement.identity(rd.rank)
    gens = simple_affine_reflections(rd)
    seen = {ident}
    frontier = [ident]
    for _ in range(radius):
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > WINDOW_CAP:
                        raise WindowTooLarge(f"more than {WINDOW_CAP} elements within radius {radius}")
        frontier = nxt
    return sorted(seen, key=lambda g: g.sort_key(rd))


def central_translations(rd: RootDatum, radius: int) -> list[AffineWeylElement]:
    lat = rd.central_lattice
    out = []
    for coeffs in product(range(-radius, radius + 1), repeat=len(lat)):
        lam = (0,) * rd.rank
        for c, v in zip(coeffs, lat):
            lam = la.vadd(lam, la.vscale(c, v))
        out.append(AffineWeylElement.translation(lam))
    return out


@dataclass
class Window:
    rd: RootDatum
    radius: int
    alcoves: list  # W_aff elements g, the alcove being g(A0)
    elements: list  # window elements for 1-cells
    objects: list  # facets, sorted
    index: dict  # facet -> position in objects

    def __len__(self) -> int:
        return len(self.objects)


def _window_elements(rd: RootDatum, radius: int) -> list[AffineWeylElement]:
    ball = affine_ball(rd, radius)
    omega = alcove_stabilizer(rd).finite_part
    cent = central_translations(rd, radius)
    out = {g * o * t for g in ball for o in omega for t in cent}
    if len(out) > WINDOW_CAP:
        raise WindowTooLarge(f"{len(out)} window elements exceed the cap {WINDOW_CAP}")
    return sorted(out, key=lambda g: g.sort_key(rd))


@lru_cache(maxsize=None)
def build_window(rd: RootDatum, radius: int) -> Window:
    if radius < 1:
        raise ValueError("radius must be at least 1")
    alcoves = affine_ball(rd, radius)
    faces = facets_of_closed_alcove(rd)
    objs = {g.act_facet(f) for g in alcoves for f in faces}
    objects = sorted(objs, key=lambda f: (f.dim, f.key))
    return Window(rd, radius, alcoves, _window_elements(rd, radius), objects,
                  {f: k for k, f in enumerate(objects)})


# ---------------------------------------------------------------------------
# The pointwise fixer W_I
# ---------------------------------------------------------------------------

def pointwise_fixer(rd: RootDatum, facet: Facet, roots: Optional[Iterable[int]] = None) -> frozenset:
    """W_I as affine elements: (w, x - w x) for w in the reflection group of Phi_I.

    ``roots`` restricts Phi_I (e.g. to the roots of a Levi); indices are
    ambient root indices.
    """
    phi = facet.zero_roots if roots is None else facet.zero_roots & frozenset(roots)
    x = facet.witness
    out = set()
    for w in reflection_subgroup(rd, sorted(phi)).elements:
        out.add(AffineWeylElement(w, la.int_vec(la.vsub(x, la.matvec(w, x)))))
    return frozenset(out)


# ---------------------------------------------------------------------------
# The truncated (2,1)-category
# ---------------------------------------------------------------------------

@dataclass
class FacetCategory:
    rd: RootDatum
    radius: int
    objects: list
    elements: list
    one_cells: dict  # (i, j) -> list of element indices w with objects[i] <= w(objects[j])
    fixers: list  # per object: frozenset W_I (or W_{I_L})
    levi: Optional[tuple] = None

    def hom(self, i: int, j: int) -> list:
        return self.one_cells.get((i, j), [])

    @property
    def num_one_cells(self) -> int:
        return sum(len(v) for v in self.one_cells.values())


def build_truncation(rd: RootDatum, radius: int, levi_subset: Optional[Sequence[int]] = None) -> FacetCategory:
    """F_G (or F_{L in G} when ``levi_subset`` is given) restricted to a window."""
    win = build_window(rd, radius)
    if levi_subset is None:
        elements = win.elements
        levi_roots = None
    else:
        levi, emb = levi_subdatum(rd, levi_subset)
        elements = _window_elements(levi, radius)
        levi_roots = frozenset(emb.to_ambient)
    objects = win.objects
    images = [[g.act_facet(f) for f in objects] for g in elements]
    cells: dict = {}
    for i, fi in enumerate(objects):
        for j in range(len(objects)):
            ws = [k for k in range(len(elements)) if closure_le(fi, images[k][j])]
            if ws:
                cells[(i, j)] = ws
    fixers = [pointwise_fixer(rd, f, levi_roots) for f in objects]
    return FacetCategory(rd, radius, objects, elements, cells, fixers,
                         tuple(levi_subset) if levi_subset is not None else None)


def _classes(cat: FacetCategory, i: int, ws: Sequence[int], modulo_centre: bool = False) -> list[list]:
    """Partition the 1-cells ``ws`` out of object i into 2-cell classes.

    With ``modulo_centre`` the translations by X_* cap z_g are divided out
    first; those act freely and would otherwise make Hom sets grow with the
    radius of the window.
    """
    fix = cat.fixers[i]
    gs = [cat.elements[k] for k in ws]
    if modulo_centre:
        gs = sorted({AffineWeylElement(g.w, reduce_central(cat.rd, g.lam)) for g in gs})
    out: list = []
    for g in gs:
        g_inv = g.inverse()
        for cls in out:
            if cls[0] * g_inv in fix:
                cls.append(g)
                break
        else:
            out.append([g])
    return out


@dataclass
class OneCategoryReport:
    radius: int
    objects: int
    one_cells: int
    max_two_cells: int
    equivalence: bool
    composition: bool
    alcove_homs: tuple  # ((i, j, classes), ...) over faces of the fundamental alcove
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_two_cells <= 1 and self.equivalence and self.composition and not self.failures

    def signature(self) -> tuple:
        """The part of the report that does not depend on the radius."""
        return (self.passed, self.max_two_cells <= 1, self.alcove_homs)


def one_category_check(cat: FacetCategory) -> OneCategoryReport:
    """2-cells are unique, 2-cell classes form an equivalence relation, and
    composition descends to classes (for sources among the alcove faces)."""
    rd = cat.rd
    failures = []
    max_two = 0
    equivalence = True
    for (i, j), ws in cat.one_cells.items():
        fix = cat.fixers[i]
        gs = [cat.elements[k] for k in ws]
        # images[a][h] = number of u in W_I with u * g_a = h
        images = []
        for ga in gs:
            counts = Counter(u * ga for u in fix)
            max_two = max(max_two, max(counts.values()))
            images.append(counts)
        size = len(gs)
        related = [[gb in images[a] for gb in gs] for a in range(size)]
        ok = all(related[a][a] for a in range(size))
        ok = ok and all(related[a][b] == related[b][a] for a in range(size) for b in range(a))
        ok = ok and all(related[a][c] for a in range(size) for b in range(size) if related[a][b]
                        for c in range(size) if related[b][c])
        if not ok:
            equivalence = False
            failures.append(f"2-cells do not give an equivalence relation on Hom({i},{j})")
    base = facets_of_closed_alcove(rd)
    index = {f: k for k, f in enumerate(cat.objects)}
    base_idx = [index[f] for f in base]
    composition = True
    elem_index = {g: k for k, g in enumerate(cat.elements)}
    n = len(cat.objects)
    for i in base_idx:
        for j in range(n):
            cls_ij = _classes(cat, i, cat.hom(i, j))
            for m in range(n):
                out_jm = _classes(cat, j, cat.hom(j, m))
                if not cls_ij or not out_jm:
                    continue
                fix_i = cat.fixers[i]
                fi = cat.objects[i]
                for c1 in cls_ij:
                    for c2 in out_jm:
                        ref = c1[0] * c2[0]
                        ref_inv = ref.inverse()
                        if not closure_le(fi, ref.act_facet(cat.objects[m])):
                            composition = False
                            failures.append(f"composite leaves the hom set ({i},{m})")
                        for a in c1:
                            for b in c2:
                                if a * b * ref_inv not in fix_i:
                                    composition = False
                                    failures.append(f"composition not well defined on classes ({i},{j},{m})")
                        k = elem_index.get(ref)
                        if k is not None and k not in cat.hom(i, m):
                            composition = False
                            failures.append(f"window composite missing from Hom({i},{m})")
    homs = []
    for a, fa in enumerate(base):
        for b, fb in enumerate(base):
            ws = cat.hom(index[fa], index[fb])
            homs.append((a, b, len(_classes(cat, index[fa], ws, modulo_centre=True))))
    return OneCategoryReport(cat.radius, n, cat.num_one_cells, max_two, equivalence, composition,
                             tuple(homs), failures[:20])


@dataclass
class AlcoveEquivalenceReport:
    applicable: bool
    essentially_surjective: bool = True
    poset_matches: bool = True
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (not self.applicable) or (self.essentially_surjective and self.poset_matches and not self.failures)

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not applicable"
        return "pass" if self.passed else "FAIL"

    def signature(self) -> tuple:
        return (self.status, self.essentially_surjective, self.poset_matches)


def alcove_equivalence_check(cat: FacetCategory, force: bool = False) -> AlcoveEquivalenceReport:
    """F_A -> F_G is an equivalence on the window (simple, simply connected only).

    ``force`` runs the comparison outside that range too, as a negative control.
    """
    rd = cat.rd
    applicable = rd.is_simply_connected() and len(rd.components) == 1 and cat.levi is None
    if not (applicable or force):
        return AlcoveEquivalenceReport(False)
    base = facets_of_closed_alcove(rd)
    index = {f: k for k, f in enumerate(cat.objects)}
    failures = []
    surj = True
    for k, f in enumerate(cat.objects):
        # an isomorphism I -> J in F_G forces I = w(J)
        if not any(f.dim == b.dim and cat.hom(k, index[b]) for b in base):
            surj = False
            failures.append(f"object {k} is not isomorphic to an alcove face")
    matches = True
    for a in base:
        for b in base:
            n = len(_classes(cat, index[a], cat.hom(index[a], index[b])))
            expected = 1 if closure_le(a, b) else 0
            if n != expected:
                matches = False
                failures.append(f"Hom({a.key},{b.key}) has {n} classes, poset says {expected}")
    return AlcoveEquivalenceReport(True, surj, matches, failures)


# ---------------------------------------------------------------------------
# Fibers of alpha
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxWindow:
    """{x : lo_k <= f_k(x) <= hi_k}, f_k the simple roots followed by central coordinates."""

    lo: tuple
    hi: tuple


def box_functionals(rd: RootDatum) -> list[tuple]:
    rows = [rd.roots[i] for i in rd.simple]
    zb = rd.center_basis
    if zb:
        cols = [rd.coroots[i] for i in rd.simple] + list(zb)
        rows += list(la.inverse(la.transpose(cols))[len(rd.simple):])
    return [la.frac_vec(r) for r in rows]


def _box_vertices(rd: RootDatum, box: BoxWindow) -> list[tuple]:
    """Vertices of the box refined by every affine root hyperplane."""
    funcs = box_functionals(rd)
    corners = []
    for choice in product(*[(lo, hi) for lo, hi in zip(box.lo, box.hi)]):
        corners.append(la.normalize(la.solve(funcs, list(choice))))
    planes = []
    for f, lo, hi in zip(funcs, box.lo, box.hi):
        planes.append((f, Fraction(lo)))
        planes.append((f, Fraction(hi)))
    for i in rd.positive:
        vals = [rd.pair(i, c) for c in corners]
        for n in range(math.ceil(min(vals)), math.floor(max(vals)) + 1):
            planes.append((la.frac_vec(rd.roots[i]), Fraction(n)))
    out = set()
    for sub in combinations(planes, rd.rank):
        rows = [p[0] for p in sub]
        if la.rank(rows) < rd.rank:
            continue
        x = la.normalize(la.solve(rows, [p[1] for p in sub]))
        if all(lo <= la.dot(f, x) <= hi for f, lo, hi in zip(funcs, box.lo, box.hi)):
            out.add(x)
    return sorted(out)


def facets_meeting_box(rd: RootDatum, box: BoxWindow) -> list[Facet]:
    """Every affine facet meeting the box, exactly.

    Each cell of the refined decomposition contains the barycenter of some
    rank+1 (or fewer) of its vertices, so barycenters of small vertex sets
    reach every cell.
    """
    verts = _box_vertices(rd, box)
    if not verts:
        raise ValueError("empty window")
    seen = {}
    for k in range(1, rd.rank + 2):
        for sub in combinations(verts, k):
            p = la.vscale(Fraction(1, k), _sum(sub, rd.rank))
            f = facet_of_point(rd, p)
            seen.setdefault(f, f)
    return sorted(seen.values(), key=lambda f: (f.dim, f.key))


def _sum(vs, n: int) -> tuple:
    out = tuple(Fraction(0) for _ in range(n))
    for v in vs:
        out = la.vadd(out, v)
    return out


def reduced_euler_characteristic(order: Sequence[Sequence[bool]]) -> int:
    """Reduced Euler characteristic of the order complex, via the Moebius function.

    ``order[a][b]`` is True when a < b strictly; elements must be listed in a
    linear extension.
    """
    n = len(order)
    f = [0] * n
    for x in range(n):
        f[x] = 1 - sum(f[y] for y in range(x) if order[y][x])
    return -1 + sum(f)


def _connected(order: Sequence[Sequence[bool]]) -> bool:
    n = len(order)
    if n == 0:
        return False
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for b in range(n):
            if order[a][b]:
                parent[find(a)] = find(b)
    return len({find(a) for a in range(n)}) == 1


@dataclass
class FiberReport:
    name: str
    facets: list
    euler: int
    connected: bool

    @property
    def size(self) -> int:
        return len(self.facets)

    @property
    def passed(self) -> bool:
        return self.euler == 0 and self.connected


def alpha_fiber_report(rd: RootDatum, levi_subset: Sequence[int], j_point: Sequence, box: BoxWindow,
                       name: str = "") -> FiberReport:
    """Poset of G-facets inside the L-facet J_L (the L-facet of ``j_point``)
    that meet the window; PASS means reduced Euler characteristic 0 and
    connected, a proxy for contractibility."""
    levi, _ = levi_subdatum(rd, levi_subset)
    j_l = facet_of_point(levi, j_point)
    facets = [f for f in facets_meeting_box(rd, box) if facet_of_point(levi, f.witness) == j_l]
    facets.sort(key=lambda f: (f.dim, f.key))
    n = len(facets)
    order = [[a != b and closure_le(facets[a], facets[b]) for b in range(n)] for a in range(n)]
    return FiberReport(name, facets, reduced_euler_characteristic(order), _connected(order))


@dataclass(frozen=True)
class FiberCase:
    name: str
    preset: str
    levi: tuple  # positions of simple roots (0-based)
    j_point: tuple  # in coordinates of the simple coroots / central basis
    lo: tuple
    hi: tuple


def _h(*xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


SHIPPED_FIBER_CASES = (
    FiberCase("A1 sc, L=T, J=t, closed alcove", "A1 sc", (), _h(0), _h(0), _h(1)),
    FiberCase("A1 sc, L=T, single open facet", "A1 sc", (), _h(0), _h("1/2"), _h("1/2")),
    FiberCase("A1 sc, L=T, single vertex", "A1 sc", (), _h(0), _h(0), _h(0)),
    FiberCase("A1 sc, L=T, box around 0", "A1 sc", (), _h(0), _h(-2), _h(3)),
    FiberCase("A2 sc, L=A1, strip 0<a1<1", "A2 sc", (0,), _h("1/4", 0), _h("1/4", -1), _h("3/4", 1)),
    FiberCase("A2 sc, L=A1, wall a1=0", "A2 sc", (0,), _h(0, 0), _h(0, -1), _h(0, 2)),
    FiberCase("A2 sc, L=T, unit box", "A2 sc", (), _h(0, 0), _h(-1, -1), _h(1, 1)),
    FiberCase("A2 ad, L=A1, strip 0<a1<1", "A2 ad", (0,), _h("1/4", 0), _h("1/8", -1), _h("7/8", 1)),
    FiberCase("B2 sc, L=A1 short, strip", "B2 sc", (1,), _h(0, "1/4"), _h(-1, "1/8"), _h(1, "7/8")),
    FiberCase("G2 sc, L=T, box", "G2 sc", (), _h(0, 0), _h(-1, -1), _h(1, 1)),
    FiberCase("GL(2), L=T, box", "GL(2)", (), _h(0, 0), _h(-1, 0), _h(1, 1)),
)


def _coords_to_point(rd: RootDatum, coords: Sequence) -> tuple:
    """Point x with f_k(x) = coords[k] for the box functionals."""
    return la.normalize(la.solve(box_functionals(rd), list(coords)))


def run_fiber_case(case: FiberCase) -> FiberReport:
    rd = parse_preset(case.preset)
    subset = tuple(rd.simple[k] for k in case.levi)
    return alpha_fiber_report(rd, subset, _coords_to_point(rd, case.j_point), BoxWindow(case.lo, case.hi), case.name)


# ---------------------------------------------------------------------------
# Colimit verifier
# ---------------------------------------------------------------------------

@dataclass
class SampleResult:
    point: tuple
    covered: bool
    zigzag_length: int
    zigzag_ok: bool
    component_matches: bool
    stabilizer_direct: int
    stabilizer_generated: int

    @property
    def passed(self) -> bool:
        return (self.covered and self.zigzag_ok and self.component_matches
                and self.stabilizer_direct == self.stabilizer_generated)


@dataclass
class GroupoidReport:
    name: str
    seed: int
    samples: list

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.samples)

    @property
    def failures(self) -> list:
        return [s for s in self.samples if not s.passed]


def sample_points(rd: RootDatum, count: int, seed: int) -> list[tuple]:
    """Seeded rational points with small denominators (so walls are hit often)."""
    rng = random.Random(seed)
    funcs = box_functionals(rd)
    out = []
    for _ in range(count):
        d = rng.choice((1, 2, 3, 4, 6, 12))
        coords = [Fraction(rng.randint(-3 * d, 3 * d), d) for _ in funcs]
        out.append(la.normalize(la.solve(funcs, coords)))
    return out


def canonical_in_alcove(rd: RootDatum, y: Sequence) -> tuple:
    """The canonical point of the orbit of y in the closed alcove: minimum over
    Omega and central translations (central coordinates reduced to [0, 1))."""
    cands = []
    for o in alcove_stabilizer(rd).finite_part:
        p = o(y)
        cands.append(_central_reduce_point(rd, p))
    return min(cands)


def _central_reduce_point(rd: RootDatum, p: Sequence) -> tuple:
    lat = rd.central_lattice
    if not lat:
        return la.normalize(p)
    cols = [rd.coroots[i] for i in rd.simple] + list(lat)
    c = la.solve(la.transpose(cols), p)[len(rd.simple):]
    shift = (0,) * rd.rank
    for v, a in zip(lat, c):
        shift = la.vadd(shift, la.vscale(math.floor(a), v))
    return la.normalize(la.vsub(p, shift))


def bruteforce_representative(rd: RootDatum, x: Sequence) -> tuple:
    """Orbit representative in the closed alcove by exhaustive search over W
    and a box of translations; independent of the alcove walk."""
    x = la.frac_vec(x)
    verts = [v for comp in alcove_components(rd) for v in comp.vertices]
    bound = 1 + max((max(abs(c) for c in v) for v in verts), default=0)
    found = []
    for w in weyl_group(rd).elements:
        wx = la.matvec(w, x)
        # X_* is Z^rank in these coordinates
        ranges = [range(math.floor(-c - bound) - 1, math.ceil(-c + bound) + 2) for c in wx]
        for lam in product(*ranges):
            y = la.vadd(wx, lam)
            if in_closed_alcove(rd, y):
                found.append(canonical_in_alcove(rd, y))
    if not found:
        raise TheoremCheckError(f"no orbit point of {x} in the closed alcove")
    return min(found)


def _zigzag(rd: RootDatum, x: Sequence) -> tuple[list, bool]:
    """Alcove walk recorded as 1-cells (F_k, F_{k+1}, s_k) with y_k = s_k(y_{k+1})."""
    gens = simple_affine_reflections(rd)
    y = la.normalize(la.frac_vec(x))
    steps = []
    ok = True
    for _ in range(100000):
        if in_closed_alcove(rd, y):
            break
        s = next((g for g, i in zip(gens, rd.simple) if rd.pair(i, y) < 0), None)
        if s is None:
            s = next(g for g, h in zip(gens[len(rd.simple):], rd.highest_roots) if rd.pair(h, y) > 1)
        y2 = s(y)
        f1, f2 = facet_of_point(rd, y), facet_of_point(rd, y2)
        cell_ok = closure_le(f1, s.act_facet(f2)) and star_membership(f1, s(y2)) and s(y2) == y
        ok = ok and cell_ok
        steps.append((f1, f2, s))
        y = y2
    else:
        ok = False
    return steps, ok and in_closed_alcove(rd, y)


def _generated_order(gens: Iterable[AffineWeylElement], n: int, cap: int = 10000) -> int:
    ident = AffineWeylElement.identity(n)
    gens = list(gens)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise TheoremCheckError("generated stabilizer is unexpectedly large")
                queue.append(h)
    return len(seen)


def colim_sample(rd: RootDatum, x: Sequence, window: Window) -> SampleResult:
    x = la.normalize(la.frac_vec(x))
    fx = facet_of_point(rd, x)
    covered = star_membership(fx, x)
    steps, zig_ok = _zigzag(rd, x)
    g, y0 = walk_to_alcove(rd, x)
    via_walk = canonical_in_alcove(rd, y0)
    component = via_walk == bruteforce_representative(rd, x)
    direct = stabilizer_point(rd, x).quotient_order
    # automorphisms of y0 coming from the colimit diagram
    gens = set()
    for j in window.objects:
        if star_membership(j, y0):
            gens |= {u for u in pointwise_fixer(rd, j) if u(y0) == y0}
    gens |= {w for w in window.elements if w(y0) == y0}
    generated = _generated_order(gens, rd.rank)
    return SampleResult(x, covered, len(steps), zig_ok, component, direct, generated)


def colim_check(rd: RootDatum, samples: int = 100, seed: int = 0, radius: int = 2,
                points: Optional[Sequence] = None) -> GroupoidReport:
    """(a) coverage by stars, (b) pi_0 via explicit zigzags against a brute-force
    orbit representative, (c) stabilizer orders, direct vs generated."""
    window = build_window(rd, radius)
    pts = list(points) if points is not None else sample_points(rd, samples, seed)
    return GroupoidReport(rd.name, seed, [colim_sample(rd, p, window) for p in pts])


def facetcat_suite(rd: RootDatum, radius: int = 2) -> dict:
    cat = build_truncation(rd, radius)
    return {"one_category": one_category_check(cat), "alcove_equivalence": alcove_equivalence_check(cat)}


__all__ = [
    "AlcoveEquivalenceReport", "BoxWindow", "FacetCategory", "FiberCase", "FiberReport", "GroupoidReport",
    "OneCategoryReport", "SHIPPED_FIBER_CASES", "SampleResult", "Window", "WindowTooLarge", "affine_ball",
    "alcove_equivalence_check", "alpha_fiber_report", "box_functionals", "bruteforce_representative",
    "build_truncation", "build_window", "canonical_in_alcove", "colim_check", "colim_sample",
    "facetcat_suite", "facets_meeting_box", "one_category_check", "pointwise_fixer",
    "reduced_euler_characteristic", "run_fiber_case", "sample_points", "simple_affine_reflections",
]
