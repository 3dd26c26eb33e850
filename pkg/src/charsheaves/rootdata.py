"""Root data over exact integers: presets, validation, Weyl groups, Levis.

Coordinates: a root datum of rank ``n`` has character lattice X* = Z^n and
cocharacter lattice X_* = Z^n with the standard pairing.  Roots are stored
as X* vectors, coroots as X_* vectors, and the apartment t = X_* (x) Q is
the space of rational column vectors.  Weyl group elements are integer
matrices acting on X_* by left multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg as la
from .groups import DEFAULT_ELEMENT_CAP, FiniteGroup

FORMAT_VERSION = 1


class RootDatumError(ValueError):
    """Malformed or inconsistent root datum input."""


# ---------------------------------------------------------------------------
# Cartan matrices.  ``pair[i][j] = <alpha_i, alpha_j^vee>`` in Bourbaki order.
# ---------------------------------------------------------------------------

def cartan_pairing(letter: str, r: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    if letter == "A":
        for i in range(r - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    elif letter in ("B", "C"):
        if r < 2:
            raise RootDatumError(f"{letter}{r} needs rank >= 2")
        for i in range(r - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if letter == "B":  # alpha_r short: <alpha_{r-1}, alpha_r^vee> = -2
            a[r - 2][r - 1] = -2
        else:  # alpha_r long
            a[r - 1][r - 2] = -2
    elif letter == "D":
        if r < 3:
            raise RootDatumError("D needs rank >= 3")
        for i in range(r - 2):
            a[i][i + 1] = a[i + 1][i] = -1
        a[r - 3][r - 1] = a[r - 1][r - 3] = -1
    elif letter == "G":
        if r != 2:
            raise RootDatumError("G only in rank 2")
        a[0][1] = -1  # alpha_1 short
        a[1][0] = -3
    else:
        raise RootDatumError(f"unsupported Cartan type {letter}")
    return a


# Fundamental degrees, shipped as data and checked against closure enumeration.
DEGREES = {
    ("A", 1): (2,), ("A", 2): (2, 3), ("A", 3): (2, 3, 4), ("A", 4): (2, 3, 4, 5),
    ("B", 2): (2, 4), ("C", 2): (2, 4), ("B", 3): (2, 4, 6), ("C", 3): (2, 4, 6),
    ("D", 4): (2, 4, 4, 6), ("G", 2): (2, 6),
}

# Order of the fundamental group P^vee / Q^vee for simply connected presets.
CENTER_ORDER = {"A": lambda r: r + 1, "B": lambda r: 2, "C": lambda r: 2,
                "D": lambda r: 4, "G": lambda r: 1}


# ---------------------------------------------------------------------------
# RootDatum
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootDatum:
    """Validated root datum; immutable after construction.

    ``roots[i]`` pairs with ``coroots[i]``; indices ``0..N-1`` are the
    positive roots (by height, then lexicographically) and ``i + N`` is the
    negative of root ``i``.  ``simple`` lists indices of the simple roots.
    """

    rank: int
    roots: tuple
    coroots: tuple
    simple: tuple
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False)
    _coindex: dict = field(default_factory=dict, repr=False)

    # -- basic data ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.rank

    @property
    def num_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def positive(self) -> range:
        return range(self.num_positive)

    def neg(self, i: int) -> int:
        n = self.num_positive
        return i + n if i < n else i - n

    def is_positive(self, i: int) -> bool:
        return i < self.num_positive

    def root_index(self, v: Sequence) -> int:
        return self._index[la.normalize(v)]

    def coroot_index(self, v: Sequence) -> int:
        return self._coindex[la.normalize(v)]

    def pair(self, i: int, x: Sequence) -> Fraction:
        """<alpha_i, x> for x in t."""
        return la.dot(self.roots[i], x)

    @cached_property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    @cached_property
    def simple_coefficients(self) -> tuple:
        """Coordinates of every root in the basis of simple roots."""
        basis = la.transpose(tuple(self.roots[i] for i in self.simple))
        out = []
        for r in self.roots:
            c = la.solve(basis, r)
            out.append(la.int_vec(c))
        return tuple(out)

    def height(self, i: int) -> int:
        return sum(self.simple_coefficients[i])

    def reflection(self, i: int) -> tuple:
        """Matrix of s_alpha on X_*: x - <alpha, x> alpha^vee."""
        a, c = self.roots[i], self.coroots[i]
        n = self.rank
        return tuple(tuple(int(r == s) - c[r] * a[s] for s in range(n)) for r in range(n))

    @cached_property
    def center_basis(self) -> list:
        """Q-basis of z_g = the common kernel of all roots."""
        return la.nullspace(tuple(self.roots[i] for i in self.positive), self.rank)

    @cached_property
    def central_lattice(self) -> list:
        """Z-basis of X_* intersected with z_g."""
        return la.int_kernel(tuple(self.roots[i] for i in self.positive), self.rank)

    @cached_property
    def components(self) -> list[tuple[int, ...]]:
        """Irreducible components as tuples of simple-root indices."""
        return _connected_components(self.simple, lambda i, j: self.pair(i, self.coroots[j]) != 0)

    @cached_property
    def highest_roots(self) -> list[int]:
        out = []
        for comp in self.components:
            cs = set(comp)
            best = None
            for i in self.positive:
                coeffs = self.simple_coefficients[i]
                support = {self.simple[k] for k, c in enumerate(coeffs) if c}
                if support <= cs and (best is None or self.height(i) > self.height(best)):
                    best = i
            out.append(best)
        return out

    @cached_property
    def is_semisimple(self) -> bool:
        return self.semisimple_rank == self.rank

    def is_simply_connected(self) -> bool:
        """X_* equals the coroot lattice (on the semisimple part) and no torus."""
        if not self.is_semisimple:
            return False
        basis = [self.coroots[i] for i in self.simple]
        return abs(la.det(basis)) == 1

    def permutation(self, w: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Image index of each root under the Weyl element ``w`` (acting on X_*)."""
        return tuple(self._coindex[la.normalize(la.matvec(w, c))] for c in self.coroots)

    def length(self, w) -> int:
        perm = self.permutation(w)
        return sum(1 for i in self.positive if not self.is_positive(perm[i]))

    def summary(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "semisimple_rank": self.semisimple_rank,
            "num_roots": len(self.roots),
            "simple_roots": [list(self.roots[i]) for i in self.simple],
            "simple_coroots": [list(self.coroots[i]) for i in self.simple],
            "components": [simple_type_of(self, comp) for comp in self.components],
            "simply_connected": self.is_simply_connected(),
        }


def _connected_components(nodes: Sequence[int], adjacent) -> list[tuple[int, ...]]:
    remaining = list(nodes)
    comps = []
    while remaining:
        stack = [remaining.pop(0)]
        comp = set(stack)
        while stack:
            a = stack.pop()
            for b in list(remaining):
                if adjacent(a, b) or adjacent(b, a):
                    remaining.remove(b)
                    comp.add(b)
                    stack.append(b)
        comps.append(tuple(sorted(comp)))
    return comps


def build_root_datum(rank: int, roots: Iterable, coroots: Iterable,
                     simple_roots: Optional[Iterable] = None, name: str = "") -> RootDatum:
    """Validate (root, coroot) pairs and put them into canonical order."""
    pairs = [(la.int_vec(a), la.int_vec(c)) for a, c in zip(roots, coroots)]
    roots_l = [a for a, _ in pairs]
    if len(set(roots_l)) != len(roots_l):
        raise RootDatumError("duplicate roots")
    for a, c in pairs:
        if len(a) != rank or len(c) != rank:
            raise RootDatumError("vector length does not match rank")
        if la.dot(a, c) != 2:
            raise RootDatumError(f"<alpha, alpha^vee> != 2 for {a}")
    coroot_of = dict(pairs)
    if len(set(coroot_of.values())) != len(pairs):
        raise RootDatumError("duplicate coroots")
    for a, c in pairs:
        neg = tuple(-x for x in a)
        if coroot_of.get(neg) != tuple(-x for x in c):
            raise RootDatumError(f"root system is not symmetric at {a}")
        for b, d in pairs:
            sb = tuple(x - la.dot(b, c) * y for x, y in zip(b, a))
            sd = tuple(x - la.dot(a, d) * y for x, y in zip(d, c))
            if coroot_of.get(sb) != sd:
                raise RootDatumError(f"reflection closure fails: s_{a}({b})")

    if not pairs:
        return RootDatum(rank, (), (), (), name)

    if simple_roots is None:
        simple_vecs = _choose_simple(roots_l, coroot_of, rank)
    else:
        simple_vecs = [la.int_vec(s) for s in simple_roots]
        if any(s not in coroot_of for s in simple_vecs):
            raise RootDatumError("simple root not in root list")
    # base check: independence + every root a same-sign integer combination
    if la.rank(simple_vecs) != len(simple_vecs):
        raise RootDatumError("simple roots are linearly dependent")
    basis = la.transpose(simple_vecs)
    coeffs = {}
    for a in roots_l:
        c = la.solve(basis, a)
        if c is None or not la.is_integral(c):
            raise RootDatumError(f"simple roots do not span root {a} integrally")
        c = la.int_vec(c)
        if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise RootDatumError("simple set is not a base")
        coeffs[a] = c

    positives = [a for a in roots_l if sum(coeffs[a]) > 0]
    positives.sort(key=lambda a: (sum(coeffs[a]), tuple(-x for x in coeffs[a]), a))
    ordered = positives + [tuple(-x for x in a) for a in positives]
    rts = tuple(ordered)
    cos = tuple(coroot_of[a] for a in ordered)
    idx = {a: i for i, a in enumerate(rts)}
    simple = tuple(sorted(idx[s] for s in simple_vecs))
    coidx = {c: i for i, c in enumerate(cos)}
    return RootDatum(rank, rts, cos, simple, name, idx, coidx)


def _choose_simple(roots_l, coroot_of, rank):
    n = 1000003
    v = tuple(n ** k for k in range(rank))
    if any(la.dot(a, v) == 0 for a in roots_l):
        v = tuple(n ** k + k for k in range(rank))
    pos = [a for a in roots_l if la.dot(a, v) > 0]
    pos_set = set(pos)
    simple = []
    for a in pos:
        decomposable = any(tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos)
        if not decomposable:
            simple.append(a)
    return simple


def _closure_from_simple(simple_roots, simple_coroots):
    pairs = {(tuple(a), tuple(c)) for a, c in zip(simple_roots, simple_coroots)}
    frontier = list(pairs)
    refl = list(zip(simple_roots, simple_coroots))
    while frontier:
        nxt = []
        for b, d in frontier:
            for a, c in refl:
                sb = tuple(x - la.dot(b, c) * y for x, y in zip(b, a))
                sd = tuple(x - la.dot(a, d) * y for x, y in zip(d, c))
                if (sb, sd) not in pairs:
                    pairs.add((sb, sd))
                    nxt.append((sb, sd))
        frontier = nxt
    pairs = sorted(pairs)
    return [p[0] for p in pairs], [p[1] for p in pairs]


def change_cocharacter_lattice(rd: RootDatum, generators: Sequence[Sequence], name: str = "") -> RootDatum:
    """Replace X_* by the lattice generated by X_* and rational ``generators``.

    Every root must stay integral on the new lattice.
    """
    gens = [tuple(Fraction(int(i == j)) for j in range(rd.rank)) for i in range(rd.rank)]
    gens += [la.frac_vec(g) for g in generators]
    basis = la.lattice_basis(gens)
    if len(basis) != rd.rank:
        raise RootDatumError("lattice generators do not have full rank")
    bmat = la.transpose(basis)  # columns = new basis vectors in old coordinates
    binv = la.inverse(bmat)
    new_roots = [la.int_vec(la.matvec(la.transpose(bmat), a)) for a in rd.roots]
    new_coroots = [la.int_vec(la.matvec(binv, c)) for c in rd.coroots]
    simple = [new_roots[i] for i in rd.simple]
    return build_root_datum(rd.rank, new_roots, new_coroots, simple, name or rd.name)


def direct_sum(*rds: RootDatum, name: str = "") -> RootDatum:
    rank = sum(r.rank for r in rds)
    roots, coroots, simple = [], [], []
    off = 0
    for r in rds:
        pad = lambda v: (0,) * off + tuple(v) + (0,) * (rank - off - r.rank)
        roots += [pad(a) for a in r.roots]
        coroots += [pad(c) for c in r.coroots]
        simple += [pad(r.roots[i]) for i in r.simple]
        off += r.rank
    return build_root_datum(rank, roots, coroots, simple, name or " x ".join(r.name for r in rds))


# ---------------------------------------------------------------------------
# Presets and parsing
# ---------------------------------------------------------------------------

def simple_preset(letter: str, r: int, isogeny: str = "sc") -> RootDatum:
    pair = cartan_pairing(letter, r)
    # simply connected: X_* basis = simple coroots
    sroots = [tuple(pair[i]) for i in range(r)]
    scoroots = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots, coroots = _closure_from_simple(sroots, scoroots)
    label = f"{letter}{r} {isogeny}"
    sc = build_root_datum(r, roots, coroots, sroots, label)
    if isogeny == "sc":
        return sc
    cw = fundamental_coweights(sc)
    if isogeny == "ad":
        return change_cocharacter_lattice(sc, cw, label)
    if re.fullmatch(r"\d+", isogeny):
        d = int(isogeny)
        if letter != "A" or (r + 1) % d:
            raise RootDatumError(f"isogeny {isogeny} not available for {letter}{r}")
        gen = la.vscale((r + 1) // d, cw[0])
        return change_cocharacter_lattice(sc, [gen], label)
    raise RootDatumError(f"unknown isogeny '{isogeny}'")


def fundamental_coweights(rd: RootDatum) -> list[tuple]:
    """omega_j^vee in span of coroots with <alpha_i, omega_j^vee> = delta_ij."""
    simple_roots = tuple(rd.roots[i] for i in rd.simple)
    coroot_cols = la.transpose(tuple(rd.coroots[i] for i in rd.simple))
    out = []
    for j in range(len(rd.simple)):
        target = tuple(int(i == j) for i in range(len(rd.simple)))
        m = la.matmul(simple_roots, coroot_cols)
        c = la.solve(m, target)
        out.append(la.matvec(coroot_cols, c))
    return out


def gl_preset(n: int) -> RootDatum:
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                roots.append(tuple(int(k == i) - int(k == j) for k in range(n)))
    simple = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1)]
    return build_root_datum(n, roots, roots, simple, f"GL({n})")


def torus_preset(n: int) -> RootDatum:
    return build_root_datum(n, [], [], [], f"T{n}")


_SIMPLE_RE = re.compile(r"^([ABCDG])(\d+)\s*(sc|ad|\d+)?$")


def parse_preset(text: str) -> RootDatum:
    """Parse names like ``"A2 sc"``, ``"GL(3)"``, ``"A1 ad x GL(1)"``."""
    parts = [p.strip() for p in re.split(r"\s+x\s+|\s*×\s*|\s*\*\s*", text.strip()) if p.strip()]
    if not parts:
        raise RootDatumError("empty root datum spec")
    rds = [_parse_factor(p) for p in parts]
    if len(rds) == 1:
        return rds[0]
    return direct_sum(*rds, name=" x ".join(r.name for r in rds))


def _parse_factor(p: str) -> RootDatum:
    m = re.fullmatch(r"(GL|SL|PGL)\((\d+)\)", p.replace(" ", ""))
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            raise RootDatumError(f"{p} has rank 0")
        if kind == "GL":
            return gl_preset(n)
        if n < 2:
            raise RootDatumError(f"{p} has no roots; use GL(1) or T1")
        return simple_preset("A", n - 1, "sc" if kind == "SL" else "ad")
    m = re.fullmatch(r"T(\d+)", p)
    if m:
        if int(m.group(1)) < 1:
            raise RootDatumError(f"{p} has rank 0")
        return torus_preset(int(m.group(1)))
    m = _SIMPLE_RE.match(p)
    if not m:
        raise RootDatumError(f"malformed root datum spec '{p}'")
    letter, r, iso = m.group(1), int(m.group(2)), m.group(3) or "sc"
    if r < 1:
        raise RootDatumError(f"{p} has rank 0")
    if letter == "C" and r == 2:
        letter = "B"  # B2 and C2 are the same root system
    return simple_preset(letter, r, iso)


def parse_root_datum(spec) -> RootDatum:
    """Build a root datum from a preset string, a mapping, or a TOML file path.

    Mappings/TOML documents carry ``format = 1`` and either ``type`` (a preset
    string) or explicit ``roots`` / ``coroots`` integer matrices, with an
    optional ``pairing`` matrix P (so that <x, y> = x^T P y), optional
    ``simple`` root indices and ``generate = true`` to close the given
    pairs under reflections.
    """
    if isinstance(spec, RootDatum):
        return spec
    if isinstance(spec, Path) or (isinstance(spec, str) and spec.endswith(".toml")):
        return parse_root_datum(load_toml(Path(spec)))
    if isinstance(spec, str):
        return parse_preset(spec)
    if not isinstance(spec, Mapping):
        raise RootDatumError(f"cannot parse root datum from {type(spec).__name__}")
    fmt = spec.get("format", FORMAT_VERSION)
    if fmt != FORMAT_VERSION:
        raise RootDatumError(f"unsupported format {fmt}")
    if "type" in spec:
        return parse_preset(spec["type"])
    try:
        roots = [tuple(map(int, r)) for r in spec["roots"]]
        coroots = [tuple(map(int, r)) for r in spec["coroots"]]
    except KeyError as exc:
        raise RootDatumError(f"missing field {exc}") from None
    rank = int(spec.get("rank", len(roots[0]) if roots else 0))
    if len(roots) != len(coroots):
        raise RootDatumError("roots and coroots differ in length")
    if "pairing" in spec:
        p = [tuple(map(int, r)) for r in spec["pairing"]]
        if len(p) != rank or abs(la.det(p)) != 1:
            raise RootDatumError("pairing is not perfect")
        coroots = [la.int_vec(la.matvec(p, c)) for c in coroots]
    simple = None
    if spec.get("generate"):
        roots, coroots = _closure_from_simple(roots, coroots)
        simple = None
    if "simple" in spec:
        simple = [roots[i] for i in spec["simple"]]
    return build_root_datum(rank, roots, coroots, simple, spec.get("name", "explicit"))


PRESET_DIR = Path(__file__).parent / "data" / "presets"


def load_toml(path: Path) -> dict:
    """Read a TOML file; a bare file name missing locally falls back to the shipped presets."""
    if not path.exists() and path.parent == Path(".") and (PRESET_DIR / path.name).exists():
        path = PRESET_DIR / path.name
    try:
        import tomllib
    except ModuleNotFoundError:  # Python < 3.11
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


# ---------------------------------------------------------------------------
# Weyl group
# ---------------------------------------------------------------------------

_WEYL_CACHE: dict[int, FiniteGroup] = {}


def weyl_group(rd: RootDatum, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteGroup:
    key = id(rd)
    if key in _WEYL_CACHE and _WEYL_CACHE[key]._rd is rd:
        return _WEYL_CACHE[key]
    gens = [rd.reflection(i) for i in rd.simple] or [la.identity(rd.rank)]
    group = FiniteGroup.generated_by(gens, cap=cap, sort_key=lambda m: (rd.length(m), m))
    group._rd = rd
    _WEYL_CACHE[key] = group
    return group


def reflection_subgroup(rd: RootDatum, root_indices: Iterable[int]) -> FiniteGroup:
    gens = [rd.reflection(i) for i in root_indices] or [la.identity(rd.rank)]
    return FiniteGroup.generated_by(gens, sort_key=lambda m: (rd.length(m), m))


def weyl_order_from_degrees(letter: str, r: int) -> int:
    out = 1
    for d in DEGREES[(letter, r)]:
        out *= d
    return out


# ---------------------------------------------------------------------------
# Root subsystems
# ---------------------------------------------------------------------------

def span_closure(rd: RootDatum, indices: Iterable[int]) -> frozenset:
    """Roots in the Q-span of the given roots."""
    vecs = [rd.roots[i] for i in indices]
    if not vecs:
        return frozenset()
    return frozenset(i for i, a in enumerate(rd.roots) if la.in_span(vecs, a))


def reflection_closure(rd: RootDatum, indices: Iterable[int]) -> frozenset:
    out = set(indices)
    frontier = list(out)
    while frontier:
        nxt = []
        for i in frontier:
            for j in list(out):
                for a, b in ((i, j), (j, i)):
                    k = rd.root_index(la.vsub(rd.roots[b], la.vscale(rd.pair(b, rd.coroots[a]), rd.roots[a])))
                    if k not in out:
                        out.add(k)
                        nxt.append(k)
        frontier = nxt
    return frozenset(out)


def is_reflection_closed(rd: RootDatum, subset: Iterable[int]) -> bool:
    s = set(subset)
    for i in s:
        for j in s:
            v = la.vsub(rd.roots[j], la.vscale(rd.pair(j, rd.coroots[i]), rd.roots[i]))
            if rd.root_index(v) not in s:
                return False
    return True


@dataclass(frozen=True)
class LeviEmbedding:
    """Index maps between a Levi sub-root-datum and its ambient datum."""

    to_ambient: tuple  # sub root index -> ambient root index
    simple_subset: tuple  # ambient simple indices generating the Levi

    def from_ambient(self) -> dict:
        return {g: l for l, g in enumerate(self.to_ambient)}


def levi_subdatum(rd: RootDatum, simple_subset: Iterable[int]) -> tuple[RootDatum, LeviEmbedding]:
    subset = tuple(sorted(set(simple_subset)))
    if any(i not in rd.simple for i in subset):
        raise RootDatumError(f"{subset} is not a subset of the simple roots {rd.simple}")
    phi_l = span_closure(rd, subset)
    if phi_l != reflection_closure(rd, subset):
        raise RootDatumError("Levi subsystem is not rationally closed")  # cannot happen for bases
    names = {rd.simple.index(i) + 1 for i in subset}
    label = f"{rd.name}|L{sorted(names)}" if rd.name else f"L{sorted(names)}"
    sub = build_root_datum(rd.rank, [rd.roots[i] for i in sorted(phi_l)],
                           [rd.coroots[i] for i in sorted(phi_l)],
                           [rd.roots[i] for i in subset], label)
    emb = LeviEmbedding(tuple(rd.root_index(a) for a in sub.roots), subset)
    return sub, emb


def simple_system(rd: RootDatum, subset: Iterable[int], positive: Optional[Iterable[int]] = None) -> tuple:
    """Simple roots of a closed subsystem with respect to a positive system.

    ``positive`` defaults to the subsystem's intersection with the ambient
    positive roots.
    """
    s = frozenset(subset)
    pos = frozenset(positive) if positive is not None else frozenset(i for i in s if rd.is_positive(i))
    vec_pos = {la.normalize(rd.roots[i]) for i in pos}
    simple = []
    for i in sorted(pos):
        a = rd.roots[i]
        if not any(la.normalize(la.vsub(a, rd.roots[j])) in vec_pos for j in pos if j != i):
            simple.append(i)
    return tuple(simple)


def positive_systems(rd: RootDatum, subset: Iterable[int]) -> list[frozenset]:
    """All positive systems of the closed subsystem ``subset``."""
    s = frozenset(subset)
    w = weyl_group(rd)
    found = set()
    for m in w.elements:
        perm = rd.permutation(m)
        found.add(frozenset(i for i in s if rd.is_positive(perm[rd.neg(i)]) is False))
    return sorted(found, key=lambda p: tuple(sorted(p)))


# ---------------------------------------------------------------------------
# Type decomposition of closed subsystems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    letter: str
    rank: int
    lattice_key: str
    simple: tuple  # ambient root indices, Bourbaki order
    roots: frozenset

    @property
    def cartan_type(self) -> str:
        return f"{self.letter}{self.rank}"

    def record(self) -> tuple:
        return (self.cartan_type, self.rank, self.lattice_key)


@dataclass(frozen=True)
class PseudoLeviType:
    factors: tuple
    central_rank: int
    split: bool  # projected cocharacter lattice is the product of the per-factor ones
    projected_basis: tuple  # Z-basis, coordinates in the concatenated simple coroots
    roots: frozenset

    def summary(self) -> list[tuple]:
        out = [f.record() for f in self.factors]
        if self.central_rank:
            out.append(("T", self.central_rank, "trivial"))
        if not out:
            out.append(("T", 0, "trivial"))
        return out

    def label(self) -> str:
        parts = [f"{f.cartan_type}[{f.lattice_key}]" for f in self.factors]
        if self.central_rank:
            parts.append(f"T{self.central_rank}")
        s = "x".join(parts) if parts else "T0"
        return s if self.split else s + "/nonsplit"


def classify_cartan(pair: list[list[int]]) -> tuple[str, list[int]]:
    """Cartan type letter and Bourbaki ordering of a connected Cartan matrix."""
    r = len(pair)
    if r == 1:
        return "A", [0]
    nbrs = {i: [j for j in range(r) if j != i and pair[i][j]] for i in range(r)}
    prod = {(i, j): pair[i][j] * pair[j][i] for i in range(r) for j in nbrs[i]}
    if any(len(v) > 3 for v in nbrs.values()):
        raise RootDatumError("unsupported Cartan graph")
    if any(len(v) == 3 for v in nbrs.values()):
        branch = next(i for i in range(r) if len(nbrs[i]) == 3)
        legs = []
        for start in nbrs[branch]:
            leg, prev, cur = [start], branch, start
            while True:
                nxt = [x for x in nbrs[cur] if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                leg.append(cur)
            legs.append(leg)
        legs.sort(key=len)
        if len(legs[0]) == 1 and len(legs[1]) == 1 and all(v == 1 for v in prod.values()):
            long_leg = legs[2]
            order = list(reversed(long_leg)) + [branch, legs[0][0], legs[1][0]]
            return "D", order
        raise RootDatumError("exceptional Cartan types E/F are not supported")
    ends = [i for i in range(r) if len(nbrs[i]) == 1]
    path = [min(ends)]
    while len(path) < r:
        path.append(next(x for x in nbrs[path[-1]] if x not in path))
    bonds = [prod[(path[k], path[k + 1])] for k in range(r - 1)]
    if all(b == 1 for b in bonds):
        return "A", path
    if r == 2 and bonds[0] == 3:
        a, b = path
        # Bourbaki G2: alpha_1 short, <alpha_2, alpha_1^vee> = -3
        return ("G", [a, b]) if pair[b][a] == -3 else ("G", [b, a])
    if bonds.count(2) == 1 and bonds[0] in (1, 2) and (bonds[-1] == 2 or bonds[0] == 2):
        if bonds[0] == 2 and r > 2:
            path.reverse()
            bonds.reverse()
        if bonds[-1] != 2:
            raise RootDatumError("unsupported Cartan graph")
        i, j = path[-2], path[-1]
        if r == 2:
            # B2: alpha_1 long, alpha_2 short, <alpha_1, alpha_2^vee> = -2
            return ("B", [i, j]) if pair[i][j] == -2 else ("B", [j, i])
        return ("B", path) if pair[i][j] == -2 else ("C", path)
    raise RootDatumError("unsupported Cartan graph")


def simple_type_of(rd: RootDatum, simple_idx: Sequence[int]) -> str:
    pair = [[int(rd.pair(i, rd.coroots[j])) for j in simple_idx] for i in simple_idx]
    letter, _ = classify_cartan(pair)
    return f"{letter}{len(simple_idx)}"


def _key_from_invariants(inv: list[int], full_index: int) -> str:
    nontriv = [d for d in inv if d > 1]
    if not nontriv:
        return "sc"
    idx = 1
    for d in nontriv:
        idx *= d
    if idx == full_index and full_index > 1:
        return "ad"
    return "x".join(f"Z/{d}" for d in nontriv)


def simple_type_decomposition(rd: RootDatum, subset: Iterable[int]) -> PseudoLeviType:
    """Decompose a reflection-closed root subset into simple factors.

    Lattice keys describe the image of X_* in the span of the subsystem's
    coroots (projection along the common kernel of its roots), i.e. the
    cocharacter lattice of the pseudo-Levi modulo its connected center.
    """
    s = frozenset(subset)
    if not is_reflection_closed(rd, s):
        raise RootDatumError("root subset is not closed under its reflections")
    simple = simple_system(rd, s)
    comps = _connected_components(simple, lambda i, j: rd.pair(i, rd.coroots[j]) != 0)
    ordered_simple: list[int] = []
    facs = []
    for comp in comps:
        pair = [[int(rd.pair(i, rd.coroots[j])) for j in comp] for i in comp]
        letter, order = classify_cartan(pair)
        bour = tuple(comp[k] for k in order)
        ordered_simple.extend(bour)
        facs.append((letter, bour))
    k = len(ordered_simple)
    central_rank = rd.rank - k
    if k == 0:
        return PseudoLeviType((), central_rank, True, (), s)
    cartan = tuple(tuple(rd.pair(i, rd.coroots[j]) for j in ordered_simple) for i in ordered_simple)
    cinv = la.inverse(cartan)
    # projection of each X_* basis vector, in coordinates of the simple coroots
    proj = []
    for e in range(rd.rank):
        values = tuple(rd.roots[i][e] for i in ordered_simple)  # <beta_i, e>
        proj.append(la.matvec(cinv, values))
    gens = proj + [tuple(int(a == b) for b in range(k)) for a in range(k)]
    basis = la.lattice_basis(gens)
    total_index = 1 / abs(la.det(basis))
    factors = []
    off = 0
    prod_index = Fraction(1)
    for letter, bour in facs:
        r = len(bour)
        sub_gens = [g[off:off + r] for g in gens]
        sub_basis = la.lattice_basis(sub_gens)
        binv = la.inverse(la.transpose(sub_basis))
        inv = la.smith_invariants([la.int_vec(row) for row in binv])
        sub_index = 1 / abs(la.det(sub_basis))
        prod_index *= sub_index
        key = _key_from_invariants(inv, CENTER_ORDER[letter](r))
        roots = frozenset(i for i in s if set(
            j for j, c in zip(ordered_simple, _coeffs_in(rd, ordered_simple, i)) if c) <= set(bour))
        factors.append(Factor(letter, r, key, bour, roots))
        off += r
    split = prod_index == total_index
    return PseudoLeviType(tuple(factors), central_rank, split, tuple(basis), s)


def _coeffs_in(rd: RootDatum, simple: Sequence[int], i: int) -> tuple:
    basis = la.transpose(tuple(rd.roots[j] for j in simple))
    return la.solve(basis, rd.roots[i])


# ---------------------------------------------------------------------------
# Invariant form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantForm:
    gram: tuple  # symmetric positive-definite rational matrix on t

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return la.dot(x, la.matvec(self.gram, y))

    def is_invariant(self, group: FiniteGroup) -> bool:
        for w in group.elements:
            if la.matmul(la.matmul(la.transpose(w), self.gram), w) != self.gram:
                return False
        return True


def invariant_form(rd: RootDatum) -> InvariantForm:
    """W-invariant form: short coroots of each simple factor have square 2;
    identity on the central part in the basis ``rd.center_basis``."""
    n = rd.rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    for comp, hr in zip(rd.components, rd.highest_roots):
        comp_roots = [i for i in rd.positive if set(
            k for k, c in zip(rd.simple, rd.simple_coefficients[i]) if c) <= set(comp)]
        raw = [[sum(rd.roots[i][a] * rd.roots[i][b] for i in comp_roots) for b in range(n)] for a in range(n)]
        sq = [la.dot(rd.coroots[i], la.matvec(raw, rd.coroots[i])) for i in comp_roots]
        scale = Fraction(2) / min(sq)
        for a in range(n):
            for b in range(n):
                gram[a][b] += scale * raw[a][b]
    zb = rd.center_basis
    if zb:
        # central coordinates of x: solve x = x_ss + sum z_k c_k with x_ss in span(coroots)
        cols = [rd.coroots[i] for i in rd.simple] + list(zb)
        m = la.transpose(cols)
        minv = la.inverse(m)
        k0 = len(rd.simple)
        central_rows = minv[k0:]
        for a in range(n):
            for b in range(n):
                gram[a][b] += sum(r[a] * r[b] for r in central_rows)
    return InvariantForm(tuple(tuple(r) for r in gram))
