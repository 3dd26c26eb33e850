"""Finite matrix groups with conjugacy classes and rational character tables."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable, Optional, Sequence

from .linalg import identity, matmul, nullspace, normalize

DEFAULT_ELEMENT_CAP = 10**6


class GroupClosureError(RuntimeError):
    pass


class NonRationalCharacterError(ArithmeticError):
    """Raised when a character table needs irrational values."""


def _norm_mat(m) -> tuple:
    return tuple(normalize(r) for r in m)


class FiniteGroup:
    """A finite group of square matrices, closed under multiplication.

    Elements are stored as row-tuple matrices in a deterministic order
    (identity first, then by ``sort_key``).  The multiplication table is
    built eagerly; groups in this package have at most a few thousand
    elements.
    """

    def __init__(self, elements: Sequence, generators: Sequence = (),
                 sort_key: Optional[Callable] = None):
        elems = {_norm_mat(e) for e in elements}
        if not elems:
            raise ValueError("empty group")
        n = len(next(iter(elems)))
        ident = _norm_mat(identity(n))
        if ident not in elems:
            raise ValueError("identity missing")
        key = sort_key or (lambda m: m)
        rest = sorted((e for e in elems if e != ident), key=key)
        self.elements: list[tuple] = [ident] + rest
        self.dim = n
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.generators = tuple(self._index[_norm_mat(g)] for g in generators)
        size = len(self.elements)
        self._mul = [[0] * size for _ in range(size)]
        for i, a in enumerate(self.elements):
            row = self._mul[i]
            for j, b in enumerate(self.elements):
                c = _norm_mat(matmul(a, b))
                k = self._index.get(c)
                if k is None:
                    raise ValueError("elements are not closed under multiplication")
                row[j] = k
        self._inv = [row.index(0) for row in self._mul]
        self._classes: Optional[list[tuple[int, ...]]] = None
        self._class_of: Optional[list[int]] = None
        self._table: Optional[list[tuple[Fraction, ...]]] = None

    # -- construction -----------------------------------------------------
    @classmethod
    def generated_by(cls, generators: Sequence, cap: int = DEFAULT_ELEMENT_CAP,
                     sort_key: Optional[Callable] = None) -> "FiniteGroup":
        gens = [_norm_mat(g) for g in generators]
        if not gens:
            raise ValueError("need at least one generator (pass the identity for the trivial group)")
        n = len(gens[0])
        ident = _norm_mat(identity(n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = _norm_mat(matmul(x, g))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise GroupClosureError(f"closure exceeds element cap {cap}")
            frontier = nxt
        return cls(list(seen), gens, sort_key=sort_key)

    # -- basic structure --------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, m) -> int:
        return self._index[_norm_mat(m)]

    def __contains__(self, m) -> bool:
        return _norm_mat(m) in self._index

    def mul(self, i: int, j: int) -> int:
        return self._mul[i][j]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self._mul[self._mul[g][x]][self._inv[g]]

    def subgroup(self, indices: Iterable[int]) -> "FiniteGroup":
        return FiniteGroup([self.elements[i] for i in indices])

    # -- classes ------------------------------------------------------------
    @property
    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        if self._classes is None:
            class_of = [-1] * self.order
            classes = []
            for x in range(self.order):
                if class_of[x] >= 0:
                    continue
                orbit = sorted({self.conj(g, x) for g in range(self.order)})
                for y in orbit:
                    class_of[y] = len(classes)
                classes.append(tuple(orbit))
            self._classes = classes
            self._class_of = class_of
        return self._classes

    def class_of(self, i: int) -> int:
        self.conjugacy_classes
        return self._class_of[i]

    @property
    def num_classes(self) -> int:
        return len(self.conjugacy_classes)

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.conjugacy_classes]

    # -- characters ---------------------------------------------------------
    def class_multiplication_matrices(self) -> list[list[list[int]]]:
        """``A[i][j][k]`` = #{(x, y) in C_i x C_j : x y = z_k} for fixed z_k in C_k."""
        classes = self.conjugacy_classes
        k = len(classes)
        reps = [c[0] for c in classes]
        a = [[[0] * k for _ in range(k)] for _ in range(k)]
        for i, ci in enumerate(classes):
            for x in ci:
                xi = self._inv[x]
                for kk, z in enumerate(reps):
                    y = self._mul[xi][z]
                    a[i][self.class_of(y)][kk] += 1
        return a

    def character_table(self) -> list[tuple[Fraction, ...]]:
        """Irreducible characters as value tuples indexed by class.

        Burnside's method: simultaneous eigenvectors of the class
        multiplication matrices.  Central characters of groups with rational
        character tables are integers, so eigenvalues are searched among
        integers bounded by the class size; anything else raises
        ``NonRationalCharacterError``.
        """
        if self._table is not None:
            return self._table
        a = self.class_multiplication_matrices()
        k = len(a)
        sizes = self.class_sizes()
        spaces = [[tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)]]
        for i in range(k):
            new_spaces = []
            for basis in spaces:
                if len(basis) == 1:
                    new_spaces.append(basis)
                    continue
                new_spaces.extend(_split_by_eigen(a[i], basis, sizes[i]))
            spaces = new_spaces
        if any(len(b) != 1 for b in spaces) or len(spaces) != k:
            raise NonRationalCharacterError("class algebra does not split over Q")
        order = self.order
        table = []
        for (w,) in spaces:
            w = tuple(x / w[0] for x in w)  # identity class is class 0
            s = sum(w[j] * w[j] / sizes[j] for j in range(k))
            deg2 = Fraction(order) / s
            if deg2.denominator != 1 or isqrt(deg2.numerator) ** 2 != deg2.numerator:
                raise NonRationalCharacterError("degree is not an integer")
            deg = isqrt(deg2.numerator)
            chi = tuple(deg * w[j] / sizes[j] for j in range(k))
            table.append(chi)
        table.sort(key=lambda c: (c[0], tuple(-x for x in c)))
        self._table = table
        return table


def _split_by_eigen(mat: list[list[int]], basis: list[tuple], bound: int) -> list[list[tuple]]:
    """Split the span of ``basis`` (invariant under ``mat``) into eigenspaces."""
    # Column vector convention: (mat w)_j = sum_k mat[j][k] w_k
    m = len(basis)
    k = len(basis[0])
    images = [tuple(sum(mat[j][t] * v[t] for t in range(k)) for j in range(k)) for v in basis]
    out = []
    found = 0
    for lam in range(-bound, bound + 1):
        # solve sum_c c_i (images_i - lam * basis_i) = 0
        cols = [tuple(images[i][j] - lam * basis[i][j] for i in range(m)) for j in range(k)]
        null = nullspace(tuple(cols), m)
        if null:
            vecs = [tuple(sum(c[i] * basis[i][j] for i in range(m)) for j in range(k)) for c in null]
            out.append(vecs)
            found += len(vecs)
            if found == m:
                break
    if found != m:
        raise NonRationalCharacterError("non-integral central character")
    return out


def inner_product(group: FiniteGroup, chi: Sequence, psi: Sequence) -> Fraction:
    """<chi, psi> for rational class functions given per class."""
    sizes = group.class_sizes()
    inv_class = [group.class_of(group.inv(c[0])) for c in group.conjugacy_classes]
    total = sum(Fraction(s) * chi[i] * psi[inv_class[i]] for i, s in enumerate(sizes))
    return total / group.order

