"""Exact linear algebra over Q and Z.

Matrices are tuples of row tuples, vectors are tuples.  Entries are ``int``
or ``Fraction``; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple
Matrix = tuple


def frac_vec(v: Iterable) -> Vector:
    return tuple(Fraction(x) for x in v)


def frac_mat(m: Iterable[Iterable]) -> Matrix:
    return tuple(frac_vec(r) for r in m)


def int_vec(v: Iterable) -> Vector:
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            raise ValueError(f"non-integral entry {x}")
        out.append(int(x))
    return tuple(out)


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(x, y)), 0)


def matvec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(r, v) for r in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def vadd(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> Vector:
    return tuple(c * a for a in x)


def normalize(v: Sequence) -> Vector:
    """Collapse integral Fractions to ints so equal vectors hash equally."""
    out = []
    for a in v:
        if isinstance(a, Fraction) and a.denominator == 1:
            a = a.numerator
        out.append(a)
    return tuple(out)


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: Optional[int] = None) -> list[Vector]:
    """Basis of {x : m x = 0} over Q."""
    if not m:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    rows, pivots = rref(m)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    """One rational solution of m x = b, or None."""
    if not m:
        return None if any(b) else ()
    aug = tuple(tuple(r) + (bi,) for r, bi in zip(m, b))
    rows, pivots = rref(aug)
    n = len(m[0])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = rows[i][n]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = tuple(tuple(r) + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(m))
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(r[n:]) for r in rows)


def det(m: Matrix) -> Fraction:
    rows = [[Fraction(x) for x in r] for r in m]
    n = len(rows)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return not any(v)
    return solve(transpose(tuple(tuple(x) for x in vectors)), v) is not None


def span_basis(vectors: Sequence[Sequence]) -> list[Vector]:
    """Row-reduced basis of the Q-span of ``vectors``."""
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        return []
    rows, pivots = rref(vecs)
    return [tuple(r) for r in rows[: len(pivots)]]


# ---------------------------------------------------------------------------
# Integer lattices
# ---------------------------------------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(a, b)


def common_denominator(values: Iterable) -> int:
    return reduce(_lcm, (Fraction(x).denominator for x in values), 1)


def column_hermite(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    """Column echelon form ``H = A U`` with ``U`` unimodular.

    Returns (H, U, pivots) where pivots lists (row, column) positions.
    Columns of ``U`` past the last pivot column span the integer kernel.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(map(int, r)) for r in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst: int, src: int, q: int) -> None:
        for r in h:
            r[dst] -= q * r[src]
        for r in u:
            r[dst] -= q * r[src]

    def swap(i: int, j: int) -> None:
        for r in h:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    pivots = []
    col = 0
    for i in range(m):
        if col == n:
            break
        for j in range(col + 1, n):
            while h[i][j] != 0:
                q = h[i][col] // h[i][j]
                colop(col, j, q)
                swap(col, j)
        if h[i][col] != 0:
            if h[i][col] < 0:
                for r in h:
                    r[col] = -r[col]
                for r in u:
                    r[col] = -r[col]
            pivots.append((i, col))
            col += 1
    return h, u, pivots


def _integer_rows(a: Sequence[Sequence], b: Optional[Sequence] = None):
    rows, rhs = [], []
    for k, r in enumerate(a):
        d = common_denominator(list(r) + ([b[k]] if b is not None else []))
        rows.append([int(Fraction(x) * d) for x in r])
        if b is not None:
            rhs.append(Fraction(b[k]) * d)
    return rows, rhs


def int_kernel(a: Sequence[Sequence], ncols: Optional[int] = None) -> list[Vector]:
    """Z-basis of {x in Z^n : a x = 0}."""
    if not a:
        n = ncols or 0
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rows, _ = _integer_rows(a)
    h, u, pivots = column_hermite(rows)
    n = len(rows[0])
    r = len(pivots)
    return [tuple(u[i][j] for i in range(n)) for j in range(r, n)]


def int_solve(a: Sequence[Sequence], b: Sequence) -> Optional[Vector]:
    """One integer solution of a x = b (a rational), or None."""
    if not a:
        return None
    rows, rhs = _integer_rows(a, b)
    if any(x.denominator != 1 for x in rhs):
        return None
    rhs = [int(x) for x in rhs]
    h, u, pivots = column_hermite(rows)
    n = len(rows[0])
    y = [0] * n
    pivot_of_row = dict(pivots)
    filled = 0
    for i in range(len(rows)):
        s = sum(h[i][k] * y[k] for k in range(filled))
        if i in pivot_of_row:
            c = pivot_of_row[i]
            num = rhs[i] - s
            if num % h[i][c]:
                return None
            y[c] = num // h[i][c]
            filled = c + 1
        elif s != rhs[i]:
            return None
    return tuple(sum(u[i][k] * y[k] for k in range(n)) for i in range(n))


def lattice_basis(generators: Sequence[Sequence]) -> list[Vector]:
    """Z-basis of the lattice generated by rational vectors."""
    gens = [tuple(g) for g in generators if any(g)]
    if not gens:
        return []
    d = common_denominator(x for g in gens for x in g)
    cols = [[int(Fraction(x) * d) for x in g] for g in gens]
    mat = [list(r) for r in zip(*cols)]
    h, _, pivots = column_hermite(mat)
    basis = []
    for _, c in pivots:
        basis.append(normalize(Fraction(h[i][c], d) for i in range(len(h))))
    return basis


def smith_invariants(a: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, ascending."""
    m = [list(map(int, r)) for r in a]
    if not m or not m[0]:
        return []
    rows, cols = len(m), len(m[0])
    invariants = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        m[t], m[pi] = m[pi], m[t]
        for r in m:
            r[t], r[pj] = r[pj], r[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, rows):
                q = m[i][t] // m[t][t]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    done = False
            for j in range(t + 1, cols):
                q = m[t][j] // m[t][t]
                if q:
                    for r in m:
                        r[j] -= q * r[t]
                if m[t][j]:
                    for r in m:
                        r[t], r[j] = r[j], r[t]
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if m[i][j] % m[t][t]), None)
                if bad is not None:
                    m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
                    done = False
        invariants.append(abs(m[t][t]))
        t += 1
    return invariants
