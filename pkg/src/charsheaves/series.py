"""Rational generating functions in (t, q) with denominators prod (1 - t^a q^b)."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


def _clean(poly: Mapping) -> dict:
    return {k: v for k, v in sorted(poly.items()) if v}


def poly_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = defaultdict(int)
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            out[(i + k, j + l)] += x * y
    return _clean(out)


def poly_pow(a: Mapping, n: int) -> dict:
    out = {(0, 0): 1}
    for _ in range(n):
        out = poly_mul(out, a)
    return out


@dataclass(frozen=True)
class BigradedSeries:
    """numerator / prod_k (1 - t^{a_k} q^{b_k}); numerator keyed by (t-degree, q-degree)."""

    numerator: tuple  # sorted ((a, b), coefficient) pairs
    denominator: tuple  # sorted (a, b) factors, a > 0

    @classmethod
    def make(cls, numerator: Mapping, denominator: Iterable[tuple] = ()) -> "BigradedSeries":
        den = tuple(sorted(tuple(d) for d in denominator))
        if any(a <= 0 for a, _ in den):
            raise ValueError("denominator factors need positive t-degree")
        return cls(tuple(_clean(numerator).items()), den)

    @classmethod
    def constant(cls, c) -> "BigradedSeries":
        return cls.make({(0, 0): c})

    def num(self) -> dict:
        return dict(self.numerator)

    def __mul__(self, other: "BigradedSeries") -> "BigradedSeries":
        return BigradedSeries.make(poly_mul(self.num(), other.num()), self.denominator + other.denominator)

    def scale(self, c) -> "BigradedSeries":
        return BigradedSeries.make({k: c * v for k, v in self.numerator}, self.denominator)

    def expand(self, max_t: int) -> dict:
        """Coefficients of t^a q^b for a <= max_t."""
        cur = {k: v for k, v in self.numerator if k[0] <= max_t}
        for a, b in self.denominator:
            nxt: dict = defaultdict(int)
            for (i, j), x in cur.items():
                k = 0
                while i + a * k <= max_t:
                    nxt[(i + a * k, j + b * k)] += x
                    k += 1
            cur = nxt
        return _clean(cur)

    def t_coefficients(self, n: int) -> list:
        """First n coefficients of the series in t with q = 1."""
        out = [0] * n
        for (a, _), c in self.expand(n - 1).items():
            out[a] += c
        return out

    def same_function(self, other: "BigradedSeries") -> bool:
        """Equality as rational functions (cross-multiplied)."""
        lhs = self.num()
        for d in other.denominator:
            lhs = poly_mul(lhs, {(0, 0): 1, d: -1})
        rhs = other.num()
        for d in self.denominator:
            rhs = poly_mul(rhs, {(0, 0): 1, d: -1})
        return lhs == rhs

    def is_nonnegative(self, max_t: int = 12) -> bool:
        return all(c >= 0 and Fraction(c).denominator == 1 for c in self.expand(max_t).values())

    def numerator_text(self) -> str:
        return _poly_text(self.num())

    def denominator_text(self) -> str:
        if not self.denominator:
            return "1"
        counts: dict = defaultdict(int)
        for d in self.denominator:
            counts[d] += 1
        parts = []
        for (a, b), n in sorted(counts.items()):
            f = f"(1-{_mono(a, b)})"
            parts.append(f if n == 1 else f"{f}^{n}")
        return "".join(parts)

    def __str__(self) -> str:
        return f"{self.numerator_text()} / {self.denominator_text()}"


def _mono(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("t" if a == 1 else f"t^{a}")
    if b:
        parts.append("q" if b == 1 else f"q^{b}")
    return "".join(parts) or "1"


def _poly_text(poly: Mapping) -> str:
    if not poly:
        return "0"
    terms = []
    for (a, b), c in sorted(poly.items()):
        m = _mono(a, b)
        if m == "1":
            terms.append(str(c))
        elif c == 1:
            terms.append(m)
        elif c == -1:
            terms.append(f"-{m}")
        else:
            terms.append(f"{c}{m}")
    return "+".join(terms).replace("+-", "-")


def sym_series(z_dim: int) -> BigradedSeries:
    """Hilbert series of Sym(z*[-2]<-2>): generators in bidegree (2, 2)."""
    return BigradedSeries.make({(0, 0): 1}, [(2, 2)] * z_dim)


def cohomology_torus_series(rank: int) -> BigradedSeries:
    """H*(BT) (x) H*(T) in t alone: (1+t)^r / (1-t^2)^r."""
    return BigradedSeries.make(poly_pow({(0, 0): 1, (1, 0): 1}, rank), [(2, 0)] * rank)
