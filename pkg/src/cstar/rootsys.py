"""Root systems of the simple Lie algebras, Weyl orbits and Z-gradings.

Classical types live in Bourbaki coordinates with the standard dot product.
E, F and G live in the basis of simple roots, with a Gram matrix that gives
long roots squared length 2.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import exactlat as el
from .errors import InadmissibleType, InvalidNode

_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 3}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class DynkinType:
    letter: str
    rank: int

    def __post_init__(self):
        if self.letter in _FIXED_RANKS:
            if self.rank not in _FIXED_RANKS[self.letter]:
                raise InadmissibleType(f"{self.letter}{self.rank} is not a Dynkin type")
        elif self.letter in _MIN_RANK:
            if self.rank < _MIN_RANK[self.letter]:
                raise InadmissibleType(f"{self.letter}{self.rank} is not a Dynkin type")
        else:
            raise InadmissibleType(f"unknown letter {self.letter!r}")

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise InadmissibleType(f"cannot read a Dynkin type from {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def nodes(self) -> tuple:
        return tuple(range(1, self.rank + 1))

    @property
    def simply_laced(self) -> bool:
        return self.letter in "ADE"

    def __str__(self):
        return f"{self.letter}{self.rank}"


def _f(x) -> Fraction:
    return Fraction(x)


def _classical_simple(t: DynkinType) -> list:
    n, L = t.rank, t.letter
    dim = n + 1 if L == "A" else n
    e = [tuple(_f(1 if k == i else 0) for k in range(dim)) for i in range(dim)]
    roots = [el.sub(e[i], e[i + 1]) for i in range(n - 1)]
    if L == "A":
        roots.append(el.sub(e[n - 1], e[n]))
    elif L == "B":
        roots.append(e[n - 1])
    elif L == "C":
        roots.append(el.scale(2, e[n - 1]))
    else:
        roots.append(el.add(e[n - 2], e[n - 1]))
    return roots


def _edges(t: DynkinType) -> list:
    if t.letter == "E":
        full = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
        return [e for e in full if max(e) <= t.rank]
    if t.letter == "F":
        return [(1, 2), (2, 3), (3, 4)]
    return [(1, 2)]


def _exceptional_gram(t: DynkinType) -> tuple:
    n = t.rank
    if t.letter == "E":
        length = [_f(2)] * n
    elif t.letter == "F":
        length = [_f(2), _f(2), _f(1), _f(1)]
    else:
        length = [Fraction(2, 3), _f(2)]
    g = [[_f(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = length[i]
    for a, b in _edges(t):
        i, j = a - 1, b - 1
        # bond multiplicity is the ratio of squared lengths
        short = min(length[i], length[j])
        bond = max(length[i], length[j]) / short
        g[i][j] = g[j][i] = -short * bond / 2
    return tuple(tuple(r) for r in g)


def _height_key(coeffs: Sequence[int]):
    return (sum(coeffs), tuple(coeffs))


class RootSystem:
    """All roots of a simple Lie algebra in a fixed exact realization."""

    def __init__(self, t: DynkinType):
        self.type = t
        if t.letter in "ABCD":
            self.simple = tuple(_norm(a) for a in _classical_simple(t))
            self.gram = None
        else:
            self.simple = tuple(el.unit(t.rank, i) for i in range(t.rank))
            self.gram = tuple(_norm(r) for r in _exceptional_gram(t))
        self._functionals = {}
        self.ambient_dim = len(self.simple[0])
        self._close()

    # -- bilinear form ----------------------------------------------------
    def functional(self, y: Sequence) -> tuple:
        """Coordinates of x -> (x, y) as a row vector."""
        if self.gram is None:
            return tuple(y)
        y = tuple(y)
        row = self._functionals.get(y)
        if row is None:
            row = _norm(sum((g[j] * y[j] for j in range(len(y)) if y[j]), _f(0))
                        for g in self.gram)
            self._functionals[y] = row
        return row

    def form(self, x: Sequence, y: Sequence):
        if self.gram is None:
            return sum(a * b for a, b in zip(x, y))
        return sum(a * b for a, b in zip(x, self.functional(y)))

    def pair(self, x: Sequence, y: Sequence):
        """<x, y> where y is read as a coweight through the invariant form."""
        return self.form(x, y)

    def coroot(self, a: Sequence) -> tuple:
        return _norm(el.scale(Fraction(2) / self.form(a, a), a))

    @cached_property
    def simple_coroots(self) -> tuple:
        return tuple(self.coroot(a) for a in self.simple)

    @cached_property
    def _coroot_rows(self) -> tuple:
        return tuple(self.functional(c) for c in self.simple_coroots)

    def reflect(self, i: int, x: Sequence) -> tuple:
        """Simple reflection s_i (node i, 1-based)."""
        c = sum(a * b for a, b in zip(x, self._coroot_rows[i - 1]))
        if not c:
            return tuple(x)
        return _norm(a - c * b for a, b in zip(x, self.simple[i - 1]))

    @cached_property
    def cartan(self) -> tuple:
        """A[i][j] = <alpha_i, alpha_j^vee>."""
        return tuple(tuple(int(self.form(a, b)) for b in self.simple_coroots)
                     for a in self.simple)

    @cached_property
    def simple_gram(self) -> tuple:
        return tuple(tuple(self.form(a, b) for b in self.simple) for a in self.simple)

    def _combine(self, coeffs: Sequence) -> tuple:
        out = [0] * self.ambient_dim
        for c, a in zip(coeffs, self.simple):
            if c:
                for k in range(self.ambient_dim):
                    out[k] += c * a[k]
        return _norm(out)

    @cached_property
    def fundamental_weights(self) -> tuple:
        """lambda_j in the span of the simple roots with <lambda_j, alpha_i^vee> = delta."""
        inv = el.inverse(self.cartan)
        return tuple(self._combine(inv[j]) for j in range(self.type.rank))

    @cached_property
    def fundamental_coweights(self) -> tuple:
        """omega_j^vee with (alpha_i, omega_j^vee) = delta; pairing reads off coefficients."""
        inv = el.inverse(self.simple_gram)
        return tuple(self._combine(inv[j]) for j in range(self.type.rank))

    def coefficients(self, x: Sequence) -> tuple:
        """Coordinates of x in the basis of simple roots."""
        return tuple(_int_or_frac(self.form(x, w)) for w in self.fundamental_coweights)

    # -- roots --------------------------------------------------------------
    def _close(self):
        seen = set(self.simple)
        frontier = list(self.simple)
        while frontier:
            nxt = []
            for x in frontier:
                for i in self.type.nodes:
                    y = self.reflect(i, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        coeff = {r: self.coefficients(r) for r in seen}
        self._coeff = coeff
        self.roots = tuple(sorted(seen, key=lambda r: _height_key(coeff[r])))
        self.positive_roots = tuple(r for r in self.roots if sum(coeff[r]) > 0)

    def coeff(self, root) -> tuple:
        return self._coeff[root]

    def length2(self, x) -> Fraction:
        return self.form(x, x)

    @cached_property
    def highest_root(self) -> tuple:
        return self.roots[-1]

    @cached_property
    def long_roots(self) -> tuple:
        top = max(self.length2(r) for r in self.roots)
        return tuple(r for r in self.roots if self.length2(r) == top)

    def length_histogram(self) -> dict:
        return dict(Counter(self.length2(r) for r in self.roots))

    def positive_roots_avoiding(self, nodes: Iterable[int]) -> tuple:
        """Positive roots with zero coefficient at every node of `nodes`."""
        nodes = tuple(nodes)
        return tuple(r for r in self.positive_roots
                     if all(self._coeff[r][i - 1] == 0 for i in nodes))

    @cached_property
    def exponents(self) -> tuple:
        return exponents_from_roots(self._coeff[r] for r in self.positive_roots)

    @cached_property
    def weyl_order(self) -> int:
        out = 1
        for e in self.exponents:
            out *= e + 1
        return out

    def __repr__(self):
        return f"RootSystem({self.type}, {len(self.roots)} roots)"


def exponents_from_roots(coeffs: Iterable[Sequence[int]]) -> tuple:
    """Exponents read off the partition of positive roots by height.

    Works for reducible systems too: the exponent multisets of the
    components simply merge.
    """
    heights = Counter(sum(c) for c in coeffs)
    if not heights:
        return ()
    top = max(heights)
    out = []
    for k in range(1, top + 1):
        out += [k] * (heights.get(k, 0) - heights.get(k + 1, 0))
    return tuple(sorted(out))


def weyl_order_of(coeffs: Iterable[Sequence[int]]) -> int:
    out = 1
    for e in exponents_from_roots(coeffs):
        out *= e + 1
    return out


def _int_or_frac(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _norm(v: Iterable) -> tuple:
    """Entries that are whole numbers become ints, which keeps arithmetic fast."""
    return tuple(_int_or_frac(x) for x in v)


@lru_cache(maxsize=None)
def build_root_system(t: DynkinType) -> RootSystem:
    if isinstance(t, str):
        t = DynkinType.parse(t)
    return RootSystem(t)


def long_roots(rs: RootSystem) -> tuple:
    return rs.long_roots


def weyl_orbit_words(rs: RootSystem, w: Sequence) -> dict:
    """Weyl orbit of w mapped to a reflection word reaching each point.

    The word (i_1, ..., i_k) means s_{i_k} ... s_{i_1} w, i.e. reflections
    are applied left to right. BFS visits layers in sorted order, so both
    the orbit order and the words are deterministic.
    """
    start = _norm(_f(x) for x in w)
    words = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for i in rs.type.nodes:
                y = rs.reflect(i, x)
                if y not in words:
                    words[y] = words[x] + (i,)
                    nxt.append(y)
        frontier = sorted(nxt)
    return words


def weyl_orbit(rs: RootSystem, w: Sequence) -> tuple:
    return tuple(weyl_orbit_words(rs, w))


def apply_word(rs: RootSystem, word: Sequence[int], x: Sequence) -> tuple:
    for i in word:
        x = rs.reflect(i, x)
    return tuple(x)


def apply_inverse_word(rs: RootSystem, word: Sequence[int], x: Sequence) -> tuple:
    return apply_word(rs, tuple(reversed(word)), x)


@dataclass(frozen=True)
class Grading:
    """Integer grading of the roots by pairing with a coweight."""

    rs: RootSystem
    vector: tuple
    node: int | None = None
    convention: str = "coefficient"

    def value(self, x: Sequence):
        return _int_or_frac(self.rs.pair(x, self.vector))

    def __call__(self, x):
        return self.value(x)

    def values(self) -> dict:
        return {r: self.value(r) for r in self.rs.roots}

    def histogram(self) -> dict:
        return dict(sorted(Counter(self.values().values()).items()))

    @property
    def depth(self):
        return max(abs(v) for v in self.values().values())

    @property
    def is_short(self) -> bool:
        return self.depth <= 1


def _check_node(rs: RootSystem, j: int):
    if j not in rs.type.nodes:
        raise InvalidNode(f"{rs.type} has no node {j}")


def grading_by_node(rs: RootSystem, j: int, convention: str = "coefficient") -> Grading:
    """coefficient: g(beta) = coefficient of alpha_j; coroot: g(beta) = <beta, alpha_j^vee>."""
    _check_node(rs, j)
    if convention == "coefficient":
        cw = rs.fundamental_coweights[j - 1]
    elif convention == "coroot":
        cw = rs.simple_coroots[j - 1]
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return Grading(rs, cw, j, convention)


def short_grading_nodes(t: DynkinType) -> tuple:
    rs = build_root_system(t)
    return tuple(j for j in t.nodes if grading_by_node(rs, j).is_short)
