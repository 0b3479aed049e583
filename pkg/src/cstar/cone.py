"""Rational polyhedral cones with both generator and facet descriptions.

The conversion between the two descriptions is an integer double
description method. Everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import exactlat as el
from .errors import InvalidCone


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------

def extreme_rays(ineqs: Sequence[Sequence[int]], dim: int) -> list[tuple]:
    """Extreme rays of the pointed cone ``{x in Q^dim : a.x >= 0 for a in ineqs}``.

    The inequality matrix must have rank ``dim``. Rays come back primitive
    and integral, in a deterministic order.
    """
    rows = [el.vec(a) for a in ineqs]
    if dim == 0:
        return []
    # pick a maximal independent subset to seed the iteration
    basis_idx: list[int] = []
    for i in range(len(rows)):
        if el.rank([rows[j] for j in basis_idx] + [rows[i]]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == dim:
                break
    if len(basis_idx) < dim:
        raise InvalidCone("inequality system does not define a pointed cone")
    inv = el.inverse([rows[i] for i in basis_idx])
    rays = []
    zeros = []
    for c in range(dim):
        r = el.integralize([inv[k][c] for k in range(dim)])
        rays.append(r)
        z = 0
        for pos, i in enumerate(basis_idx):
            if pos != c:
                z |= 1 << i
        zeros.append(z)
    done = set(basis_idx)
    for i, a in enumerate(rows):
        if i in done:
            continue
        done.add(i)
        vals = [el.dot(a, r) for r in rays]
        pos = [k for k, x in enumerate(vals) if x > 0]
        neg = [k for k, x in enumerate(vals) if x < 0]
        zer = [k for k, x in enumerate(vals) if x == 0]
        new_rays = [rays[k] for k in pos + zer]
        new_zeros = [zeros[k] for k in pos] + [zeros[k] | (1 << i) for k in zer]
        if neg and pos:
            need = dim - 2
            for p in pos:
                for q in neg:
                    common = zeros[p] & zeros[q]
                    if bin(common).count("1") < need:
                        continue
                    adjacent = True
                    for k in range(len(rays)):
                        if k != p and k != q and zeros[k] & common == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    w = el.primitive(el.sub(el.scale(vals[p], rays[q]),
                                            el.scale(vals[q], rays[p])))
                    new_rays.append(w)
                    new_zeros.append(common | (1 << i))
        rays, zeros = new_rays, new_zeros
    return sorted(set(rays))


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

class Cone:
    """A pointed rational polyhedral cone in ``Q^rank``.

    ``rays`` are primitive generators; redundant generators are discarded so
    that ``rays`` is exactly the list of extreme rays (original order kept).
    """

    def __init__(self, rank: int, rays: Iterable[Sequence[int]]):
        self.rank = int(rank)
        gens = []
        for r in rays:
            r = el.vec(r)
            if len(r) != self.rank:
                raise InvalidCone(f"ray {r} has wrong length for rank {rank}")
            if not any(r):
                raise InvalidCone("zero ray")
            r = el.primitive(r)
            if r not in gens:
                gens.append(r)
        self._gens = tuple(gens)
        if not self._is_pointed():
            raise InvalidCone("cone contains a line")
        facets_ray_sets = [self._zero_set(m, self._gens) for m in self.facets]
        keep = []
        for k, g in enumerate(self._gens):
            hits = [m for m, z in zip(self._facets_local, facets_ray_sets) if k in z]
            if self.dim == 1 or el.rank(hits) == self.dim - 1:
                keep.append(g)
        self.rays = tuple(keep)

    # -- internal helpers ---------------------------------------------------

    @staticmethod
    def _zero_set(m, gens):
        return frozenset(i for i, g in enumerate(gens) if el.dot(m, g) == 0)

    @cached_property
    def _lattice(self):
        return el.saturated_basis(self._gens, self.rank)

    @property
    def dim(self) -> int:
        return len(self._lattice[0])

    @property
    def equations(self) -> tuple:
        """Integer basis of the annihilator of span(cone)."""
        return self._lattice[2]

    def local(self, x: Sequence[int]) -> tuple:
        """Coordinates of ``x`` (assumed in span) in the saturated span lattice."""
        return el.matvec(self._lattice[1], x)

    @cached_property
    def _local_gens(self):
        return [self.local(g) for g in self._gens]

    def _is_pointed(self) -> bool:
        k = self.dim
        if k == 0:
            return True
        try:
            local = self._facets_local
        except InvalidCone:
            return False
        return el.rank(local) == k if local else False

    @cached_property
    def _facets_local(self) -> list:
        k = self.dim
        if k == 0:
            return []
        g = self._local_gens
        if len(g) == k:
            inv = el.inverse(g)  # columns of inverse are the dual basis
            return [el.integralize([inv[i][c] for i in range(k)]) for c in range(k)]
        return extreme_rays(g, k)

    @cached_property
    def facets(self) -> tuple:
        """Primitive inward facet normals lifted to the ambient dual lattice."""
        coords = self._lattice[1]
        out = []
        for n in self._facets_local:
            m = [0] * self.rank
            for ni, row in zip(n, coords):
                if ni:
                    for j, x in enumerate(row):
                        m[j] += ni * x
            out.append(tuple(m))
        return tuple(out)

    # -- queries ------------------------------------------------------------

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def in_span(self, x: Sequence) -> bool:
        return all(el.dot(e, x) == 0 for e in self.equations)

    def contains(self, x: Sequence) -> bool:
        return self.in_span(x) and all(el.dot(m, x) >= 0 for m in self.facets)

    def contains_relint(self, x: Sequence) -> bool:
        return self.in_span(x) and all(el.dot(m, x) > 0 for m in self.facets)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays)

    @cached_property
    def facets_as_rays(self) -> tuple:
        """Each facet as the frozenset of indices into ``rays`` lying on it."""
        return tuple(self._zero_set(m, self.rays) for m in self.facets)

    def closure(self, idx: Iterable[int]) -> frozenset:
        """Smallest face containing the given rays, as ray indices."""
        idx = frozenset(idx)
        on = [f for f in self.facets_as_rays if idx <= f]
        out = frozenset(range(len(self.rays)))
        for f in on:
            out &= f
        return out

    def is_face(self, idx: Iterable[int]) -> bool:
        idx = frozenset(idx)
        return self.closure(idx) == idx

    def face_containing(self, x: Sequence) -> frozenset | None:
        """Ray indices of the face whose relative interior contains ``x``."""
        if not self.contains(x):
            return None
        tight = [f for m, f in zip(self.facets, self.facets_as_rays) if el.dot(m, x) == 0]
        out = frozenset(range(len(self.rays)))
        for f in tight:
            out &= f
        return out

    @cached_property
    def faces(self) -> frozenset:
        """All faces as frozensets of ray indices, including the empty face."""
        top = frozenset(range(len(self.rays)))
        if self.is_simplicial:
            return frozenset(frozenset(c) for k in range(len(top) + 1)
                             for c in combinations(sorted(top), k))
        seen = {top}
        stack = [top]
        while stack:
            f = stack.pop()
            if not f:
                continue
            sub = self.subcone(f)
            for fac in sub.facets_as_rays:
                g = frozenset(sorted(f)[i] for i in fac)
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return frozenset(seen)

    def subcone(self, idx: Iterable[int]) -> "Cone":
        return Cone(self.rank, [self.rays[i] for i in sorted(idx)])

    def multiplicity(self) -> int:
        """Index of the sublattice spanned by the rays inside the saturated span."""
        if not self.is_simplicial:
            raise InvalidCone("multiplicity is defined for simplicial cones")
        if self.dim == 0:
            return 1
        return abs(el.det([self.local(r) for r in self.rays]))

    def is_smooth(self) -> bool:
        return self.is_simplicial and self.multiplicity() == 1

    def relint_point(self) -> tuple:
        return tuple(sum(col) for col in zip(*self.rays)) if self.rays else (0,) * self.rank

    def check(self) -> bool:
        """Cross-check the two descriptions against each other."""
        for r in self._gens:
            if not self.contains(r):
                return False
        k = self.dim
        for f in self.facets_as_rays:
            if el.rank([self.local(self.rays[i]) for i in f] or [[0] * k]) != k - 1:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Cone) and self.rank == other.rank
                and set(self.rays) == set(other.rays))

    def __hash__(self):
        return hash((self.rank, frozenset(self.rays)))

    def __repr__(self):
        return f"Cone(rank={self.rank}, rays={list(self.rays)})"


@lru_cache(maxsize=65536)
def cached_cone(rank: int, rays: tuple) -> Cone:
    """Shared Cone instance for a tuple of primitive rays (cones are immutable)."""
    return Cone(rank, rays)


def dual_basis(rays: Sequence[Sequence[int]]) -> list[tuple]:
    """Rows m_i with <m_i, rays[j]> = delta_ij, for a square unimodular ray set."""
    inv = el.inverse(rays)
    return [tuple(inv[i][c] for i in range(len(rays))) for c in range(len(rays))]


def intersection(a: Cone, b: Cone) -> Cone:
    """Intersection of two cones, via the combined facet description."""
    if a.rank != b.rank:
        raise InvalidCone("rank mismatch")
    eqs = list(a.equations) + list(b.equations)
    basis = el.kernel(eqs, a.rank) if eqs else el.identity(a.rank)
    k = len(basis)
    if k == 0:
        return Cone(a.rank, [])
    # x = sum y_i basis_i ; inequalities m.x >= 0 become (m.B) y >= 0
    ineqs = []
    for m in list(a.facets) + list(b.facets):
        ineqs.append(tuple(el.dot(m, bv) for bv in basis))
    if el.rank(ineqs) < k:
        # lineality can only occur when both cones are lower dimensional in a
        # shared direction; impossible for pointed input
        raise InvalidCone("intersection is not pointed")
    rays = extreme_rays(ineqs, k)
    return Cone(a.rank, [tuple(sum(y * bv[j] for y, bv in zip(r, basis))
                               for j in range(a.rank)) for r in rays])


def fraction_vector(xs) -> tuple:
    return tuple(Fraction(x) for x in xs)
