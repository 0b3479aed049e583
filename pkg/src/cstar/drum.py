"""Cayley sums of lattice polytopes and the index of smooth toric drums."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from . import exactlat as el
from .cone import Cone
from .errors import NotCayley, RankMismatch


class LatticePolytope:
    """Convex hull of finitely many lattice points, stored by its vertices."""

    def __init__(self, rank: int, points: Iterable[Sequence[int]]):
        self.rank = int(rank)
        pts = sorted({el.vec(p) for p in points})
        if not pts:
            raise ValueError("empty polytope")
        for p in pts:
            if len(p) != self.rank:
                raise RankMismatch(f"point {p} does not have length {rank}")
        # vertices are the extreme rays of the cone over P x {1}
        cone = Cone(self.rank + 1, [p + (1,) for p in pts])
        self._cone = cone
        self.vertices = tuple(sorted(r[:-1] for r in cone.rays))

    @property
    def dim(self) -> int:
        return self._cone.dim - 1

    @cached_property
    def inequalities(self) -> tuple:
        """Pairs (a, b) with a.x + b >= 0 describing the facets."""
        return tuple((m[:-1], m[-1]) for m in self._cone.facets)

    @cached_property
    def equations(self) -> tuple:
        return tuple((m[:-1], m[-1]) for m in self._cone.equations)

    def contains(self, x: Sequence[int]) -> bool:
        x = tuple(x) + (1,)
        return self._cone.contains(x)

    def lattice_points(self) -> list[tuple]:
        lo = [min(v[k] for v in self.vertices) for k in range(self.rank)]
        hi = [max(v[k] for v in self.vertices) for k in range(self.rank)]
        return [p for p in product(*(range(a, b + 1) for a, b in zip(lo, hi)))
                if self.contains(p)]

    def __eq__(self, other):
        return (isinstance(other, LatticePolytope) and self.rank == other.rank
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.rank, self.vertices))

    def __repr__(self):
        return f"LatticePolytope(rank={self.rank}, vertices={list(self.vertices)})"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "LatticePolytope":
        return cls(d["rank"], d["vertices"])

    @classmethod
    def from_json(cls, text: str) -> "LatticePolytope":
        return cls.from_dict(json.loads(text))


def standard_simplex(rank: int, dim: int | None = None, offset: int = 0) -> LatticePolytope:
    """conv(0, e_offset, ..., e_{offset+dim-1}) inside Z^rank."""
    dim = rank if dim is None else dim
    pts = [(0,) * rank] + [el.unit(rank, offset + i) for i in range(dim)]
    return LatticePolytope(rank, pts)


def cayley_sum(p_minus: LatticePolytope, p_plus: LatticePolytope) -> LatticePolytope:
    """conv((P_- x {0}) u (P_+ x {1}))."""
    if p_minus.rank != p_plus.rank:
        raise RankMismatch(f"ranks {p_minus.rank} and {p_plus.rank} differ")
    pts = [v + (0,) for v in p_minus.vertices] + [v + (1,) for v in p_plus.vertices]
    return LatticePolytope(p_minus.rank + 1, pts)


def flip_last(p: LatticePolytope) -> LatticePolytope:
    """Image under (x, t) -> (x, 1 - t)."""
    return LatticePolytope(p.rank, [v[:-1] + (1 - v[-1],) for v in p.vertices])


def product_pair(m: int, n: int) -> tuple[LatticePolytope, LatticePolytope]:
    """Polytopes of O(1,0) and O(0,1) on P^(m-1) x P^(n-m), in Z^(n-1)."""
    rank = n - 1
    return (standard_simplex(rank, m - 1, 0), standard_simplex(rank, n - m, m - 1))


def is_unimodular_simplex(p: LatticePolytope) -> bool:
    """True iff p is unimodularly equivalent to the standard simplex of its rank."""
    if len(p.vertices) != p.rank + 1:
        return False
    v0 = p.vertices[0]
    edges = [el.sub(v, v0) for v in p.vertices[1:]]
    return abs(el.det(edges)) == 1


def unimodular_map_to_standard(p: LatticePolytope):
    """Affine unimodular (A, b) with A x + b sending p onto the standard simplex, or None."""
    if not is_unimodular_simplex(p):
        return None
    v0 = p.vertices[0]
    edges = [el.sub(v, v0) for v in p.vertices[1:]]
    inv = el.inverse(el.transpose(edges))
    a = tuple(tuple(int(x) for x in row) for row in inv)
    b = el.neg(el.matvec(a, v0))
    return a, b


@dataclass(frozen=True)
class DrumSpec:
    k_minus: int
    k_plus: int

    def __post_init__(self):
        if self.k_minus < 0 or self.k_plus < 0:
            raise ValueError("fibre dimensions must be ≥ 0")


def drum_index(d: DrumSpec) -> int:
    """Fano index of a smooth drum with P^(k-)- and P^(k+)-bundle structures."""
    return d.k_minus + d.k_plus + 2


@dataclass
class BandwidthReport:
    layer_values: tuple
    bandwidth: int
    layer_vertex_counts: tuple
    layer_point_counts: tuple

    def to_dict(self):
        return {"layer_values": list(self.layer_values), "bandwidth": self.bandwidth,
                "layer_vertex_counts": list(self.layer_vertex_counts),
                "layer_point_counts": list(self.layer_point_counts)}


def drum_bandwidth_check(p: LatticePolytope) -> BandwidthReport:
    """Bandwidth of the action given by the last coordinate.

    The lattice points of p are sorted into layers by their last coordinate;
    more than two layers means p is not a Cayley sum of two polytopes.
    """
    pts = p.lattice_points()
    values = sorted({x[-1] for x in pts})
    if len(values) > 2:
        raise NotCayley(f"{len(values)} layer values: {values}")
    vcounts = tuple(sum(1 for v in p.vertices if v[-1] == h) for h in values)
    pcounts = tuple(sum(1 for x in pts if x[-1] == h) for h in values)
    return BandwidthReport(tuple(values), values[-1] - values[0], vcounts, pcounts)
