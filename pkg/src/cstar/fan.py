"""Fans, torus-invariant divisors and the intersection numbers the flows need.

A fan stores its rays and its maximal cones; every other cone is a face of
a maximal one and is addressed by the frozenset of its ray indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import exactlat as el
from .cone import Cone, cached_cone, extreme_rays, intersection
from .errors import (ConeNotInFan, InvalidCone, InvalidFan, NotCartier,
                     NotCompactCurve, TorusFactor)

ConeKey = frozenset


class Fan:
    """A fan in ``Q^rank`` given by primitive rays and maximal cones.

    ``labels`` optionally names the rays; stars and lattice isomorphisms use
    the names to match rays between fans.
    """

    def __init__(self, rank: int, rays: Sequence[Sequence[int]],
                 max_cones: Iterable[Iterable[int]],
                 labels: Sequence[str] | None = None, validate: bool = True):
        self.rank = int(rank)
        rs = []
        for r in rays:
            r = el.vec(r)
            if len(r) != self.rank:
                raise InvalidFan(f"ray {r} does not have length {rank}")
            if not any(r):
                raise InvalidFan("zero ray")
            rs.append(el.primitive(r))
        if len(set(rs)) != len(rs):
            raise InvalidFan("repeated ray")
        self.rays = tuple(rs)
        cones = []
        for c in max_cones:
            key = frozenset(int(i) for i in c)
            if any(i < 0 or i >= len(rs) for i in key):
                raise InvalidFan(f"cone {sorted(key)} uses an unknown ray")
            if key not in cones:
                cones.append(key)
        # drop cones that are faces of other listed cones
        self.max_cones = tuple(c for c in cones if not any(c < d for d in cones))
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != len(rs):
                raise InvalidFan("one label per ray expected")
        self.labels = labels
        self._cone_cache: dict = {}
        if validate:
            self.validate()

    # -- basic access ---------------------------------------------------------

    def cone(self, key: Iterable[int]) -> Cone:
        key = frozenset(key)
        c = self._cone_cache.get(key)
        if c is None:
            c = cached_cone(self.rank, tuple(self.rays[i] for i in sorted(key)))
            self._cone_cache[key] = c
        return c

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"u{i}"

    def index_of_label(self, name: str) -> int:
        if not self.labels or name not in self.labels:
            raise KeyError(name)
        return self.labels.index(name)

    def keys(self, names: Iterable[str]) -> frozenset:
        return frozenset(self.index_of_label(n) for n in names)

    def dim_of(self, key: Iterable[int]) -> int:
        key = list(key)
        return el.rank([self.rays[i] for i in key]) if key else 0

    def local_face(self, mc: frozenset, key: frozenset) -> frozenset:
        order = sorted(mc)
        return frozenset(order.index(i) for i in key)

    def global_face(self, mc: frozenset, local: Iterable[int]) -> frozenset:
        order = sorted(mc)
        return frozenset(order[i] for i in local)

    @cached_property
    def all_cones(self) -> frozenset:
        out = set()
        for mc in self.max_cones:
            for f in self.cone(mc).faces:
                out.add(self.global_face(mc, f))
        return frozenset(out)

    def key_of(self, c: "Cone | Iterable[int]") -> frozenset:
        """Ray-index key of a cone given either as a Cone or as indices."""
        if isinstance(c, Cone):
            idx = []
            for r in c.rays:
                try:
                    idx.append(self.rays.index(r))
                except ValueError:
                    raise ConeNotInFan(f"ray {r} is not a ray of the fan") from None
            key = frozenset(idx)
        else:
            key = frozenset(c)
        if key not in self.all_cones:
            raise ConeNotInFan(f"cone {sorted(key)} is not a cone of the fan")
        return key

    def max_cones_containing(self, key: Iterable[int]) -> list[frozenset]:
        key = frozenset(key)
        return [mc for mc in self.max_cones if key <= mc]

    @property
    def is_simplicial(self) -> bool:
        return all(self.cone(mc).is_simplicial for mc in self.max_cones)

    @property
    def is_smooth(self) -> bool:
        return all(self.cone(mc).is_smooth() for mc in self.max_cones)

    @cached_property
    def walls(self) -> dict:
        """Codimension-one cones mapped to the full-dimensional cones containing them."""
        out: dict = {}
        for mc in self.max_cones:
            c = self.cone(mc)
            if c.dim != self.rank:
                continue
            for f in c.facets_as_rays:
                out.setdefault(self.global_face(mc, f), []).append(mc)
        return out

    def support_contains(self, x: Sequence[int]) -> bool:
        return any(self.cone(mc).contains(x) for mc in self.max_cones)

    def cone_containing(self, x: Sequence[int]) -> frozenset | None:
        """Key of the cone whose relative interior contains ``x``."""
        for mc in self.max_cones:
            f = self.cone(mc).face_containing(x)
            if f is not None:
                return self.global_face(mc, f)
        return None

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        for mc in self.max_cones:
            try:
                c = self.cone(mc)
            except InvalidCone as exc:
                raise InvalidFan(f"cone {sorted(mc)}: {exc}") from None
            if len(c.rays) != len(mc):
                raise InvalidFan(f"cone {sorted(mc)} lists a non-extreme ray")
        for a, b in combinations(self.max_cones, 2):
            if not self.meet_in_common_face(a, b):
                raise InvalidFan(f"cones {sorted(a)} and {sorted(b)} overlap badly")

    def meet_in_common_face(self, a: frozenset, b: frozenset) -> bool:
        ca, cb = self.cone(a), self.cone(b)
        common = a & b
        if ca.is_simplicial and cb.is_simplicial:
            return _simplicial_pair_ok(self.rays, a, b)
        if not ca.is_face(self.local_face(a, common)):
            return False
        if not cb.is_face(self.local_face(b, common)):
            return False
        meet = intersection(ca, cb)
        cc = self.cone(common) if common else None
        for r in meet.rays:
            if cc is None or not cc.contains(r):
                return False
        return True

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"rank": self.rank, "rays": [list(r) for r in self.rays],
             "max_cones": [sorted(c) for c in self.max_cones]}
        if self.labels:
            d["labels"] = list(self.labels)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: Mapping, validate: bool = True) -> "Fan":
        return cls(d["rank"], d["rays"], d["max_cones"], d.get("labels"), validate)

    @classmethod
    def from_json(cls, text: str, validate: bool = True) -> "Fan":
        return cls.from_dict(json.loads(text), validate)

    def cone_set(self) -> frozenset:
        """Maximal cones as sets of ray vectors, for comparing fans."""
        return frozenset(frozenset(self.rays[i] for i in mc) for mc in self.max_cones)

    def same_as(self, other: "Fan") -> bool:
        return self.rank == other.rank and self.cone_set() == other.cone_set()

    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"


def _simplicial_pair_ok(rays, a: frozenset, b: frozenset) -> bool:
    """Two simplicial cones meet in the face spanned by their common rays.

    A bad overlap is a relation sum(x_i a_i) = sum(y_j b_j) + (common part)
    with x, y >= 0 not all zero; we look for one with a small double
    description on the relation lattice.
    """
    only_a = sorted(a - b)
    only_b = sorted(b - a)
    if not only_a or not only_b:
        # one cone is a face of the other; listed maximal cones never are,
        # but the check stays correct for completeness
        return True
    common = sorted(a & b)
    cols = [rays[i] for i in only_a] + [rays[i] for i in only_b] + [rays[i] for i in common]
    rows = el.transpose(cols)
    ker = el.kernel(rows, len(cols))
    if not ker:
        return True
    na, nb = len(only_a), len(only_b)
    # t -> (y_A, -y_B) for y = sum t_l ker_l
    t_map = [tuple(k[i] for k in ker) for i in range(na)]
    t_map += [tuple(-k[na + j] for k in ker) for j in range(nb)]
    # restrict to a column basis so the cone {z : T z >= 0} is pointed
    cols_t = el.transpose(t_map)
    basis = []
    for c in cols_t:
        if el.rank(basis + [c]) > len(basis):
            basis.append(c)
    if not basis:
        return True
    t_red = el.transpose(basis)
    return not extreme_rays(t_red, len(basis))


# ---------------------------------------------------------------------------
# stars
# ---------------------------------------------------------------------------

def star_quotient(f: Fan, c: "Cone | Iterable[int]") -> Fan:
    """Fan of the orbit closure V(c) in the lattice N / span(c).

    The returned fan carries ``origin`` (parent ray index for each new ray)
    and ``quotient`` (the QuotientMap used).
    """
    key = f.key_of(c)
    if not key:
        g = Fan(f.rank, f.rays, f.max_cones, f.labels, validate=False)
        g.origin = tuple(range(len(f.rays)))
        g.quotient = el.quotient_by(f.rank, [])
        return g
    if len(key) == 1:
        q = el.quotient_lattice(f.rank, f.rays[next(iter(key))])
    else:
        q = el.quotient_by(f.rank, [f.rays[i] for i in key])
    over = f.max_cones_containing(key)
    origin = sorted(set().union(*over) - key)
    pos = {j: k for k, j in enumerate(origin)}
    new_rays = [el.primitive(q.project(f.rays[j])) for j in origin]
    cones = [[pos[j] for j in mc - key] for mc in over]
    labels = [f.label(j) for j in origin] if f.labels else None
    g = Fan(q.target_rank, new_rays, cones, labels, validate=False)
    g.origin = tuple(origin)
    g.quotient = q
    return g


# ---------------------------------------------------------------------------
# refinement
# ---------------------------------------------------------------------------

@dataclass
class RefinementReport:
    ok: bool
    reason: str = ""
    witness: tuple | None = None


def refinement_report(f1: Fan, f2: Fan) -> RefinementReport:
    """Decide whether ``f1`` refines ``f2`` (same support, cones nested).

    Coverage of each maximal cone tau of ``f2`` is decided by a
    pseudomanifold argument: the cones of ``f1`` of the same dimension that
    sit inside tau cover it iff each of their walls is either shared with
    another such cone or lies on the boundary of tau.
    """
    if f1.rank != f2.rank:
        return RefinementReport(False, "rank mismatch")
    home: dict = {}
    for mc in f1.max_cones:
        c = f1.cone(mc)
        tgt = next((t for t in f2.max_cones if f2.cone(t).contains_cone(c)), None)
        if tgt is None:
            return RefinementReport(False, f"cone {sorted(mc)} of the first fan lies in no "
                                    "cone of the second", c.relint_point())
        home.setdefault(tgt, []).append(mc)
    for tau in f2.max_cones:
        t = f2.cone(tau)
        inside = [mc for mc in home.get(tau, []) if f1.cone(mc).dim == t.dim]
        if not inside:
            return RefinementReport(False, f"cone {sorted(tau)} of the second fan is not "
                                    "covered", t.relint_point())
        wall_count: dict = {}
        for mc in inside:
            for w in f1.cone(mc).facets_as_rays:
                g = f1.global_face(mc, w)
                wall_count.setdefault(g, []).append(mc)
        for w, owners in wall_count.items():
            if len(owners) >= 2:
                continue
            pts = [f1.rays[i] for i in w]
            if any(all(el.dot(m, p) == 0 for p in pts) for m in t.facets):
                continue
            return RefinementReport(False, f"cone {sorted(tau)} of the second fan is not "
                                    "covered", _witness(f1, t, owners[0], w))
    return RefinementReport(True)


def _witness(f1: Fan, tau: Cone, mc: frozenset, wall: frozenset) -> tuple:
    n = f1.rank
    b = tuple(sum(f1.rays[i][k] for i in wall) for k in range(n))
    g = tuple(sum(f1.rays[i][k] for i in mc - wall) for k in range(n))
    t = 1
    p = b
    for _ in range(64):
        p = el.sub(el.scale(t, b), g)
        if tau.contains_relint(p) and not f1.support_contains(p):
            return p
        t *= 2
    return p


def refines(f1: Fan, f2: Fan) -> bool:
    return refinement_report(f1, f2).ok


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TDivisor:
    """Torus-invariant Weil divisor: one integer coefficient per fan ray."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    def __add__(self, other: "TDivisor") -> "TDivisor":
        return TDivisor(el.add(self.coeffs, other.coeffs))

    def __neg__(self):
        return TDivisor(el.neg(self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return TDivisor(el.scale(k, self.coeffs))

    @staticmethod
    def zero(f: Fan) -> "TDivisor":
        return TDivisor((0,) * len(f.rays))

    @staticmethod
    def prime(f: Fan, i: int) -> "TDivisor":
        return TDivisor(el.unit(len(f.rays), i))

    @staticmethod
    def principal(f: Fan, m: Sequence[int]) -> "TDivisor":
        """div(chi^m) = sum <m, u_rho> D_rho."""
        return TDivisor(tuple(el.dot(m, u) for u in f.rays))

    def to_dict(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "TDivisor":
        return cls(d["coeffs"])


def _check_divisor(f: Fan, d: TDivisor):
    if len(d.coeffs) != len(f.rays):
        raise ValueError("divisor must have one coefficient per ray")


@dataclass(frozen=True)
class CartierData:
    """Per maximal cone, the dual vector m with <m, u_rho> = -a_rho on its rays."""

    data: Mapping = field(default_factory=dict)

    def __getitem__(self, key):
        return self.data[frozenset(key)]

    def value(self, key, x: Sequence[int]):
        """The piecewise linear support function evaluated on cone ``key``."""
        return el.dot(self.data[frozenset(key)], x)


def cartier_data(f: Fan, d: TDivisor) -> CartierData:
    _check_divisor(f, d)
    out = {}
    for mc in f.max_cones:
        idx = sorted(mc)
        a = [f.rays[i] for i in idx]
        b = [-d.coeffs[i] for i in idx]
        m = el.solve_integer(a, b)
        if m is None:
            raise NotCartier(f"no integral m on cone {idx}")
        out[mc] = m
    return CartierData(out)


def is_cartier(f: Fan, d: TDivisor) -> bool:
    try:
        cartier_data(f, d)
        return True
    except NotCartier:
        return False


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple

    def __str__(self):
        parts = ["Z^%d" % self.free_rank] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def class_group(f: Fan) -> ClassGroup:
    """Cokernel of M -> Z^rays, m -> (<m, u_rho>)."""
    if not f.rays or el.rank(f.rays) < f.rank:
        raise TorusFactor("rays do not span the lattice")
    inv = el.invariant_factors(f.rays)
    return ClassGroup(len(f.rays) - f.rank, tuple(x for x in inv if x > 1))


def curve_degree(f: Fan, wall: "Cone | Iterable[int]", d: TDivisor,
                 cdata: CartierData | None = None) -> int:
    """Degree of ``d`` on the invariant curve V(wall)."""
    key = f.key_of(wall)
    owners = f.walls.get(key, [])
    if f.dim_of(key) != f.rank - 1 or len(owners) != 2:
        raise NotCompactCurve(f"cone {sorted(key)} does not give a complete invariant curve")
    cd = cdata if cdata is not None else cartier_data(f, d)
    s1, s2 = owners
    r1 = min(s1 - key)
    diff = el.sub(cd[s2], cd[s1])
    u1 = f.rays[r1]
    q = el.quotient_by(f.rank, [f.rays[i] for i in key])
    index = abs(el.content(q.project(u1)))
    val = el.dot(diff, u1)
    if val % index:
        raise NotCartier("non-integral degree")
    return val // index


def complete_curves(f: Fan) -> list[frozenset]:
    return sorted((w for w, o in f.walls.items() if len(o) == 2), key=sorted)


# ---------------------------------------------------------------------------
# lattice isomorphisms
# ---------------------------------------------------------------------------

def isomorphism_by_labels(f1: Fan, f2: Fan):
    """Unimodular A with A u = u' for equally labelled rays, mapping cones to cones.

    Returns the matrix (rows) or None.
    """
    if f1.rank != f2.rank or not f1.labels or not f2.labels:
        return None
    if sorted(f1.labels) != sorted(f2.labels):
        return None
    n = f1.rank
    src = [f1.rays[i] for i in range(len(f1.rays))]
    dst = [f2.rays[f2.index_of_label(f1.labels[i])] for i in range(len(src))]
    if el.rank(src) < n:
        return None
    rows = []
    for k in range(n):
        sol = el.solve(src, [d[k] for d in dst])
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        rows.append(tuple(int(x) for x in sol))
    if abs(el.det(rows)) != 1:
        return None
    for s, d in zip(src, dst):
        if el.matvec(rows, s) != d:
            return None
    c1 = {frozenset(f1.labels[i] for i in mc) for mc in f1.max_cones}
    c2 = {frozenset(f2.labels[i] for i in mc) for mc in f2.max_cones}
    if c1 != c2:
        return None
    return tuple(rows)


def fan_of_cone(rank: int, rays: Sequence[Sequence[int]], labels=None) -> Fan:
    """The fan of faces of a single cone."""
    return Fan(rank, rays, [range(len(rays))], labels)
