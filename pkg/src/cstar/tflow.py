"""Bialynicki-Birula analysis of the one-parameter subgroup lambda^v on a toric variety.

Conventions
-----------
* ``lim_{t->0} lambda^v(t) x`` for x in the dense torus is the distinguished
  point of the cone whose relative interior contains ``v``; that fixed
  component is the source. The sink is obtained from ``-v``.
* The tangent weight dual to the ray u_i of a smooth maximal cone is
  ``<m_i, v>`` where (m_i) is the dual basis.
* A linearized divisor d with Cartier data (m_sigma) gives
  ``mu(Y) = -<m_sigma, v>`` for any maximal cone sigma through Y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exactlat as el
from .cone import dual_basis
from .errors import ConeNotInFan, NoLimit, NonPrimitiveVector, NotCartier, NotSmoothCone, TorusFactor
from .fan import (CartierData, Fan, TDivisor, cartier_data, class_group,
                  curve_degree, star_quotient)


def check_subgroup(v: Sequence[int], rank: int) -> tuple:
    v = el.vec(v)
    if len(v) != rank:
        raise ValueError(f"v has length {len(v)}, lattice rank is {rank}")
    if el.content(v) != 1:
        raise NonPrimitiveVector(f"one-parameter subgroup {v} must be primitive")
    return v


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

def limit_cone(f: Fan, sigma, v: Sequence[int]) -> frozenset:
    """Cone tau containing sigma with the image of v in the relative interior of tau/sigma.

    Raises NoLimit when the image of v leaves the support of the star.
    """
    key = f.key_of(sigma)
    v = el.vec(v)
    if not key:
        c = f.cone_containing(v)
        if c is None:
            raise NoLimit(f"{v} is not in the support of the fan")
        return c
    star = star_quotient(f, key)
    vbar = star.quotient.project(v)
    if not any(vbar):
        return key
    c = star.cone_containing(vbar)
    if c is None:
        raise NoLimit(f"image of {v} is not in the support of the star")
    return key | frozenset(star.origin[i] for i in c)


def try_limit_cone(f: Fan, sigma, v) -> frozenset | None:
    try:
        return limit_cone(f, sigma, v)
    except NoLimit:
        return None


# ---------------------------------------------------------------------------
# fixed components
# ---------------------------------------------------------------------------

@dataclass
class FixedComponent:
    min_cone: frozenset
    component_fan: Fan
    dim: int
    nu_plus: int
    nu_minus: int
    normal_weights: tuple
    tangent_weights: tuple | None
    weight_cone: frozenset | None
    mu_value: int | None = None

    def to_dict(self, f: Fan | None = None) -> dict:
        d = {
            "min_cone": sorted(self.min_cone),
            "dim": self.dim,
            "nu_plus": self.nu_plus,
            "nu_minus": self.nu_minus,
            "normal_weights": list(self.normal_weights),
            "tangent_weights": list(self.tangent_weights) if self.tangent_weights is not None else None,
            "mu": self.mu_value,
        }
        if f is not None and f.labels:
            d["min_cone_labels"] = [f.label(i) for i in sorted(self.min_cone)]
        return d


def _coefficients(f: Fan, key, v) -> dict | None:
    """Coefficients of v in the rays of a simplicial cone, or None if v is not in its span."""
    idx = sorted(key)
    if not idx:
        return {} if not any(v) else None
    sol = el.solve(el.transpose([f.rays[i] for i in idx]), v)
    if sol is None:
        return None
    return dict(zip(idx, sol))


def _support_in(f: Fan, mc: frozenset, v) -> list[frozenset]:
    """Minimal faces of the maximal cone mc whose span contains v."""
    c = f.cone(mc)
    if c.is_simplicial:
        co = _coefficients(f, mc, v)
        if co is None:
            return []
        return [frozenset(i for i, x in co.items() if x != 0)]
    hits = []
    for face in c.faces:
        g = f.global_face(mc, face)
        if f.cone(g).in_span(v) if g else not any(v):
            hits.append(g)
    return [h for h in hits if not any(o < h for o in hits)]


def fixed_components(f: Fan, v: Sequence[int]) -> list[FixedComponent]:
    v = check_subgroup(v, f.rank)
    minimal: list[frozenset] = []
    for mc in f.max_cones:
        for s in _support_in(f, mc, v):
            if s not in minimal:
                minimal.append(s)
    minimal = [s for s in minimal if not any(o < s for o in minimal)]
    # minimal fixed cones sharing a cone belong to one component
    parent = list(range(len(minimal)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for mc in f.max_cones:
        inside = [k for k, s in enumerate(minimal) if s <= mc]
        for k in inside[1:]:
            parent[find(k)] = find(inside[0])
    groups: dict = {}
    for k in range(len(minimal)):
        groups.setdefault(find(k), []).append(minimal[k])
    comps = []
    for _, members in sorted(groups.items(), key=lambda kv: sorted(min(kv[1], key=sorted))):
        sigma = min(members, key=lambda s: (len(s), sorted(s)))
        comps.append(_component(f, sigma, v))
    comps.sort(key=lambda c: (sorted(c.min_cone)))
    return comps


def _component(f: Fan, sigma: frozenset, v) -> FixedComponent:
    star = star_quotient(f, sigma)
    co = _coefficients(f, sigma, v) or {}
    normal = tuple(sorted((co[i] for i in sorted(sigma)), reverse=True))
    normal = tuple(int(x) if x.denominator == 1 else x for x in normal)
    dimx = f.rank - f.dim_of(sigma)
    weights = None
    wc = None
    for mc in f.max_cones_containing(sigma):
        c = f.cone(mc)
        if c.dim == f.rank and c.is_smooth():
            weights = tangent_weights(f, mc, v)
            wc = mc
            break
    nu_p = sum(1 for x in normal if x > 0)
    nu_m = sum(1 for x in normal if x < 0)
    return FixedComponent(sigma, star, dimx, nu_p, nu_m, normal, weights, wc)


def tangent_weights(f: Fan, max_cone, v: Sequence[int]) -> tuple:
    """Sorted multiset of <m_i, v> over the dual basis of a smooth full cone."""
    key = frozenset(max_cone) if not hasattr(max_cone, "rays") else f.key_of(max_cone)
    c = f.cone(key)
    if c.dim != f.rank or not c.is_smooth():
        raise NotSmoothCone(f"cone {sorted(key)} is not smooth of full dimension")
    duals = dual_basis([f.rays[i] for i in sorted(key)])
    w = [el.dot(m, v) for m in duals]
    return tuple(sorted((int(x) for x in w), reverse=True))


def component_of_cone(comps: list[FixedComponent], key: frozenset) -> int | None:
    """Index of the component whose minimal cone is a face of ``key``."""
    for k, c in enumerate(comps):
        if c.min_cone <= key:
            return k
    return None


# ---------------------------------------------------------------------------
# linearization
# ---------------------------------------------------------------------------

def mu_values(f: Fan, v: Sequence[int], d: TDivisor,
              comps: list[FixedComponent] | None = None,
              cdata: CartierData | None = None) -> list[int]:
    v = check_subgroup(v, f.rank)
    comps = comps if comps is not None else fixed_components(f, v)
    cd = cdata if cdata is not None else cartier_data(f, d)
    out = []
    for c in comps:
        vals = {-el.dot(cd[mc], v) for mc in f.max_cones_containing(c.min_cone)}
        if len(vals) != 1:
            raise NotCartier(f"mu is not well defined on component {sorted(c.min_cone)}")
        (mu,) = vals
        c.mu_value = mu
        out.append(mu)
    return out


# ---------------------------------------------------------------------------
# invariant curves
# ---------------------------------------------------------------------------

@dataclass
class CurveRow:
    wall: frozenset
    source: int
    sink: int
    delta: int
    degree: int
    mu_source: int
    mu_sink: int

    @property
    def holds(self) -> bool:
        return self.mu_source - self.mu_sink == self.delta * self.degree

    def to_dict(self, f: Fan | None = None) -> dict:
        d = {"wall": sorted(self.wall), "source": self.source, "sink": self.sink,
             "delta": self.delta, "degree": self.degree,
             "mu_source": self.mu_source, "mu_sink": self.mu_sink, "holds": self.holds}
        if f is not None and f.labels:
            d["wall_labels"] = [f.label(i) for i in sorted(self.wall)]
        return d


@dataclass
class CurveTable:
    rows: list
    fixed_walls: list
    open_walls: list

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.rows)


def invariant_curve_table(f: Fan, v: Sequence[int], d: TDivisor,
                          comps: list[FixedComponent] | None = None,
                          cdata: CartierData | None = None) -> CurveTable:
    v = check_subgroup(v, f.rank)
    comps = comps if comps is not None else fixed_components(f, v)
    cd = cdata if cdata is not None else cartier_data(f, d)
    if any(c.mu_value is None for c in comps):
        mu_values(f, v, d, comps, cd)
    rows, fixed, open_ = [], [], []
    for wall in sorted(f.walls, key=sorted):
        owners = f.walls[wall]
        if len(owners) != 2:
            open_.append(wall)
            continue
        s1, s2 = owners
        co = _coefficients(f, s1, v)
        r1 = min(s1 - wall)
        c1 = co[r1] if co is not None else Fraction(0)
        if c1 == 0:
            fixed.append(wall)
            continue
        deg = curve_degree(f, wall, d, cd)
        a = component_of_cone(comps, s1)
        b = component_of_cone(comps, s2)
        if c1 > 0:
            src, snk, delta = a, b, c1
        else:
            src, snk, delta = b, a, -c1
        if delta.denominator != 1:
            raise NotSmoothCone("non-integral weight along an invariant curve")
        rows.append(CurveRow(wall, src, snk, int(delta), deg,
                             comps[src].mu_value, comps[snk].mu_value))
    return CurveTable(rows, fixed, open_)


def curve_class(f: Fan, wall, prime_data: list[CartierData]) -> tuple:
    """Intersection numbers (D_rho . V(wall)) for every ray rho."""
    return tuple(curve_degree(f, wall, TDivisor.prime(f, i), prime_data[i])
                 for i in range(len(f.rays)))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class BBReport:
    components: list
    source: int | None
    sink: int | None
    bandwidth: int | None
    equalized: bool
    curve_table: CurveTable | None
    b_type: bool
    bordism_rank: int | None
    class_group_rank: int | None
    rank_proxy: int | None
    labels: tuple | None = field(default=None, repr=False)

    def to_dict(self, f: Fan | None = None) -> dict:
        return {
            "components": [c.to_dict(f) for c in self.components],
            "source": self.source,
            "sink": self.sink,
            "bandwidth": self.bandwidth,
            "equalized": self.equalized,
            "b_type": self.b_type,
            "bordism_rank": self.bordism_rank,
            "class_group_rank": self.class_group_rank,
            "class_group_proxy_rank": self.rank_proxy,
            "curves": [r.to_dict(f) for r in self.curve_table.rows] if self.curve_table else [],
            "fixed_curves": [sorted(w) for w in self.curve_table.fixed_walls] if self.curve_table else [],
        }


def bordism_rank(f: Fan, v, comps: list[FixedComponent]) -> int:
    """dim of the span of the H-orbit curve classes, minus one.

    The curves are the complete invariant curves not fixed by lambda^v; each
    is recorded by its intersection numbers with all invariant prime
    divisors.
    """
    prime_data = [cartier_data(f, TDivisor.prime(f, i)) for i in range(len(f.rays))]
    vectors = []
    for wall, owners in sorted(f.walls.items(), key=lambda kv: sorted(kv[0])):
        if len(owners) != 2 or f.cone(wall).in_span(v):
            continue
        vectors.append(curve_class(f, wall, prime_data))
    return (el.rank(vectors) if vectors else 0) - 1


def bb_report(f: Fan, v: Sequence[int], d: TDivisor | None = None) -> BBReport:
    v = check_subgroup(v, f.rank)
    comps = fixed_components(f, v)
    src_cone = try_limit_cone(f, frozenset(), v)
    snk_cone = try_limit_cone(f, frozenset(), el.neg(v))
    source = component_of_cone(comps, src_cone) if src_cone is not None else None
    sink = component_of_cone(comps, snk_cone) if snk_cone is not None else None
    equalized = all(abs(x) == 1 for c in comps for x in c.normal_weights)
    bandwidth = None
    table = None
    if d is not None:
        cd = cartier_data(f, d)
        mus = mu_values(f, v, d, comps, cd)
        bandwidth = max(mus) - min(mus) if mus else 0
        table = invariant_curve_table(f, v, d, comps, cd)
    b_type = (source is not None and sink is not None
              and len(comps[source].min_cone) == 1 and len(comps[sink].min_cone) == 1)
    try:
        cg = class_group(f).free_rank
    except TorusFactor:
        cg = None
    rank = None
    proxy = None
    if b_type:
        rank = bordism_rank(f, v, comps)
        proxy = cg - 1 if cg is not None else None
    return BBReport(comps, source, sink, bandwidth, equalized, table, b_type,
                    rank, cg, proxy, f.labels)


__all__ = [
    "BBReport", "ConeNotInFan", "CurveRow", "CurveTable", "FixedComponent",
    "NoLimit", "bb_report", "bordism_rank", "check_subgroup", "component_of_cone",
    "fixed_components", "invariant_curve_table", "limit_cone", "mu_values",
    "tangent_weights", "try_limit_cone",
]
