"""One-parameter subgroups acting on rational homogeneous spaces G/P.

A space is a Dynkin type together with a set of marked nodes. Its torus
fixed points are the Weyl orbit of the marked weight; a coweight cw cuts
out a C*-action whose moment value at the point chi is -<chi, cw>.
With this sign the highest weight point is the sink for dominant cw, and
its tangent weights are all negative.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CertificationFailure, InvalidNode, NodeInMarking
from .rootsys import (DynkinType, RootSystem, apply_inverse_word, build_root_system,
                      grading_by_node, short_grading_nodes, weyl_orbit_words)

# marking of the adjoint variety for each letter
ADJOINT_MARKING = {
    "A": lambda n: (1, n) if n > 1 else (1,),
    "B": lambda n: (2,) if n > 1 else (1,),
    "C": lambda n: (1,),
    "D": lambda n: (2,),
    "E": lambda n: {6: (2,), 7: (1,), 8: (8,)}[n],
    "F": lambda n: (1,),
    "G": lambda n: (2,),
}


def _int(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _num(x):
    """JSON form of an exact number: int when integral, else 'p/q'."""
    x = _int(x)
    return x if isinstance(x, int) else str(x)


class HomogeneousSpace:
    """G/P for the parabolic P attached to the marked nodes.

    `weight` is the highest weight whose orbit gives the fixed points. It
    defaults to the sum of the marked fundamental weights; adjoint spaces
    use the highest root instead, which has the same stabilizer.
    """

    def __init__(self, t: DynkinType | str, marked: Iterable[int], weight: Sequence | None = None):
        if isinstance(t, str):
            t = DynkinType.parse(t)
        self.type = t
        self.marked = tuple(sorted(set(int(i) for i in marked)))
        if not self.marked:
            raise InvalidNode("a homogeneous space needs at least one marked node")
        for i in self.marked:
            if i not in t.nodes:
                raise InvalidNode(f"{t} has no node {i}")
        rs = self.rs
        if weight is None:
            w = [0] * rs.ambient_dim
            for i in self.marked:
                w = [a + b for a, b in zip(w, rs.fundamental_weights[i - 1])]
            weight = w
        self.weight = tuple(_int(x) for x in weight)
        stab = tuple(i for i in t.nodes if rs.form(self.weight, rs.simple_coroots[i - 1]) == 0)
        if set(stab) != set(t.nodes) - set(self.marked):
            raise InvalidNode(f"weight {self.weight} is not regular exactly off {self.marked}")

    @classmethod
    def parse(cls, label: str) -> "HomogeneousSpace":
        m = re.fullmatch(r"\s*([A-G]_?\d+)\s*\(([\d,\s]+)\)\s*", label)
        if not m:
            raise InvalidNode(f"cannot read a marked diagram from {label!r}")
        return cls(m.group(1), [int(x) for x in m.group(2).split(",")])

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.type)

    @property
    def label(self) -> str:
        return f"{self.type}({','.join(map(str, self.marked))})"

    def __repr__(self):
        return f"HomogeneousSpace({self.label})"

    @cached_property
    def levi_nodes(self) -> tuple:
        return tuple(i for i in self.type.nodes if i not in self.marked)

    @cached_property
    def tangent_roots(self) -> tuple:
        """Positive roots outside the Levi; their negatives span T at the base point."""
        levi = set(self.rs.positive_roots_avoiding(self.marked))
        return tuple(r for r in self.rs.positive_roots if r not in levi)

    @property
    def dim(self) -> int:
        return len(self.tangent_roots)

    @cached_property
    def orbit_words(self) -> dict:
        return weyl_orbit_words(self.rs, self.weight)

    @property
    def euler(self) -> int:
        return len(self.orbit_words)

    @cached_property
    def fano_index(self):
        """c with sum of tangent roots = c * weight, when that sum is proportional."""
        rs = self.rs
        total = [0] * rs.ambient_dim
        for r in self.tangent_roots:
            total = [a + b for a, b in zip(total, r)]
        ratios = {_int(Fraction(rs.form(total, c)) / rs.form(self.weight, c))
                  for c in (rs.simple_coroots[i - 1] for i in self.marked)}
        return ratios.pop() if len(ratios) == 1 else None


def adjoint_space(t: DynkinType | str) -> HomogeneousSpace:
    if isinstance(t, str):
        t = DynkinType.parse(t)
    rs = build_root_system(t)
    return HomogeneousSpace(t, ADJOINT_MARKING[t.letter](t.rank), rs.highest_root)


def fixed_point_weights(h: HomogeneousSpace) -> tuple:
    return tuple(h.orbit_words)


def tangent_weight_multiset(h: HomogeneousSpace, word: Sequence[int], cw: Sequence) -> tuple:
    """Weights <w(-beta), cw> over the tangent roots at the point w.weight, sorted."""
    rs = h.rs
    back = apply_inverse_word(rs, word, cw)
    return tuple(sorted(_int(-rs.pair(r, back)) for r in h.tangent_roots))


@dataclass
class BucketStats:
    size: int
    zero_counts: dict
    nu_plus: dict
    nu_minus: dict
    weights: tuple

    def to_dict(self) -> dict:
        return {"size": self.size,
                "zero_counts": {str(k): v for k, v in sorted(self.zero_counts.items())},
                "nu_plus": {str(k): v for k, v in sorted(self.nu_plus.items())},
                "nu_minus": {str(k): v for k, v in sorted(self.nu_minus.items())},
                "weights": [_num(w) for w in self.weights]}


@dataclass
class ActionReport:
    space: str
    coweight: tuple
    convention: str
    points: list
    shift: object
    buckets: dict
    stats: dict
    bandwidth: object
    equalized_at_extremes: bool
    equalized: bool

    @property
    def bucket_sizes(self) -> tuple:
        return tuple(self.buckets.values())

    @property
    def sink(self):
        return next(iter(self.buckets))

    @property
    def source(self):
        return next(reversed(self.buckets))

    def points_in(self, key) -> list:
        return [p for p in self.points if p["mu"] == key]

    def to_dict(self) -> dict:
        return {"space": self.space,
                "coweight": [_num(x) for x in self.coweight],
                "convention": self.convention,
                "shift": _num(self.shift),
                "buckets": {str(k): v for k, v in self.buckets.items()},
                "stats": {str(k): s.to_dict() for k, s in self.stats.items()},
                "bandwidth": _num(self.bandwidth),
                "equalized_at_extremes": self.equalized_at_extremes,
                "equalized": self.equalized}


def _collect(label, cw, convention, points, shift) -> ActionReport:
    keys = sorted({p["mu"] for p in points})
    buckets = {k: sum(1 for p in points if p["mu"] == k) for k in keys}
    stats = {}
    for k in keys:
        ps = [p for p in points if p["mu"] == k]
        stats[k] = BucketStats(
            len(ps),
            dict(Counter(sum(1 for w in p["tangent"] if w == 0) for p in ps)),
            dict(Counter(sum(1 for w in p["tangent"] if w > 0) for p in ps)),
            dict(Counter(sum(1 for w in p["tangent"] if w < 0) for p in ps)),
            tuple(sorted({w for p in ps for w in p["tangent"]})))

    def unit(ps):
        return all(w in (-1, 0, 1) for p in ps for w in p["tangent"])

    ext = [p for p in points if p["mu"] in (keys[0], keys[-1])]
    return ActionReport(label, tuple(cw), convention, points, shift, buckets, stats,
                        keys[-1] - keys[0], unit(ext), unit(points))


def action_report(h: HomogeneousSpace, cw: Sequence, convention: str = "custom",
                  shift=0, normalize: bool = True) -> ActionReport:
    """Moment values and tangent weights at every fixed point.

    The raw value at chi is -<chi, cw> + shift. With `normalize` the values
    are moved so the sink sits at 0 and the applied offset is recorded.
    """
    rs = h.rs
    cw = tuple(_int(x) for x in cw)
    points = []
    for chi, word in h.orbit_words.items():
        points.append({"weight": chi, "word": word,
                       "mu": _int(-rs.pair(chi, cw) + shift),
                       "tangent": tangent_weight_multiset(h, word, cw)})
    offset = 0
    if normalize:
        offset = -min(p["mu"] for p in points)
        for p in points:
            p["mu"] = _int(p["mu"] + offset)
    return _collect(h.label, cw, convention, points, _int(Fraction(shift) + offset))


def coweight(h_or_rs, j: int, convention: str = "coweight") -> tuple:
    """omega_j^vee for 'coweight', alpha_j^vee for 'coroot'."""
    rs = h_or_rs.rs if isinstance(h_or_rs, HomogeneousSpace) else h_or_rs
    if j not in rs.type.nodes:
        raise InvalidNode(f"{rs.type} has no node {j}")
    return (rs.fundamental_coweights if convention == "coweight" else rs.simple_coroots)[j - 1]


# ---------------------------------------------------------------------------
# adjoint varieties and short gradings
# ---------------------------------------------------------------------------

@dataclass
class AdjointActionReport:
    report: ActionReport
    type: str
    node: int
    marking: tuple
    depth: int
    short: bool
    components: dict = field(default_factory=dict)

    @property
    def bandwidth(self):
        return self.report.bandwidth

    @property
    def buckets(self):
        return self.report.buckets

    def to_dict(self) -> dict:
        out = self.report.to_dict()
        out.update({"type": self.type, "node": self.node, "marking": list(self.marking),
                    "depth": self.depth, "short": self.short,
                    "components": {k: {str(d): c for d, c in sorted(v.items())}
                                   for k, v in self.components.items()}})
        return out


def adjoint_report(t: DynkinType | str, j: int) -> AdjointActionReport:
    """Grade the long roots by the coefficient of alpha_j; mu(beta) = -g(beta)."""
    if isinstance(t, str):
        t = DynkinType.parse(t)
    h = adjoint_space(t)
    if j not in t.nodes:
        raise InvalidNode(f"{t} has no node {j}")
    if j in h.marked:
        raise NodeInMarking(f"node {j} is marked in the adjoint variety {h.label}")
    g = grading_by_node(h.rs, j, "coefficient")
    rep = action_report(h, g.vector, "coefficient", normalize=False)
    depth = max(abs(k) for k in rep.buckets)
    comps = {}
    if depth == 1:
        comps["Y_minus"] = _fingerprint(rep, -1)
        comps["Y_0"] = _fingerprint(rep, 0)
        comps["Y_plus"] = _fingerprint(rep, 1)
    return AdjointActionReport(rep, str(t), j, h.marked, depth, depth == 1, comps)


def _fingerprint(rep: ActionReport, key) -> dict:
    """Fixed-point count per component dimension inside one bucket."""
    return dict(sorted(Counter(sum(1 for w in p["tangent"] if w == 0)
                               for p in rep.points_in(key)).items()))


def label_fingerprint(label: str | None) -> dict:
    """(dimension -> fixed-point count) of a label such as 'A1(1)xA2(2)+A3(1,3)'.

    '+' is a disjoint union and 'x' a product; None or the empty string is the
    empty variety.
    """
    if not label:
        return {}
    out = Counter()
    for part in label.split("+"):
        d, chi = 0, 1
        for factor in part.split("x"):
            h = HomogeneousSpace.parse(factor)
            d += h.dim
            chi *= h.euler
        out[d] += chi
    return dict(sorted(out.items()))


def adjoint_label(t: DynkinType) -> str:
    return adjoint_space(t).label


def table_entry(t: DynkinType | str) -> dict:
    """One row of the bandwidth-two tables, computed from scratch."""
    if isinstance(t, str):
        t = DynkinType.parse(t)
    h = adjoint_space(t)
    raw = short_grading_nodes(t)
    nodes = tuple(j for j in raw if j not in h.marked)
    rows = []
    for j in nodes:
        rep = adjoint_report(t, j)
        c = rep.components
        rows.append({"node": j,
                     "buckets": [rep.buckets.get(k, 0) for k in (-1, 0, 1)],
                     "Y_pm": {str(d): n for d, n in c["Y_plus"].items()},
                     "Y_0": {str(d): n for d, n in c["Y_0"].items()} or None})
    entry = {"type": str(t), "adjoint": h.label, "short_nodes_raw": list(raw),
             "short_nodes": list(nodes), "rows": rows}
    if t.letter == "A" and t.rank >= 3:
        entry["short_nodes_table_literal"] = sorted({2, t.rank - 1})
    return entry


DEFAULT_TABLE_TYPES = tuple(
    [f"A{n}" for n in range(3, 9)] + [f"B{n}" for n in range(3, 9)]
    + [f"C{n}" for n in range(2, 9)] + [f"D{n}" for n in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"])


def tables(types: Iterable[str] = DEFAULT_TABLE_TYPES) -> dict:
    return {"types": [table_entry(t) for t in types]}


def compare_with_fixture(generated: dict, fixture: dict) -> list:
    """Mismatches between generated tables and label fixtures, as strings."""
    problems = []
    by_type = {e["type"]: e for e in generated["types"]}
    for name, row in fixture["types"].items():
        e = by_type.get(name)
        if e is None:
            problems.append(f"{name}: not generated")
            continue
        if e["adjoint"] != row["adjoint"]:
            problems.append(f"{name}: adjoint {e['adjoint']} vs {row['adjoint']}")
        if e["short_nodes"] != row["short_gradings"]:
            problems.append(f"{name}: nodes {e['short_nodes']} vs {row['short_gradings']}")
            continue
        for r in e["rows"]:
            want = row["rows"][str(r["node"])]
            got_pm = {int(k): v for k, v in r["Y_pm"].items()}
            got_0 = {int(k): v for k, v in (r["Y_0"] or {}).items()}
            if got_pm != label_fingerprint(want["Y_pm"]):
                problems.append(f"{name} node {r['node']}: Y_pm {got_pm} vs {want['Y_pm']}")
            if got_0 != label_fingerprint(want["Y_0"]):
                problems.append(f"{name} node {r['node']}: Y_0 {got_0} vs {want['Y_0']}")
    return problems


# ---------------------------------------------------------------------------
# bandwidth three
# ---------------------------------------------------------------------------

BW3_SPACES = {"C3": 3, "A5": 3, "D6": 6, "E7": 7}
# inner bucket sizes expected for each of the four varieties
BW3_INNER = {"C3": (3, 3), "A5": (9, 9), "D6": (15, 15), "E7": (27, 27)}


@dataclass
class Certificate:
    space: str
    convention: str
    buckets: tuple
    n: int
    inner_dim: int
    index: object
    clauses: tuple

    def to_dict(self) -> dict:
        return {"space": self.space, "convention": self.convention,
                "buckets": list(self.buckets), "n": self.n, "inner_dim": self.inner_dim,
                "index": _num(self.index), "clauses": list(self.clauses), "pass": True}


def certify_action(h: HomogeneousSpace, cw: Sequence, convention: str = "custom",
                   expected_inner: tuple | None = None) -> Certificate:
    """Check the hypotheses and numerology of a bandwidth-three action.

    Raises CertificationFailure naming the first clause that does not hold.
    """
    rep = action_report(h, cw, convention)
    n = h.dim
    passed = []

    def need(ok, clause, detail=""):
        if not ok:
            raise CertificationFailure(clause, detail)
        passed.append(clause)

    need(rep.bandwidth == 3, "bandwidth", f"bandwidth is {rep.bandwidth}")
    keys = list(rep.buckets)
    need(keys == [0, 1, 2, 3], "bucket values", f"values {keys}")
    sink, source = rep.points_in(0), rep.points_in(3)
    need(len(sink) == 1 and len(source) == 1, "isolated extremes",
         f"extremal buckets of sizes {len(sink)}, {len(source)}")
    need(all(w == -1 for w in sink[0]["tangent"]), "equalized sink",
         f"sink weights {sink[0]['tangent']}")
    need(all(w == 1 for w in source[0]["tangent"]), "equalized source",
         f"source weights {source[0]['tangent']}")
    need(rep.buckets[1] == rep.buckets[2], "symmetric inner buckets",
         f"inner sizes {rep.buckets[1]}, {rep.buckets[2]}")
    if expected_inner is not None:
        need((rep.buckets[1], rep.buckets[2]) == tuple(expected_inner), "inner bucket sizes",
             f"got {(rep.buckets[1], rep.buckets[2])}, want {tuple(expected_inner)}")
    need((2 * n) % 3 == 0, "dimension divisible", f"2n/3 with n = {n}")
    m = 2 * n // 3 - 2
    zeros = {sum(1 for w in p["tangent"] if w == 0) for k in (1, 2) for p in rep.points_in(k)}
    need(zeros == {m}, "inner dimension", f"inner zero counts {sorted(zeros)}, want {m}")
    sums = sum(source[0]["tangent"]) - sum(sink[0]["tangent"])
    index = Fraction(sums, 3)
    need(index == Fraction(2 * n, 3), "index from extremes", f"{index} != 2n/3")
    need(h.fano_index == 2 * n // 3, "anticanonical index",
         f"Fano index {h.fano_index} != 2n/3")
    # -K restricted to each fixed point has weight equal to the tangent sum
    raw = {p["weight"]: p["mu"] - rep.shift for p in rep.points}
    need(all(sum(p["tangent"]) == h.fano_index * raw[p["weight"]] for p in rep.points),
         "tangent sums proportional to moment", "")
    return Certificate(h.label, convention, rep.bucket_sizes, n, m, _int(index), tuple(passed))


def bw3_certify(t: DynkinType | str, convention: str = "coweight") -> Certificate:
    """Certificate for one of C3(3), A5(3), D6(6), E7(7)."""
    if isinstance(t, DynkinType):
        t = str(t)
    t = t.upper().replace("_", "")
    if t not in BW3_SPACES:
        raise InvalidNode(f"bw3 is defined for {sorted(BW3_SPACES)}, not {t}")
    i = BW3_SPACES[t]
    h = HomogeneousSpace(t, [i])
    return certify_action(h, coweight(h, i, convention), convention, BW3_INNER[t])


SCAN_SPACES = ("G2(2)", "F4(1)", "B4(2)")


def coweight_scan(labels: Iterable[str] = SCAN_SPACES) -> list:
    """Try every simple coroot and fundamental coweight on each space.

    Returns one record per attempt; a record with `pass` True would be a
    bandwidth-three certificate.
    """
    out = []
    for label in labels:
        h = HomogeneousSpace.parse(label)
        for conv in ("coroot", "coweight"):
            for j in h.type.nodes:
                try:
                    cert = certify_action(h, coweight(h, j, conv), conv)
                    out.append({"space": label, "convention": conv, "node": j,
                                "pass": True, "buckets": list(cert.buckets)})
                except CertificationFailure as exc:
                    out.append({"space": label, "convention": conv, "node": j,
                                "pass": False, "clause": exc.clause})
    return out
