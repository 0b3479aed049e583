"""Fans of the toric Atiyah flip of type (r, s, n), its cobordism and its bordism.

Coordinates on N = Z^(n+1) are ordered e_0..e_r, f_0..f_s, h_1..h_q with
q = n - 1 - r - s. The flip family lives in N' = N / Z v where
v = sum(e) - sum(f).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from . import exactlat as el
from .errors import InvalidType
from .fan import (Fan, TDivisor, cartier_data, curve_degree, isomorphism_by_labels,
                  refinement_report)
from .tflow import BBReport, bb_report

SWEEP_ENV = "CSTAR_SWEEP"

DISPLAY = {
    "delta": "Σ(Δ)",
    "delta_prime": "Σ(Δ′)",
    "sigma_minus": "Σ_−",
    "sigma_plus": "Σ_+",
    "sigma_sharp": "Σ_#",
    "tilde_minus": "Σ̃_−",
    "tilde_plus": "Σ̃_+",
    "hat_minus_plus": "Σ̂_−^+",
    "hat_minus_minus": "Σ̂_−^−",
    "hat_plus_plus": "Σ̂_+^+",
    "hat_plus_minus": "Σ̂_+^−",
    "hat_minus": "Σ̂_−",
    "hat_plus": "Σ̂_+",
    "hat": "Σ̂",
    "hat_prime_minus": "Σ̂′_−",
    "hat_prime_plus": "Σ̂′_+",
}


@dataclass(frozen=True)
class AtiyahType:
    r: int
    s: int
    n: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise InvalidType("r and s must be ≥ 1")
        if self.q < 0:
            raise InvalidType("q must be ≥ 0")

    @property
    def q(self) -> int:
        return self.n - 1 - self.r - self.s

    @classmethod
    def parse(cls, text: str) -> "AtiyahType":
        try:
            r, s, n = (int(x) for x in text.split(","))
        except ValueError:
            raise InvalidType(f"type must look like r,s,n, got {text!r}") from None
        return cls(r, s, n)

    def __str__(self):
        return f"{self.r},{self.s},{self.n}"


@dataclass
class AtiyahSuite:
    type: AtiyahType
    fans: dict
    v: tuple
    u: tuple
    quotient: el.QuotientMap
    names: tuple  # names of the generators of N in coordinate order
    cones: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> Fan:
        return self.fans[name]

    def with_fan(self, name: str, fan: Fan) -> "AtiyahSuite":
        fans = dict(self.fans)
        fans[name] = fan
        return replace(self, fans=fans)


def generator_names(t: AtiyahType) -> list[str]:
    return ([f"e{i}" for i in range(t.r + 1)] + [f"f{j}" for j in range(t.s + 1)]
            + [f"h{k}" for k in range(1, t.q + 1)])


def build_suite(t: AtiyahType, validate: bool = True) -> AtiyahSuite:
    r, s, q = t.r, t.s, t.q
    dim = t.n + 1
    names = generator_names(t)
    basis = [el.unit(dim, i) for i in range(dim)]
    E = list(range(r + 1))
    F = list(range(r + 1, r + s + 2))
    H = list(range(r + s + 2, dim))
    v = tuple([1] * (r + 1) + [-1] * (s + 1) + [0] * q)
    qm = el.quotient_lattice(dim, v)
    proj = [qm.project(b) for b in basis]
    u = tuple(sum(proj[i][k] for i in E) for k in range(t.n))

    def dminus(i):  # delta_-^i: all generators except e_i
        return [k for k in range(dim) if k != E[i]]

    def dplus(j):
        return [k for k in range(dim) if k != F[j]]

    fans = {}
    mk = lambda rank, rays, cones, labels: Fan(rank, rays, cones, labels, validate)

    # in N'
    fans["delta_prime"] = mk(t.n, proj, [range(dim)], names)
    fans["sigma_minus"] = mk(t.n, proj, [dminus(i) for i in range(r + 1)], names)
    fans["sigma_plus"] = mk(t.n, proj, [dplus(j) for j in range(s + 1)], names)
    sharp_cones = []
    for i in range(r + 1):
        for j in range(s + 1):
            sharp_cones.append([dim] + [k for k in range(dim) if k not in (E[i], F[j])])
    fans["sigma_sharp"] = mk(t.n, proj + [u], sharp_cones, names + ["u"])

    # in N; rays e, f, h, then v and -v
    V, NV = dim, dim + 1
    rays = basis + [v, el.neg(v)]
    labels = names + ["v", "-v"]
    fans["delta"] = mk(dim, basis, [range(dim)], names)
    fans["tilde_minus"] = mk(dim, basis, [dminus(i) for i in range(r + 1)], names)
    fans["tilde_plus"] = mk(dim, basis, [dplus(j) for j in range(s + 1)], names)
    mp = [dminus(i) + [NV] for i in range(r + 1)]
    mm = [dminus(i) + [V] for i in range(r + 1)]
    pp = [dplus(j) + [V] for j in range(s + 1)]
    pm = [dplus(j) + [NV] for j in range(s + 1)]
    full = list(range(dim))
    fans["hat_minus_plus"] = mk(dim, rays, mp, labels)
    fans["hat_minus_minus"] = mk(dim, rays, mm, labels)
    fans["hat_plus_plus"] = mk(dim, rays, pp, labels)
    fans["hat_plus_minus"] = mk(dim, rays, pm, labels)
    fans["hat_minus"] = mk(dim, rays, mp + mm, labels)
    fans["hat_plus"] = mk(dim, rays, pp + pm, labels)
    fans["hat"] = mk(dim, rays, mp + [full] + pp, labels)
    fans["hat_prime_minus"] = mk(dim, rays, mp + [full + [V]], labels)
    fans["hat_prime_plus"] = mk(dim, rays, pp + [full + [NV]], labels)
    # helper fans for the triangulation identities
    fans["delta_plus_v"] = mk(dim, rays, [full + [V]], labels)
    fans["delta_minus_v"] = mk(dim, rays, [full + [NV]], labels)
    fans["plus_v_with_delta"] = mk(dim, rays, pp + [full], labels)
    fans["minus_v_side"] = mk(dim, rays, mp + [full], labels)

    cones = {
        "delta_minus": frozenset(F + H),
        "delta_plus": frozenset(E + H),
        "delta_0": frozenset(H),
        "delta_minus_plus_delta_plus": frozenset(E + F),
    }
    for i in range(r + 1):
        cones[f"delta_minus^{i}"] = frozenset(dminus(i))
    for j in range(s + 1):
        cones[f"delta_plus^{j}"] = frozenset(dplus(j))
    return AtiyahSuite(t, fans, v, u, qm, tuple(names), cones)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    witness: tuple | None = None

    def to_dict(self):
        d = {"check": self.name, "ok": self.ok}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)

    def add(self, name: str, ok: bool, detail: str = "", witness=None) -> bool:
        self.checks.append(Check(name, bool(ok), detail, witness))
        return bool(ok)

    def to_dict(self) -> dict:
        return {"report": self.title, "ok": self.ok,
                "checks": [c.to_dict() for c in self.checks], **self.data}


def _refines(rep: Report, name: str, f1: Fan, f2: Fan):
    rr = refinement_report(f1, f2)
    rep.add(name, rr.ok, rr.reason, rr.witness)


def verify_triangulations(suite: AtiyahSuite) -> Report:
    rep = Report("triangulations")
    F = suite.fans
    for nm in ("sigma_minus", "sigma_plus", "sigma_sharp", "hat", "hat_minus", "hat_plus"):
        try:
            F[nm].validate()
            rep.add(f"{DISPLAY[nm]} is a fan", True)
        except Exception as exc:  # noqa: BLE001 - report any structural failure
            rep.add(f"{DISPLAY[nm]} is a fan", False, str(exc))
    _refines(rep, "Σ_+ subdivides Δ′", F["sigma_plus"], F["delta_prime"])
    _refines(rep, "Σ_− subdivides Δ′", F["sigma_minus"], F["delta_prime"])
    _refines(rep, "∪(δ_−^i+ℝv) = Δ+ℝv", F["hat_minus_minus"], F["delta_plus_v"])
    _refines(rep, "∪(δ_+^j+ℝv) ∪ Δ = Δ+ℝv", F["plus_v_with_delta"], F["delta_plus_v"])
    _refines(rep, "∪(δ_+^j+ℝ(−v)) = Δ+ℝ(−v)", F["hat_plus_minus"], F["delta_minus_v"])
    _refines(rep, "∪(δ_−^i+ℝ(−v)) ∪ Δ = Δ+ℝ(−v)", F["minus_v_side"], F["delta_minus_v"])
    _refines(rep, "Σ_# refines Σ_−", F["sigma_sharp"], F["sigma_minus"])
    _refines(rep, "Σ_# refines Σ_+", F["sigma_sharp"], F["sigma_plus"])
    for nm in ("sigma_minus", "sigma_plus", "sigma_sharp", "hat", "hat_minus", "hat_plus"):
        rep.add(f"{DISPLAY[nm]} is smooth", F[nm].is_smooth)
    return rep


def restrict_divisor(f: Fan, d: TDivisor, ray: int) -> tuple[Fan, TDivisor]:
    """The star fan of V(ray) and a representative of d restricted to V(ray)."""
    from .fan import star_quotient

    m = el.solve_integer([f.rays[ray]], [-d.coeffs[ray]])
    dd = d + TDivisor.principal(f, m)
    star = star_quotient(f, [ray])
    return star, TDivisor(tuple(dd.coeffs[j] for j in star.origin))


def linearly_equivalent(f: Fan, d1: TDivisor, d2: TDivisor) -> bool:
    diff = (d1 - d2).coeffs
    return el.solve_integer(f.rays, diff) is not None if f.rays else not any(diff)


def o_one(suite: AtiyahSuite, side: str) -> TDivisor:
    """A divisor representing O(1) on X_{Σ_side}: positive on the exceptional lines.

    On Σ_− this is V(e_0); on Σ_+ it is -V(e_0), linearly equivalent to V(f_0).
    """
    f = suite.fans["sigma_minus" if side == "-" else "sigma_plus"]
    e0 = TDivisor.prime(f, f.index_of_label("e0"))
    return e0 if side == "-" else -e0


def _transport(src: Fan, d: TDivisor, dst: Fan) -> TDivisor:
    coeffs = [0] * len(dst.rays)
    for i, a in enumerate(d.coeffs):
        coeffs[dst.index_of_label(src.label(i))] = a
    return TDivisor(coeffs)


def fiber_walls(suite: AtiyahSuite, side: str = "+") -> list[frozenset]:
    """Walls of Σ_± whose curves are lines in the fibres of the exceptional locus."""
    if side == "+":
        f = suite.fans["sigma_plus"]
        idx = [f.index_of_label(f"f{j}") for j in range(suite.type.s + 1)]
    else:
        f = suite.fans["sigma_minus"]
        idx = [f.index_of_label(f"e{i}") for i in range(suite.type.r + 1)]
    out = []
    for w, owners in f.walls.items():
        if len(owners) == 2 and len(set(idx) - w) == 2:
            out.append(w)
    return sorted(out, key=sorted)


def verify_bundle_structure(suite: AtiyahSuite) -> Report:
    rep = Report("bundle structure")
    F = suite.fans
    qm = suite.quotient
    v = suite.v
    for side, tilde, base in (("-", "tilde_minus", "sigma_minus"), ("+", "tilde_plus", "sigma_plus")):
        ft, fb = F[tilde], F[base]
        imgs = {frozenset(el.primitive(qm.project(ft.rays[i])) for i in mc) for mc in ft.max_cones}
        rep.add(f"{DISPLAY[tilde]} → {DISPLAY[base]} is cone-bijective",
                imgs == fb.cone_set() and len(ft.max_cones) == len(fb.max_cones))
        # the supporting function of -V(e0) and the graph description of the lift
        e0 = fb.index_of_label("e0")
        eps = cartier_data(fb, -TDivisor.prime(fb, e0))
        ok = True
        for mc in fb.max_cones:
            for i in mc:
                want = 1 if i == e0 else 0
                if eps.value(mc, fb.rays[i]) != want:
                    ok = False
        rep.add(f"ε on {DISPLAY[base]}: ε(e0)=1, 0 on other generators", ok)
        ok = True
        for mc_t in ft.max_cones:
            mc_b = fb.keys(ft.label(i) for i in mc_t)
            for i in mc_t:
                x = ft.rays[i]
                y = qm.project(x)
                lifted = el.add(qm.lift(y), el.scale(eps.value(mc_b, y), v))
                if lifted != x:
                    ok = False
        rep.add(f"|{DISPLAY[tilde]}| is the graph of ε", ok)
        # line bundle and P^1-bundle fans
        plus = "hat_minus_plus" if side == "-" else "hat_plus_plus"
        minus = "hat_minus_minus" if side == "-" else "hat_plus_minus"
        union = "hat_minus" if side == "-" else "hat_plus"
        ray_plus = "-v" if side == "-" else "v"
        ray_minus = "v" if side == "-" else "-v"
        for nm, ray in ((plus, ray_plus), (minus, ray_minus)):
            fh = F[nm]
            want = {frozenset({ft.label(i) for i in mc} | {ray}) for mc in ft.max_cones}
            got = {frozenset(fh.label(i) for i in mc) for mc in fh.max_cones}
            rep.add(f"{DISPLAY[nm]} adds the {ray} ray over every cone", want == got)
        got = F[union].cone_set()
        rep.add(f"{DISPLAY[union]} = {DISPLAY[minus]} ∪ {DISPLAY[plus]}",
                got == F[plus].cone_set() | F[minus].cone_set())
        faces = lambda fan: {frozenset(fan.rays[i] for i in c) for c in fan.all_cones}
        rep.add(f"{DISPLAY[minus]} ∩ {DISPLAY[plus]} = {DISPLAY[tilde]}",
                faces(F[minus]) & faces(F[plus]) == faces(ft))
        # normal bundles of the two sections
        fh = F[union]
        one = o_one(suite, side)
        zero_ray = fh.index_of_label(ray_plus)
        inf_ray = fh.index_of_label(ray_minus)
        for nm_sec, ray, sign in (("D⁰", zero_ray, 1), ("D¹", inf_ray, -1)):
            star, res = restrict_divisor(fh, TDivisor.prime(fh, ray), ray)
            iso = isomorphism_by_labels(star, fb)
            ok = iso is not None and linearly_equivalent(fb, _transport(star, res, fb), sign * one)
            rep.add(f"normal bundle of {nm_sec} in {DISPLAY[union]} is O({'1' if sign > 0 else '-1'})", ok)
    # strict transform of divisor classes
    fm, fp = F["sigma_minus"], F["sigma_plus"]
    rep.add("O_{Σ−}(−1) corresponds to O_{Σ+}(1)",
            linearly_equivalent(fp, _transport(fm, -o_one(suite, "-"), fp), o_one(suite, "+")))
    if suite.type.r == suite.type.s:
        rep.add("flop: equal cone counts", len(fm.max_cones) == len(fp.max_cones))
    return rep


def fiber_degrees(suite: AtiyahSuite) -> dict:
    """Degrees of each prime divisor of Σ_+ on the P^s-fibre lines of V(δ_+)."""
    f = suite.fans["sigma_plus"]
    out = {}
    for w in fiber_walls(suite, "+"):
        for i in range(len(f.rays)):
            out.setdefault(f.label(i), set()).add(curve_degree(f, w, TDivisor.prime(f, i)))
    return out


def bordism_divisor(f: Fan) -> TDivisor:
    return TDivisor.prime(f, f.index_of_label("v")) + TDivisor.prime(f, f.index_of_label("-v"))


def verify_bordism(suite: AtiyahSuite) -> tuple[Report, BBReport]:
    t = suite.type
    F = suite.fans
    f = F["hat"]
    rep = Report("bordism")
    bb = bb_report(f, suite.v, bordism_divisor(f))
    comps = bb.components
    rep.add("three fixed components", len(comps) == 3, f"found {len(comps)}")
    by_cone = {frozenset(f.label(i) for i in c.min_cone): k for k, c in enumerate(comps)}
    src = by_cone.get(frozenset({"v"}))
    snk = by_cone.get(frozenset({"-v"}))
    inner_key = frozenset(f"e{i}" for i in range(t.r + 1)) | frozenset(f"f{j}" for j in range(t.s + 1))
    inner = by_cone.get(inner_key)
    rep.add("source is V(v)", src is not None and bb.source == src)
    rep.add("sink is V(−v)", snk is not None and bb.sink == snk)
    rep.add("inner component is V(δ_−+δ_+)", inner is not None)
    if None in (src, snk, inner) or len(comps) != 3:
        return rep, bb
    rep.add("source fan ≅ Σ_+", isomorphism_by_labels(comps[src].component_fan, F["sigma_plus"]) is not None)
    rep.add("sink fan ≅ Σ_−", isomorphism_by_labels(comps[snk].component_fan, F["sigma_minus"]) is not None)
    cf = comps[inner].component_fan
    affine = (cf.rank == t.q and len(cf.max_cones) == 1 and len(cf.rays) == t.q
              and (t.q == 0 or abs(el.det(cf.rays)) == 1))
    rep.add("inner component ≅ 𝔸^q", affine and comps[inner].dim == t.q)
    mu = (comps[snk].mu_value, comps[inner].mu_value, comps[src].mu_value)
    rep.add("μ = (−1, 0, +1) on sink, inner, source", mu == (-1, 0, 1), str(mu))
    rep.add("bandwidth 2", bb.bandwidth == 2, str(bb.bandwidth))
    rep.add("equalized", bb.equalized)
    rep.add("ν⁺ = r+1 at the inner component", comps[inner].nu_plus == t.r + 1)
    rep.add("ν⁻ = s+1 at the inner component", comps[inner].nu_minus == t.s + 1)
    rep.add("class group rank 2", bb.class_group_rank == 2, str(bb.class_group_rank))
    rep.add("bordism rank 1", bb.bordism_rank == 1, str(bb.bordism_rank))
    rep.add("AM vs FM on every invariant curve", bb.curve_table.all_hold)
    for nm, stated in (("hat_prime_minus", ("hat_minus_plus", "delta_plus_v")),
                       ("hat_prime_plus", ("hat_plus_plus", "delta_minus_v"))):
        want = F[stated[0]].cone_set() | F[stated[1]].cone_set()
        rep.add(f"{DISPLAY[nm]} has the stated maximal cones", F[nm].cone_set() == want)
    deg = fiber_degrees(suite)
    rep.add("e-divisors have degree −1 on the ℙ^s fibre lines",
            all(deg[f"e{i}"] == {-1} for i in range(t.r + 1)))
    rep.add("f-divisors have degree +1 on the ℙ^s fibre lines",
            all(deg[f"f{j}"] == {1} for j in range(t.s + 1)))
    rep.data["mu"] = {"sink": mu[0], "inner": mu[1], "source": mu[2]}
    return rep, bb


# ---------------------------------------------------------------------------
# sweeps and export
# ---------------------------------------------------------------------------

def sweep_types(max_rs: int | None = None, max_q: int | None = None) -> list[AtiyahType]:
    """Types with r, s ≥ 1, r+s ≤ max_rs and 0 ≤ q ≤ max_q.

    Defaults come from the environment variable CSTAR_SWEEP ("max_rs,max_q"),
    falling back to (5, 2).
    """
    env = os.environ.get(SWEEP_ENV)
    d_rs, d_q = 5, 2
    if env:
        a, b = env.split(",")
        d_rs, d_q = int(a), int(b)
    max_rs = d_rs if max_rs is None else max_rs
    max_q = d_q if max_q is None else max_q
    out = []
    for rs in range(2, max_rs + 1):
        for r in range(1, rs):
            s = rs - r
            for q in range(max_q + 1):
                out.append(AtiyahType(r, s, r + s + 1 + q))
    return out


def export_suite(suite: AtiyahSuite, directory: str | os.PathLike) -> Path:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"type": str(suite.type), "v": list(suite.v), "u": list(suite.u), "fans": {}}
    for name, fan in sorted(suite.fans.items()):
        fn = f"{name}.json"
        (out / fn).write_text(json.dumps(fan.to_dict(), sort_keys=True, indent=1) + "\n")
        manifest["fans"][name] = {"file": fn, "display": DISPLAY.get(name, name)}
    (out / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    return out / "manifest.json"


def remove_cone(f: Fan, key) -> Fan:
    """A copy of ``f`` without one maximal cone (used to build negative tests)."""
    key = frozenset(key)
    return Fan(f.rank, f.rays, [c for c in f.max_cones if c != key], f.labels, validate=False)
