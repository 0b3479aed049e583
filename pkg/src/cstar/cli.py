"""Command-line front end: ``cstar <verb> [options]``.

Exit status is 0 when everything verified, 1 when a verification failed
(the report is still printed) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import atiyah, drum, homog, tflow
from .errors import CertificationFailure, CStarError, NotCayley
from .fan import Fan, TDivisor
from .rootsys import DynkinType, short_grading_nodes

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def load_fixture() -> dict:
    text = resources.files("cstar").joinpath("data/bw2_tables.json").read_text()
    return json.loads(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False, default=str)


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None


def _print_checks(rep: atiyah.Report, out):
    for c in rep.checks:
        mark = "ok  " if c.ok else "FAIL"
        extra = f"  ({c.detail})" if c.detail and not c.ok else ""
        print(f"  [{mark}] {c.name}{extra}", file=out)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_atiyah(a, out) -> int:
    t = atiyah.AtiyahType.parse(a.type)
    suite = atiyah.build_suite(t)
    tri = atiyah.verify_triangulations(suite)
    bun = atiyah.verify_bundle_structure(suite)
    manifest = None
    if a.emit:
        manifest = str(atiyah.export_suite(suite, a.emit))
    ok = tri.ok and bun.ok
    if a.json:
        doc = {"type": str(t), "ok": ok, "triangulations": tri.to_dict(),
               "bundles": bun.to_dict()}
        if manifest:
            doc["manifest"] = manifest
        print(_dump(doc), file=out)
    else:
        print(f"Atiyah flip of type (r,s,n) = ({t}), q = {t.q}", file=out)
        print("triangulations of Δ′ ± v:", file=out)
        _print_checks(tri, out)
        print("ℙ-bundle structures and normal bundles:", file=out)
        _print_checks(bun, out)
        if manifest:
            print(f"fans written, manifest at {manifest}", file=out)
        print("verified" if ok else "FAILED", file=out)
    return OK if ok else FAILED


def _bb_text(bb: tflow.BBReport, f: Fan, out):
    d = bb.to_dict(f)
    print(f"fixed components: {len(bb.components)}", file=out)
    for k, c in enumerate(d["components"]):
        role = " (source)" if k == bb.source else " (sink)" if k == bb.sink else ""
        print(f"  Y{k}{role}: min cone {c.get('min_cone_labels', c['min_cone'])}, dim {c['dim']}, "
              f"ν⁺ {c['nu_plus']}, ν⁻ {c['nu_minus']}, μ {c.get('mu')}", file=out)
    print(f"bandwidth: {bb.bandwidth}", file=out)
    print(f"equalized: {bb.equalized}", file=out)
    print(f"B-type: {bb.b_type}", file=out)
    print(f"class group rank: {bb.class_group_rank}", file=out)
    print(f"bordism rank: {bb.bordism_rank}", file=out)
    if bb.curve_table is not None:
        print(f"μ(source) − μ(sink) = δ·deg on every invariant curve: {bb.curve_table.all_hold}",
              file=out)


def cmd_bordism(a, out) -> int:
    t = atiyah.AtiyahType.parse(a.type)
    suite = atiyah.build_suite(t)
    rep, bb = atiyah.verify_bordism(suite)
    f = suite["hat"]
    if a.json:
        print(_dump({"type": str(t), "ok": rep.ok, "checks": rep.to_dict(),
                     "bb": bb.to_dict(f)}), file=out)
    else:
        print(f"bordism Σ̂ of type ({t}) with v = {list(suite.v)}", file=out)
        _bb_text(bb, f, out)
        _print_checks(rep, out)
        print("verified" if rep.ok else "FAILED", file=out)
    return OK if rep.ok else FAILED


def cmd_bb(a, out) -> int:
    f = Fan.from_dict(_read_json(a.fan))
    v = _ints(a.v)
    d = TDivisor.from_dict(_read_json(a.divisor)) if a.divisor else None
    bb = tflow.bb_report(f, v, d)
    if a.json:
        print(_dump(bb.to_dict(f)), file=out)
    else:
        _bb_text(bb, f, out)
    if bb.curve_table is not None and not bb.curve_table.all_hold:
        return FAILED
    return OK


def cmd_drum(a, out) -> int:
    if a.index:
        km, kp = _ints(a.index) if "," in a.index else (None, None)
        if km is None:
            raise UsageError("--index takes k-,k+")
        idx = drum.drum_index(drum.DrumSpec(km, kp))
        print(_dump({"k_minus": km, "k_plus": kp, "index": idx}) if a.json
              else f"index of the drum with ℙ^{km}- and ℙ^{kp}-bundle structures: {idx}",
              file=out)
        return OK
    if not (a.pminus and a.pplus):
        raise UsageError("drum needs --pminus and --pplus, or --index")
    pm = drum.LatticePolytope.from_dict(_read_json(a.pminus))
    pp = drum.LatticePolytope.from_dict(_read_json(a.pplus))
    cs = drum.cayley_sum(pm, pp)
    doc = {"cayley_sum": cs.to_dict(), "unimodular_simplex": drum.is_unimodular_simplex(cs)}
    status = OK
    try:
        doc["bandwidth"] = drum.drum_bandwidth_check(cs).to_dict()
    except NotCayley as exc:
        doc["bandwidth"] = None
        doc["error"] = str(exc)
        status = FAILED
    if a.json:
        print(_dump(doc), file=out)
    else:
        print(f"Cayley sum vertices: {[list(v) for v in cs.vertices]}", file=out)
        print(f"unimodular simplex: {doc['unimodular_simplex']}", file=out)
        if doc["bandwidth"]:
            b = doc["bandwidth"]
            print(f"bandwidth {b['bandwidth']}, layers {b['layer_values']}, "
                  f"lattice points per layer {b['layer_point_counts']}", file=out)
        else:
            print(f"not a Cayley sum: {doc['error']}", file=out)
    return status


def cmd_adjoint(a, out) -> int:
    t = DynkinType.parse(a.type)
    if a.short:
        h = homog.adjoint_space(t)
        raw = short_grading_nodes(t)
        doc = {"type": str(t), "adjoint": h.label, "short_nodes_raw": list(raw),
               "short_nodes": [j for j in raw if j not in h.marked]}
        if a.json:
            print(_dump(doc), file=out)
        else:
            print(f"{t}: adjoint variety {h.label}", file=out)
            print(f"  short coefficient gradings at nodes {doc['short_nodes_raw']}", file=out)
            print(f"  off the marking: {doc['short_nodes']}", file=out)
        return OK
    if a.node is None:
        raise UsageError("adjoint needs --node or --short")
    rep = homog.adjoint_report(t, a.node)
    if a.json:
        print(_dump(rep.to_dict()), file=out)
    else:
        print(f"{rep.type}: adjoint variety {homog.adjoint_label(t)}, grading at node {rep.node}",
              file=out)
        print(f"  μ buckets: {dict(rep.buckets)}  bandwidth {rep.bandwidth}  "
              f"short: {rep.short}", file=out)
        for k, fp in rep.components.items():
            print(f"  {k}: {fp or '∅'}  (dimension: fixed points)", file=out)
    return OK


def cmd_bw3(a, out) -> int:
    if a.scan:
        rows = homog.coweight_scan()
        bad = [r for r in rows if r["pass"]]
        if a.json:
            print(_dump({"scan": rows, "false_certificates": len(bad)}), file=out)
        else:
            for r in rows:
                res = "PASS" if r["pass"] else f"no ({r['clause']})"
                print(f"  {r['space']:7s} {r['convention']:8s} node {r['node']}: {res}", file=out)
            print(f"false certificates: {len(bad)}", file=out)
        return FAILED if bad else OK
    if not a.type:
        raise UsageError("bw3 needs --type or --scan")
    try:
        cert = homog.bw3_certify(a.type, a.convention)
    except CertificationFailure as exc:
        doc = {"space": a.type, "pass": False, "clause": exc.clause, "detail": exc.detail}
        print(_dump(doc) if a.json else f"certificate FAILED at '{exc.clause}': {exc.detail}",
              file=out)
        return FAILED
    if a.json:
        print(_dump(cert.to_dict()), file=out)
    else:
        print(f"{cert.space}: bandwidth 3 certificate passed", file=out)
        print(f"  buckets {','.join(map(str, cert.buckets))}, n = {cert.n}, "
              f"inner dimension {cert.inner_dim}, index {cert.index}", file=out)
        for c in cert.clauses:
            print(f"  [ok  ] {c}", file=out)
    return OK


def cmd_tables(a, out) -> int:
    types = a.types.split(",") if a.types else homog.DEFAULT_TABLE_TYPES
    gen = homog.tables(types)
    problems = []
    if not a.no_check:
        fixture = load_fixture()
        if a.types:
            fixture = {**fixture, "types": {k: v for k, v in fixture["types"].items()
                                            if k in set(types)}}
        problems = homog.compare_with_fixture(gen, fixture)
    if a.out:
        Path(a.out).write_text(_dump(gen) + "\n")
    if a.json:
        print(_dump({**gen, "mismatches": problems}), file=out)
    else:
        print(f"{'type':5s} {'X_ad':9s} {'nodes':12s} {'node':>4s}  "
              f"{'Y±':14s} {'Y0':18s} buckets", file=out)
        for e in gen["types"]:
            if not e["rows"]:
                print(f"{e['type']:5s} {e['adjoint']:9s} {'none':12s}", file=out)
            for k, r in enumerate(e["rows"]):
                head = (f"{e['type']:5s} {e['adjoint']:9s} {str(e['short_nodes']):12s}"
                        if k == 0 else " " * 28)
                y0 = r["Y_0"] if r["Y_0"] else "∅"
                print(f"{head} {r['node']:>4d}  {str(r['Y_pm']):14s} {str(y0):18s} "
                      f"{r['buckets']}", file=out)
        for p in problems:
            print(f"mismatch: {p}", file=out)
        if not a.no_check:
            print("fixtures match" if not problems else "FAILED", file=out)
    return FAILED if problems else OK


def cmd_selftest(a, out) -> int:
    """Randomized AM vs FM and shift checks, reproducible from --seed."""
    import random

    rng = random.Random(a.seed)
    failures = []
    suite = atiyah.build_suite(atiyah.AtiyahType(1, 1, 3))
    for name in ("hat", "hat_minus", "hat_plus"):
        f = suite[name]
        for _ in range(a.count):
            d = TDivisor(tuple(rng.randint(-3, 3) for _ in f.rays))
            bb = tflow.bb_report(f, suite.v, d)
            if not bb.curve_table.all_hold:
                failures.append(f"{name}: {list(d.coeffs)}")
    h = homog.HomogeneousSpace("C3", [3])
    cw = homog.coweight(h, 3)
    base = homog.action_report(h, cw)
    for _ in range(a.count):
        c = rng.randint(-10, 10)
        rep = homog.action_report(h, cw, shift=c)
        if rep.bucket_sizes != base.bucket_sizes or rep.bandwidth != base.bandwidth:
            failures.append(f"shift {c}")
    doc = {"seed": a.seed, "failures": failures}
    print(_dump(doc) if a.json else f"seed {a.seed}: {len(failures)} failures", file=out)
    return FAILED if failures else OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="cstar", description="C*-actions on toric and "
                                "homogeneous varieties, verified in exact arithmetic.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    s = sub.add_parser("atiyah", parents=[common], help="build and verify an Atiyah flip suite")
    s.add_argument("--type", required=True, help="r,s,n")
    s.add_argument("--emit", metavar="DIR", help="write every fan and a manifest to DIR")
    s.set_defaults(run=cmd_atiyah)

    s = sub.add_parser("bordism", parents=[common], help="BB analysis of the bordism fan")
    s.add_argument("--type", required=True, help="r,s,n")
    s.set_defaults(run=cmd_bordism)

    s = sub.add_parser("bb", parents=[common], help="BB analysis of any fan")
    s.add_argument("--fan", required=True, metavar="FILE")
    s.add_argument("--v", required=True, help="one-parameter subgroup, e.g. 1,-1,0")
    s.add_argument("--divisor", metavar="FILE")
    s.set_defaults(run=cmd_bb)

    s = sub.add_parser("drum", parents=[common], help="Cayley sums and drum indices")
    s.add_argument("--pminus", metavar="FILE")
    s.add_argument("--pplus", metavar="FILE")
    s.add_argument("--index", metavar="K-,K+")
    s.set_defaults(run=cmd_drum)

    s = sub.add_parser("adjoint", parents=[common], help="gradings of adjoint varieties")
    s.add_argument("--type", required=True, help="Dynkin type such as E7")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--node", type=int)
    g.add_argument("--short", action="store_true", help="list the short grading nodes")
    s.set_defaults(run=cmd_adjoint)

    s = sub.add_parser("bw3", parents=[common], help="bandwidth three certificates")
    s.add_argument("--type", choices=sorted(homog.BW3_SPACES))
    s.add_argument("--convention", choices=["coweight", "coroot"], default="coweight")
    s.add_argument("--scan", action="store_true",
                   help="try every simple coroot and fundamental coweight on G2(2), F4(1), B4(2)")
    s.set_defaults(run=cmd_bw3)

    s = sub.add_parser("tables", parents=[common], help="regenerate the bandwidth two tables")
    s.add_argument("--types", help="comma-separated Dynkin types (default: all)")
    s.add_argument("--out", metavar="FILE", help="also write the generated tables here")
    s.add_argument("--no-check", action="store_true", help="skip the fixture comparison")
    s.set_defaults(run=cmd_tables)

    s = sub.add_parser("selftest", parents=[common], help=argparse.SUPPRESS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=5)
    s.set_defaults(run=cmd_selftest)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.run(a, out)
    except (UsageError, CStarError, ValueError) as exc:
        print(f"cstar {a.verb}: {exc}", file=err)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
