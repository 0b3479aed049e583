"""Acceptance criteria, one test per criterion, at the stated tolerances.

Everything here is exact, so "tolerance" means equality plus the runtime
bounds. The sweep is pinned to r+s <= 5, q <= 2 regardless of CSTAR_SWEEP.
"""

from __future__ import annotations

import random
import time

import pytest

import lie_oracle as oracle
import properties as P
from cstar import atiyah, drum, homog, tflow
from cstar.atiyah import AtiyahType, build_suite
from cstar.cli import load_fixture
from cstar.fan import TDivisor, isomorphism_by_labels, star_quotient
from cstar.homog import HomogeneousSpace
from cstar.rootsys import DynkinType, build_root_system, long_roots, weyl_orbit

SWEEP = atiyah.sweep_types(5, 2)
SEED = 20240531


@pytest.fixture(scope="module")
def suites():
    return {str(t): build_suite(t) for t in SWEEP}


def test_criterion_1_bordism_113():
    start = time.perf_counter()
    suite = build_suite(AtiyahType(1, 1, 3))
    rep, bb = atiyah.verify_bordism(suite)
    elapsed = time.perf_counter() - start
    assert rep.ok, rep.first_failure
    f = suite["hat"]
    comps = bb.components
    assert len(comps) == 3
    src, snk = comps[bb.source], comps[bb.sink]
    inner = next(c for k, c in enumerate(comps) if k not in (bb.source, bb.sink))
    # source and sink stars against the flip fans, by generator labels
    for comp, side in ((src, "sigma_plus"), (snk, "sigma_minus")):
        star = star_quotient(f, comp.min_cone)
        target = suite[side]
        assert star.rank == target.rank
        assert isomorphism_by_labels(star, target) is not None
    assert inner.dim == 0 and inner.nu_plus == 2 and inner.nu_minus == 2
    assert (snk.mu_value, inner.mu_value, src.mu_value) == (-1, 0, 1)
    assert bb.bandwidth == 2 and bb.equalized
    assert bb.class_group_rank == 2 and bb.bordism_rank == 1
    assert elapsed < 1.0


def test_criterion_2_triangulations():
    start = time.perf_counter()
    for t in SWEEP:
        rep = atiyah.verify_triangulations(build_suite(t))
        assert rep.ok, (str(t), rep.first_failure)
    assert len(SWEEP) == 30
    assert time.perf_counter() - start < 10.0


def test_criterion_3_normal_bundle_degrees(suites):
    for name, suite in suites.items():
        t = suite.type
        deg = atiyah.fiber_degrees(suite)
        for i in range(t.r + 1):
            assert deg[f"e{i}"] == {-1}, name
        for j in range(t.s + 1):
            assert deg[f"f{j}"] == {1}, name
        assert len(atiyah.fiber_walls(suite, "+")) > 0


def test_criterion_4_am_vs_fm(suites):
    rng = random.Random(SEED)
    curves = 0
    for name, suite in suites.items():
        for fan_name in ("hat", "hat_minus", "hat_plus"):
            f = suite[fan_name]
            for _ in range(20):
                d = TDivisor(tuple(rng.randint(-5, 5) for _ in f.rays))
                table = tflow.invariant_curve_table(f, suite.v, d)
                assert table.all_hold, (name, fan_name, d.coeffs)
                curves += len(table.rows)
    assert curves > 0


def test_criterion_5_drums():
    for n in range(3, 9):
        for m in range(2, n):
            cs = drum.cayley_sum(*drum.product_pair(m, n))
            assert len(cs.vertices) == n + 1
            a, b = drum.unimodular_map_to_standard(cs)
            image = {tuple(x + y for x, y in zip(drum.el.matvec(a, v), b)) for v in cs.vertices}
            assert image == set(drum.standard_simplex(n).vertices)
            assert drum.drum_index(drum.DrumSpec(m - 1, n - m)) == n + 1


CLASSICAL_ROOTS = {**{f"A{n}": n * (n + 1) for n in range(1, 9)},
                   **{f"B{n}": 2 * n * n for n in range(2, 9)},
                   **{f"C{n}": 2 * n * n for n in range(2, 9)},
                   **{f"D{n}": 2 * n * (n - 1) for n in range(4, 9)},
                   "E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


def test_criterion_6_root_system_oracles():
    start = time.perf_counter()
    for name, count in CLASSICAL_ROOTS.items():
        t = DynkinType.parse(name)
        rs = build_root_system(t)
        assert len(rs.roots) == count, name
        pos = oracle.positive_roots(oracle.cartan(t.letter, t.rank))
        assert 2 * len(pos) == count, name
    c3 = build_root_system(DynkinType("C", 3))
    e7 = build_root_system(DynkinType("E", 7))
    assert len(weyl_orbit(c3, c3.fundamental_weights[2])) == 8
    assert oracle.orbit_size(oracle.cartan("C", 3), [0, 0, 1]) == 8
    assert len(weyl_orbit(e7, e7.fundamental_weights[6])) == 56
    assert oracle.orbit_size(oracle.cartan("E", 7), [0] * 6 + [1]) == 56
    for name, count in {"B3": 12, "C3": 6, "G2": 6, "E6": 72}.items():
        t = DynkinType.parse(name)
        assert len(long_roots(build_root_system(t))) == count
        assert oracle.long_root_count(oracle.cartan(t.letter, t.rank)) == count
        # adjoint fixed points are the long roots
        assert HomogeneousSpace.parse(homog.adjoint_label(t)).euler == count
    assert time.perf_counter() - start < 30.0


def test_criterion_7_tables():
    gen = homog.tables()
    fixture = load_fixture()
    assert homog.compare_with_fixture(gen, fixture) == []
    by = {e["type"]: e for e in gen["types"]}
    assert set(by) == set(fixture["types"])
    assert by["E6"]["short_nodes"] == [1, 6]
    assert by["E7"]["short_nodes"] == [7]
    for name in ("F4", "G2", "E8"):
        assert by[name]["short_nodes"] == [] and by[name]["rows"] == []
    for m in range(2, 9):
        assert all(r["Y_0"] is None for r in by[f"C{m}"]["rows"])
    for e in gen["types"]:
        n_long = len(long_roots(build_root_system(DynkinType.parse(e["type"]))))
        for r in e["rows"]:
            minus, zero, plus = r["buckets"]
            assert minus == plus == sum(r["Y_pm"].values())
            assert zero == sum((r["Y_0"] or {}).values())
            assert minus + zero + plus == n_long


BW3 = {"C3": ((1, 3, 3, 1), 6, 2), "A5": ((1, 9, 9, 1), 9, 4),
       "D6": ((1, 15, 15, 1), 15, 8), "E7": ((1, 27, 27, 1), 27, 16)}


def test_criterion_8_bandwidth_three():
    for name, (sizes, n, inner) in BW3.items():
        cert = homog.bw3_certify(name)
        assert cert.buckets == sizes and cert.n == n
        assert cert.inner_dim == inner == 2 * n // 3 - 2
        h = HomogeneousSpace(name, [homog.BW3_SPACES[name]])
        rep = homog.action_report(h, homog.coweight(h, homog.BW3_SPACES[name]))
        assert set(rep.points_in(rep.sink)[0]["tangent"]) == {-1}
        assert set(rep.points_in(rep.source)[0]["tangent"]) == {1}
        for k in (1, 2):
            assert rep.stats[k].zero_counts == {inner: sizes[k]}
    records = homog.coweight_scan(("G2(2)", "F4(1)", "B4(2)"))
    assert len(records) == 20
    assert not [r for r in records if r["pass"]]


def test_criterion_9_property_suite():
    start = time.perf_counter()
    for prop in P.ALL:
        prop()
    assert time.perf_counter() - start < 60.0
