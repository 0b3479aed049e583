from __future__ import annotations

import json
from importlib import resources

import pytest

import lie_oracle as oracle
from cstar import homog
from cstar.errors import CertificationFailure, InvalidNode, NodeInMarking
from cstar.homog import HomogeneousSpace
from cstar.rootsys import long_roots

import properties as P


@pytest.fixture(scope="module")
def fixture_tables():
    return json.loads(resources.files("cstar").joinpath("data/bw2_tables.json").read_text())


@pytest.mark.parametrize("label", ["C3(3)", "A5(3)", "D6(6)", "E7(7)", "E6(1)", "G2(2)",
                                   "F4(4)", "B4(2)", "A3(1,3)", "D5(5)"])
def test_dimension_and_euler_against_oracle(label):
    h = HomogeneousSpace.parse(label)
    assert (h.dim, h.euler) == oracle.space(label)


def test_c33_is_the_cube():
    h = HomogeneousSpace.parse("C3(3)")
    pts = homog.fixed_point_weights(h)
    assert len(pts) == 8 and h.dim == 6
    # in Bourbaki coordinates the orbit of e1+e2+e3 is all sign vectors
    assert {tuple(abs(x) for x in p) for p in pts} == {(1, 1, 1)}


def test_a53_has_twenty_points():
    assert HomogeneousSpace.parse("A5(3)").euler == 20


@pytest.mark.parametrize("t", ["B4", "C3", "D5", "E6", "F4", "G2", "A4"])
def test_adjoint_orbit_is_long_roots(t):
    h = homog.adjoint_space(t)
    assert set(homog.fixed_point_weights(h)) == set(long_roots(h.rs))


def test_c33_sink_under_fundamental_coweight():
    h = HomogeneousSpace.parse("C3(3)")
    rep = homog.action_report(h, homog.coweight(h, 3))
    sink = rep.points_in(rep.sink)
    assert len(sink) == 1 and set(sink[0]["tangent"]) == {-1}
    assert rep.bucket_sizes == (1, 3, 3, 1)


def test_c33_coroot_gives_bandwidth_two():
    h = HomogeneousSpace.parse("C3(3)")
    rep = homog.action_report(h, homog.coweight(h, 3, "coroot"), "coroot")
    assert rep.bandwidth == 2
    assert rep.buckets == {0: 4, 2: 4}
    with pytest.raises(CertificationFailure) as exc:
        homog.bw3_certify("C3", "coroot")
    assert exc.value.clause == "bandwidth"


@pytest.mark.parametrize("t,sizes,inner,index", [
    ("C3", (1, 3, 3, 1), 2, 4), ("A5", (1, 9, 9, 1), 4, 6),
    ("D6", (1, 15, 15, 1), 8, 10), ("E7", (1, 27, 27, 1), 16, 18)])
def test_bw3_certificates(t, sizes, inner, index):
    cert = homog.bw3_certify(t)
    assert cert.buckets == sizes
    assert cert.inner_dim == inner
    assert cert.index == index == 2 * cert.n // 3


def test_bw3_rejects_other_types():
    with pytest.raises(InvalidNode):
        homog.bw3_certify("B3")


def test_e7_inner_components():
    h = HomogeneousSpace.parse("E7(7)")
    rep = homog.action_report(h, homog.coweight(h, 7))
    for k in (1, 2):
        assert rep.stats[k].zero_counts == {16: 27}


def test_scan_finds_no_false_certificate():
    records = homog.coweight_scan()
    assert len(records) == 2 * (2 + 4 + 4)
    assert not any(r["pass"] for r in records)


def test_opposite_coweight_swaps_sink_and_source():
    h = HomogeneousSpace.parse("A5(3)")
    cw = homog.coweight(h, 3)
    a = homog.action_report(h, cw)
    b = homog.action_report(h, tuple(-x for x in cw))
    assert a.bucket_sizes == tuple(reversed(b.bucket_sizes))
    assert a.stats[a.sink].nu_minus == b.stats[b.source].nu_plus


def test_zero_coweight_is_one_bucket():
    h = HomogeneousSpace.parse("B3(1)")
    rep = homog.action_report(h, (0, 0, 0))
    assert rep.buckets == {0: h.euler}
    assert rep.bandwidth == 0


def test_adjoint_examples():
    e6 = homog.adjoint_report("E6", 1)
    assert e6.short and e6.bandwidth == 2
    assert e6.components["Y_plus"] == {10: 16}
    assert e6.components["Y_0"] == {13: 40}
    f4 = homog.adjoint_report("F4", 4)
    assert not f4.short
    with pytest.raises(NodeInMarking):
        homog.adjoint_report("E6", 2)
    with pytest.raises(InvalidNode):
        homog.adjoint_report("E6", 7)


def test_bm_node_one_dimensions():
    for m in range(3, 9):
        c = homog.adjoint_report(f"B{m}", 1).components
        assert c["Y_plus"] == {2 * m - 3: 2 * m - 2}
        assert set(c["Y_0"]) == {4 * m - 9}


def test_cm_has_empty_middle():
    for m in range(2, 9):
        assert homog.adjoint_report(f"C{m}", m).components["Y_0"] == {}


def test_fixture_labels_match_oracle(fixture_tables):
    for name, row in fixture_tables["types"].items():
        for r in row["rows"].values():
            for key in ("Y_pm", "Y_0"):
                assert homog.label_fingerprint(r[key]) == oracle.fingerprint(r[key]), (name, key)


def test_generated_tables_match_fixture(fixture_tables):
    types = ["A5", "B4", "C4", "D4", "D5", "E6", "F4", "G2"]
    problems = homog.compare_with_fixture(homog.tables(types),
                                          {"types": {k: v for k, v in
                                                     fixture_tables["types"].items()
                                                     if k in types}})
    assert problems == []


def test_tampered_fixture_is_caught(fixture_tables):
    bad = json.loads(json.dumps(fixture_tables))
    bad["types"]["E6"]["rows"]["1"]["Y_0"] = "D5(1)"
    problems = homog.compare_with_fixture(homog.tables(["E6"]),
                                          {"types": {"E6": bad["types"]["E6"]}})
    assert problems and "Y_0" in problems[0]


def test_property_shift_invariance():
    P.prop_shift_invariance_homog()


def test_property_nu_dimension_sum():
    P.prop_nu_dimension_sum_homog()
