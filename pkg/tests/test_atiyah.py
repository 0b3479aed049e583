from __future__ import annotations

import json

import pytest

from cstar import atiyah, tflow
from cstar.atiyah import AtiyahType, build_suite
from cstar.errors import InvalidType
from cstar.fan import class_group


@pytest.fixture(scope="module")
def s113():
    return build_suite(AtiyahType(1, 1, 3))


def test_type_validation():
    with pytest.raises(InvalidType, match="q must be ≥ 0"):
        AtiyahType(1, 1, 2)
    with pytest.raises(InvalidType, match="r and s"):
        AtiyahType(0, 1, 3)
    with pytest.raises(InvalidType):
        AtiyahType.parse("1,1")
    assert AtiyahType.parse("2,1,6").q == 2


def test_generators_and_subgroup(s113):
    assert s113.names == ("e0", "e1", "f0", "f1")
    assert s113.v == (1, 1, -1, -1)
    assert s113.quotient.project(s113.v) == (0, 0, 0)


def test_cone_counts(s113):
    F = s113.fans
    assert len(F["sigma_minus"].max_cones) == 2
    assert len(F["sigma_plus"].max_cones) == 2
    assert len(F["sigma_sharp"].max_cones) == 4
    # affine cone plus one line-bundle cone over each side
    assert len(F["hat"].max_cones) == 5


def test_flip_fans_cover_the_same_cone(s113):
    F = s113.fans
    assert F["sigma_minus"].rays == F["sigma_plus"].rays == F["delta_prime"].rays
    assert not F["sigma_minus"].same_as(F["sigma_plus"])


@pytest.mark.parametrize("t", ["1,1,3", "2,1,4", "1,2,5", "2,2,6"])
def test_triangulations_and_bundles(t):
    suite = build_suite(AtiyahType.parse(t))
    tri = atiyah.verify_triangulations(suite)
    assert tri.ok, tri.first_failure
    bun = atiyah.verify_bundle_structure(suite)
    assert bun.ok, bun.first_failure


def test_removing_a_cone_breaks_the_triangulation():
    suite = build_suite(AtiyahType(2, 1, 4))
    f = suite["sigma_plus"]
    broken = suite.with_fan("sigma_plus", atiyah.remove_cone(f, f.max_cones[0]))
    rep = atiyah.verify_triangulations(broken)
    assert not rep.ok
    assert rep.first_failure.name == "Σ_+ is a fan" or "subdivides" in rep.first_failure.name
    failing = [c for c in rep.checks if not c.ok]
    assert any(c.witness is not None for c in failing)


def test_bordism_113(s113):
    rep, bb = atiyah.verify_bordism(s113)
    assert rep.ok, rep.first_failure
    assert len(bb.components) == 3
    assert bb.bandwidth == 2 and bb.equalized
    assert bb.class_group_rank == 2 and bb.bordism_rank == 1
    assert rep.data["mu"] == {"sink": -1, "inner": 0, "source": 1}


@pytest.mark.parametrize("t", ["2,1,5", "1,3,6"])
def test_bordism_other_types(t):
    rep, bb = atiyah.verify_bordism(build_suite(AtiyahType.parse(t)))
    assert rep.ok, rep.first_failure
    assert bb.bordism_rank == 1


def test_fiber_degrees(s113):
    assert atiyah.fiber_degrees(s113) == {"e0": {-1}, "e1": {-1}, "f0": {1}, "f1": {1}}


def test_line_bundle_fans_are_p1_bundles(s113):
    for name in ("hat_minus", "hat_plus"):
        f = s113[name]
        assert class_group(f).free_rank == 2
        bb = tflow.bb_report(f, s113.v)
        assert bb.b_type and bb.bordism_rank == 0


def test_o_one_is_positive_on_exceptional_lines(s113):
    from cstar.fan import curve_degree
    for side in "-+":
        f = s113["sigma_minus" if side == "-" else "sigma_plus"]
        d = atiyah.o_one(s113, side)
        for w in atiyah.fiber_walls(s113, side):
            assert curve_degree(f, w, d) == 1


def test_export_manifest(tmp_path, s113):
    path = atiyah.export_suite(s113, tmp_path)
    manifest = json.loads(path.read_text())
    assert manifest["type"] == "1,1,3"
    assert manifest["fans"]["hat"]["display"] == "Σ̂"
    for entry in manifest["fans"].values():
        assert (tmp_path / entry["file"]).exists()


def test_sweep_types(monkeypatch):
    monkeypatch.delenv(atiyah.SWEEP_ENV, raising=False)
    types = atiyah.sweep_types()
    assert len(types) == 30
    assert all(t.r + t.s <= 5 and 0 <= t.q <= 2 for t in types)
    monkeypatch.setenv(atiyah.SWEEP_ENV, "3,0")
    assert [str(t) for t in atiyah.sweep_types()] == ["1,1,3", "1,2,4", "2,1,4"]
