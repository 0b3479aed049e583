from __future__ import annotations

import pytest

from cstar import exactlat as el
from cstar.cone import Cone, extreme_rays, intersection
from cstar.errors import ConeNotInFan, InvalidFan, NotCompactCurve, TorusFactor
from cstar.fan import (Fan, TDivisor, cartier_data, class_group, complete_curves,
                       curve_degree, is_cartier, isomorphism_by_labels, refinement_report,
                       refines, star_quotient)

import properties as P


def p2():
    return Fan(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [2, 0]],
               labels=["x", "y", "z"])


def blowup_p2():
    return Fan(2, [(1, 0), (1, 1), (0, 1), (-1, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]])


# -- cones --------------------------------------------------------------------

def test_extreme_rays_of_quadrant():
    assert sorted(extreme_rays([(1, 0), (0, 1)], 2)) == [(0, 1), (1, 0)]


def test_cone_redundant_generators():
    c = Cone(2, [(1, 0), (1, 1), (0, 1), (2, 2)])
    assert sorted(c.rays) == [(0, 1), (1, 0)]
    assert c.is_simplicial and c.is_smooth()


def test_cone_facets_and_membership():
    c = Cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    assert c.dim == 3
    assert not c.is_simplicial
    assert len(c.facets) == 4
    assert c.contains((1, 1, 0))
    assert not c.contains((0, 0, -1))
    assert c.contains_relint(c.relint_point())


def test_multiplicity():
    assert Cone(2, [(1, 0), (1, 2)]).multiplicity() == 2
    assert not Cone(2, [(1, 0), (1, 2)]).is_smooth()


def test_faces_of_square_cone():
    c = Cone(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    dims = sorted(c.subcone(f).dim if f else 0 for f in c.faces)
    # apex, 4 rays, 4 two-dimensional faces, the cone itself
    assert dims == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]


def test_intersection_of_cones():
    a = Cone(2, [(1, 0), (1, 2)])
    b = Cone(2, [(1, 1), (0, 1)])
    assert sorted(intersection(a, b).rays) == [(1, 1), (1, 2)]


# -- fans ---------------------------------------------------------------------

def test_p2_is_valid_smooth_complete():
    f = p2()
    assert f.is_smooth
    assert f.support_contains((5, -7))
    assert len(complete_curves(f)) == 3


def test_overlap_is_rejected():
    with pytest.raises(InvalidFan):
        Fan(2, [(1, 0), (0, 1), (1, 1)], [[0, 1], [1, 2]])


def test_non_primitive_and_repeated_rays():
    f = Fan(2, [(2, 0), (0, 3)], [[0, 1]])
    assert f.rays == ((1, 0), (0, 1))
    with pytest.raises(InvalidFan):
        Fan(2, [(1, 0), (2, 0)], [[0], [1]])


def test_json_round_trip():
    f = p2()
    g = Fan.from_json(f.to_json())
    assert g.same_as(f) and g.labels == f.labels


def test_cone_not_in_fan():
    with pytest.raises(ConeNotInFan):
        p2().key_of([0, 1, 2])


def test_refinement_of_blowup():
    assert refines(blowup_p2(), p2())
    rep = refinement_report(p2(), blowup_p2())
    assert not rep.ok


def test_refinement_witness_lies_outside_support():
    partial = Fan(2, [(1, 0), (1, 1), (0, 1)], [[0, 1]])
    rep = refinement_report(partial, Fan(2, [(1, 0), (0, 1)], [[0, 1]]))
    assert not rep.ok
    cone = Cone(2, [(1, 0), (0, 1)])
    assert cone.contains(rep.witness) and not partial.support_contains(rep.witness)


def test_star_of_a_ray_of_p2_is_p1():
    f = p2()
    s = star_quotient(f, [0])
    assert s.rank == 1
    assert sorted(s.rays) == [(-1,), (1,)]


def test_p2_curve_degrees():
    f = p2()
    for w in complete_curves(f):
        for i in range(3):
            assert curve_degree(f, w, TDivisor.prime(f, i)) == 1


def test_blowup_exceptional_curve():
    f = blowup_p2()
    e = TDivisor.prime(f, 1)
    assert curve_degree(f, [1], e) == -1


def test_curve_degree_needs_complete_curve():
    f = Fan(2, [(1, 0), (0, 1)], [[0, 1]])
    with pytest.raises(NotCompactCurve):
        curve_degree(f, [0], TDivisor.prime(f, 0))


def test_cartier_data_recovers_m():
    f = p2()
    m = (2, -3)
    cd = cartier_data(f, TDivisor.principal(f, m))
    assert all(cd[c] == (-2, 3) for c in f.max_cones)


def test_non_cartier_divisor():
    f = Fan(2, [(1, 0), (1, 2)], [[0, 1]])
    assert not is_cartier(f, TDivisor.prime(f, 0))
    assert is_cartier(f, 2 * TDivisor.prime(f, 0))


def test_class_groups():
    assert class_group(p2()).free_rank == 1
    assert class_group(blowup_p2()).free_rank == 2
    weighted = Fan(2, [(1, 0), (1, 2), (-1, -1)], [[0, 1], [1, 2], [2, 0]], validate=False)
    assert class_group(weighted).torsion == ()
    with pytest.raises(TorusFactor):
        class_group(Fan(2, [(1, 0)], [[0]]))


def test_class_group_torsion():
    # P^2 / (Z/3): rays (1,0),(0,1) and (-1,-1) in a lattice of index 3
    f = Fan(2, [(2, -1), (-1, 2), (-1, -1)], [[0, 1], [1, 2], [2, 0]])
    cg = class_group(f)
    assert cg.free_rank == 1 and cg.torsion == (3,)


def test_isomorphism_by_labels():
    f = p2()
    g = Fan(2, [(0, 1), (1, 0), (-1, -1)], [[0, 1], [1, 2], [2, 0]], labels=["x", "y", "z"])
    a = isomorphism_by_labels(f, g)
    assert a is not None and abs(el.det(a)) == 1
    h = Fan(2, [(1, 0), (0, 1), (-1, -2)], [[0, 1], [1, 2], [2, 0]], labels=["x", "y", "z"])
    assert isomorphism_by_labels(f, h) is None


# -- properties ---------------------------------------------------------------

def test_property_fan_validity():
    P.prop_fan_validity()


def test_property_refines_partial_order():
    P.prop_refines_partial_order()


def test_property_principal_divisors_have_degree_zero():
    P.prop_principal_degree_zero()
