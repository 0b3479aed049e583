from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import lie_oracle as oracle
from cstar.errors import InadmissibleType, InvalidNode
from cstar.rootsys import (DynkinType, build_root_system, grading_by_node, long_roots,
                           short_grading_nodes, weyl_orbit, weyl_orbit_words, apply_word)

TYPES = ([("A", n) for n in range(1, 9)] + [("B", n) for n in range(2, 9)]
         + [("C", n) for n in range(2, 9)] + [("D", n) for n in range(4, 9)]
         + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)])


@pytest.mark.parametrize("letter,n", TYPES)
def test_roots_against_oracle(letter, n):
    rs = build_root_system(DynkinType(letter, n))
    a = oracle.cartan(letter, n)
    assert [list(r) for r in rs.cartan] == a
    assert len(rs.roots) == oracle.root_count(letter, n)
    assert sorted(rs.coeff(r) for r in rs.positive_roots) == sorted(oracle.positive_roots(a))
    assert len(long_roots(rs)) == oracle.long_root_count(a)
    assert rs.weyl_order == oracle.weyl_order(letter, n)


def test_classical_counts():
    assert len(build_root_system(DynkinType("A", 2)).roots) == 6
    assert len(long_roots(build_root_system(DynkinType("A", 2)))) == 6
    assert len(build_root_system(DynkinType("C", 3)).roots) == 18
    assert len(long_roots(build_root_system(DynkinType("C", 3)))) == 6
    assert len(long_roots(build_root_system(DynkinType("B", 3)))) == 12
    assert len(long_roots(build_root_system(DynkinType("G", 2)))) == 6
    assert len(long_roots(build_root_system(DynkinType("E", 7)))) == 126
    assert len(long_roots(build_root_system(DynkinType("E", 6)))) == 72


def test_admissibility():
    for bad in [("E", 5), ("E", 9), ("F", 3), ("G", 3), ("D", 2), ("A", 0), ("H", 3)]:
        with pytest.raises(InadmissibleType):
            DynkinType(*bad)
    assert DynkinType.parse("e_7") == DynkinType("E", 7)
    with pytest.raises(InadmissibleType):
        DynkinType.parse("seven")


@pytest.mark.parametrize("letter,n", TYPES)
def test_fundamental_weights_are_dual_to_coroots(letter, n):
    rs = build_root_system(DynkinType(letter, n))
    for j, lam in enumerate(rs.fundamental_weights):
        for i, c in enumerate(rs.simple_coroots):
            assert rs.form(lam, c) == (1 if i == j else 0)
    for j, w in enumerate(rs.fundamental_coweights):
        for i, a in enumerate(rs.simple):
            assert rs.form(a, w) == (1 if i == j else 0)


def test_roots_closed_under_reflections():
    rs = build_root_system(DynkinType("F", 4))
    roots = set(rs.roots)
    for r in rs.roots:
        for i in rs.type.nodes:
            assert rs.reflect(i, r) in roots


def test_orbit_sizes():
    c3 = build_root_system(DynkinType("C", 3))
    assert len(weyl_orbit(c3, c3.fundamental_weights[2])) == 8
    e7 = build_root_system(DynkinType("E", 7))
    assert len(weyl_orbit(e7, e7.fundamental_weights[6])) == 56
    assert weyl_orbit(e7, (0,) * 7) == ((0,) * 7,)


@pytest.mark.parametrize("letter,n", [("A", 5), ("B", 4), ("C", 4), ("D", 5), ("E", 6),
                                      ("F", 4), ("G", 2), ("E", 7)])
def test_orbit_sizes_match_label_oracle(letter, n):
    rs = build_root_system(DynkinType(letter, n))
    a = oracle.cartan(letter, n)
    for j in range(n):
        labels = [1 if k == j else 0 for k in range(n)]
        assert len(weyl_orbit(rs, rs.fundamental_weights[j])) == oracle.orbit_size(a, labels)


def test_orbit_size_is_index_of_stabilizer():
    from cstar.rootsys import weyl_order_of
    rs = build_root_system(DynkinType("D", 6))
    for j in rs.type.nodes:
        levi = [rs.coeff(r) for r in rs.positive_roots_avoiding([j])]
        assert len(weyl_orbit(rs, rs.fundamental_weights[j - 1])) * weyl_order_of(levi) \
            == rs.weyl_order


def test_orbit_words_reach_their_points():
    rs = build_root_system(DynkinType("B", 3))
    lam = rs.fundamental_weights[1]
    for x, word in weyl_orbit_words(rs, lam).items():
        assert apply_word(rs, word, lam) == x


def test_short_grading_nodes():
    assert short_grading_nodes(DynkinType("E", 6)) == (1, 6)
    assert short_grading_nodes(DynkinType("E", 7)) == (7,)
    assert short_grading_nodes(DynkinType("F", 4)) == ()
    assert short_grading_nodes(DynkinType("G", 2)) == ()
    assert short_grading_nodes(DynkinType("E", 8)) == ()
    # every node of A_m gives a short grading
    assert short_grading_nodes(DynkinType("A", 6)) == tuple(range(1, 7))


def test_gradings():
    b4 = build_root_system(DynkinType("B", 4))
    assert set(grading_by_node(b4, 1).values().values()) == {-1, 0, 1}
    g2 = build_root_system(DynkinType("G", 2))
    for j in (1, 2):
        assert grading_by_node(g2, j).depth >= 2
    with pytest.raises(InvalidNode):
        grading_by_node(g2, 3)
    with pytest.raises(ValueError):
        grading_by_node(g2, 1, "sideways")


@given(st.sampled_from(TYPES), st.data())
def test_gradings_are_linear(t, data):
    rs = build_root_system(DynkinType(*t))
    j = data.draw(st.sampled_from(rs.type.nodes))
    conv = data.draw(st.sampled_from(["coefficient", "coroot"]))
    g = grading_by_node(rs, j, conv)
    roots = set(rs.roots)
    a = data.draw(st.sampled_from(rs.roots))
    b = data.draw(st.sampled_from(rs.roots))
    assert g(tuple(-x for x in a)) == -g(a)
    s = tuple(x + y for x, y in zip(a, b))
    if s in roots:
        assert g(s) == g(a) + g(b)
    if conv == "coefficient":
        assert g(a) == rs.coeff(a)[j - 1]
