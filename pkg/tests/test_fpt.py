import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphfair.core import InputError, is_envy_free
from graphfair.fpt import (
    VertexCoverDecomposition,
    build_ilp,
    classify_types,
    cover_utilities,
    good_orientations,
    lift,
    min_vertex_cover,
    solve_ef_fpt,
    type_count_bound,
)
from graphfair.ilp import IlpModel, ilp_feasible

from conftest import instances, make, naive_exists


def brute_force_cover_size(inst):
    for k in range(inst.n_agents + 1):
        for c in itertools.combinations(range(inst.n_agents), k):
            s = set(c)
            if all(e.a in s or e.b in s for e in inst.edges):
                return k
    raise AssertionError


def test_cover_examples(star3, c4, triangle):
    assert min_vertex_cover(star3) == VertexCoverDecomposition((0,), (1, 2, 3))
    assert min_vertex_cover(c4).cover == (0, 2)
    assert min_vertex_cover(triangle).k == 2


@settings(max_examples=150, deadline=None)
@given(instances(max_agents=6, max_items=8))
def test_cover_is_minimum(inst):
    dec = min_vertex_cover(inst)
    cover = set(dec.cover)
    assert all(e.a in cover or e.b in cover for e in inst.edges)
    assert dec.k == brute_force_cover_size(inst)
    assert sorted(dec.cover + dec.independent) == list(range(inst.n_agents))


def test_types_of_star(star3):
    types = classify_types(star3, min_vertex_cover(star3))
    assert len(types) == 1
    (tc,) = types
    assert tc.neighborhood == (0,) and tc.signature == ((1, 3),) and tc.n_T == 3


def test_types_split_on_values():
    inst = make(4, [(0, 1, 3, 1), (0, 2, 3, 1), (0, 3, 2, 1)])
    types = classify_types(inst, VertexCoverDecomposition((0,), (1, 2, 3)))
    assert sorted(tc.members for tc in types) == [(1, 2), (3,)]


def test_bad_decomposition_rejected(path3):
    with pytest.raises(InputError):
        classify_types(path3, VertexCoverDecomposition((0,), (1, 2)))
    with pytest.raises(InputError):
        classify_types(path3, VertexCoverDecomposition((1,), (1, 2)))


def test_good_patterns():
    inst = make(3, [(2, 0, 2, 5), (2, 1, 1, 1)])
    (tc,) = classify_types(inst, VertexCoverDecomposition((0, 1), (2,)))
    vmax_pats = good_orientations(inst, tc, "vmax")
    # the member values its edges 2 and 1, so it must keep the 2-edge
    assert {p.toward_vertex for p in vmax_pats} == {(True, True), (True, False)}
    top = good_orientations(inst, tc, "highest-edge")
    assert {p.toward_vertex for p in top} == {(True, True), (True, False)}
    p = next(p for p in vmax_pats if p.toward_vertex == (True, False))
    assert p.vertex_utility == 2 and p.u(0) == 0 and p.u(1) == 1
    with pytest.raises(InputError):
        good_orientations(inst, tc, "bogus")


def test_rules_differ_when_small_edges_add_up():
    inst = make(4, [(3, 0, 2, 1), (3, 1, 1, 1), (3, 2, 1, 1)])
    (tc,) = classify_types(inst, VertexCoverDecomposition((0, 1, 2), (3,)))
    loose = {p.toward_vertex for p in good_orientations(inst, tc, "vmax")}
    tight = {p.toward_vertex for p in good_orientations(inst, tc, "highest-edge")}
    assert tight < loose
    assert (False, True, True) in loose - tight


def test_ilp_shape(star3):
    dec = min_vertex_cover(star3)
    fm = build_ilp(star3, dec, classify_types(star3, dec))
    labels = [c.label for c in fm.ilp.constraints]
    assert labels.count("type-count") == 1 and labels.count("cover-vmax") == 1 and "all-edges" not in labels
    # type bound: one cover vertex, values {0, 1, 3}
    assert len(fm.types) <= type_count_bound(dec.k, len(star3.distinct_utilities))


def test_star_has_no_ef_orientation(star3):
    assert solve_ef_fpt(star3) is None


def test_distinct_utility_cap():
    inst = make(3, [(0, 1, 1, 2), (1, 2, 3, 4)])
    with pytest.raises(InputError, match="cap of 3"):
        solve_ef_fpt(inst, max_distinct=3)
    solve_ef_fpt(inst, max_distinct=5)


def test_ilp_solver_on_toy_models():
    m = IlpModel()
    x, y = m.add_var("x", 0, 3), m.add_var("y", 0, 3)
    m.add_constraint([(x, 2), (y, 3)], "==", 7)
    assert ilp_feasible(m) == {"x": 2, "y": 1}
    m.add_constraint([(x, 1)], "<=", 1)
    assert ilp_feasible(m) is None


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=3),
    st.lists(st.sampled_from(["==", ">=", "<="]), min_size=3, max_size=3),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
)
def test_ilp_solver_matches_enumeration(rows, senses, rhs):
    m = IlpModel()
    names = [m.add_var(v, 0, 2) for v in "abc"]
    for row, sense, r in zip(rows, senses, rhs):
        m.add_constraint(list(zip(names, row)), sense, r)
    exists = any(
        m.is_feasible_point(dict(zip(names, point))) for point in itertools.product(range(3), repeat=3)
    )
    got = ilp_feasible(m)
    assert (got is not None) == exists
    if got is not None:
        assert m.is_feasible_point(got)


@settings(max_examples=200, deadline=None)
@given(instances(max_agents=5, max_items=6, values=(0, 1, 3)))
def test_fpt_matches_search(inst):
    alloc = solve_ef_fpt(inst)
    assert (alloc is not None) == (naive_exists(inst, "ef", "orientations") is not None)
    if alloc is not None:
        assert is_envy_free(inst, alloc)


@settings(max_examples=100, deadline=None)
@given(instances(max_agents=5, max_items=6, values=(0, 1, 2)))
def test_highest_edge_rule_is_sound(inst):
    # the narrower rule may miss solutions but never returns a wrong one
    alloc = solve_ef_fpt(inst, rule="highest-edge")
    if alloc is not None:
        assert is_envy_free(inst, alloc)


@settings(max_examples=100, deadline=None)
@given(instances(max_agents=5, max_items=6, values=(0, 1, 2)))
def test_lift_reports_cover_utilities(inst):
    dec = min_vertex_cover(inst)
    fm = build_ilp(inst, dec, classify_types(inst, dec))
    point = ilp_feasible(fm.ilp)
    if point is None:
        return
    alloc = lift(inst, fm, point)
    held = cover_utilities(inst, fm, point)
    for i in dec.cover:
        got = sum(inst.edges[g].value_for(i) for g, k in enumerate(alloc.owner) if k == i)
        assert got == held[i]
