import pytest
from hypothesis import given

from graphfair.core import (
    Allocation,
    GraphicalInstance,
    InputError,
    agent_utilities,
    bundle_utility,
    is_efx,
    is_envy_free,
    is_non_wasteful,
    is_orientation,
    max_welfare_bound,
    v_max,
    welfare,
)

from conftest import instance_and_allocation, make


def test_bundle_utility_examples(star3, path3, triangle):
    assert bundle_utility(star3, 0, [0, 1, 2]) == 9
    assert bundle_utility(path3, 0, [1]) == 0
    assert bundle_utility(triangle, 0, [0, 2]) == 2


def test_bundle_utility_range_errors(path3):
    with pytest.raises(InputError):
        bundle_utility(path3, 3, [0])
    with pytest.raises(InputError):
        bundle_utility(path3, 0, [2])


def test_v_max(star3):
    assert v_max(star3, 0) == 3
    assert v_max(star3, 1) == 1
    assert v_max(make(3, [(0, 1, 1, 1)]), 2) == 0


def test_instance_invariants():
    with pytest.raises(InputError, match="self-loop"):
        make(2, [(0, 0, 1, 1)])
    with pytest.raises(InputError, match="duplicate"):
        make(2, [(0, 1, 1, 1), (1, 0, 2, 2)])
    with pytest.raises(InputError, match="negative"):
        make(2, [(0, 1, -1, 1)])
    with pytest.raises(InputError, match="out of range"):
        make(2, [(0, 2, 1, 1)])
    assert make(3, [(0, 1, 2, 5)]).distinct_utilities == {0, 2, 5}


def test_envy_free_examples(single_sym, single_asym, triangle):
    assert not is_envy_free(single_sym, Allocation((0,)))
    assert not is_envy_free(single_sym, Allocation((1,)))
    assert is_envy_free(single_asym, Allocation((0,)))
    assert is_envy_free(triangle, Allocation((0, 1, 2)))


def test_incomplete_allocation_rejected(triangle):
    with pytest.raises(InputError):
        is_envy_free(triangle, Allocation((0, 1)))
    with pytest.raises(InputError):
        is_efx(triangle, Allocation((0, None, 1)))
    with pytest.raises(InputError):
        welfare(triangle, Allocation((0, 1, 7)))


def test_efx_examples(single_sym, star3, path3):
    assert is_efx(single_sym, Allocation((0,)))
    assert not is_efx(star3, Allocation((0, 0, 0)))
    assert is_efx(path3, Allocation((0, 2)))


def test_efx_counts_zero_valued_items():
    # agent 1 envies agent 0; dropping the item agent 1 values 0 leaves the envy
    inst = make(3, [(0, 1, 1, 1), (0, 2, 1, 0)])
    assert not is_efx(inst, Allocation((0, 0)))


def test_welfare_examples(star3, triangle, path3):
    assert welfare(star3, Allocation((0, 0, 0))).utilitarian == 9
    w = welfare(triangle, Allocation((0, 1, 2)))
    assert (w.egalitarian, w.nash_product, w.nash_positive_support) == (1, 1, 3)
    assert welfare(path3, Allocation((0, 1))).nash_product == 0


def test_orientation_and_waste(path3):
    assert is_orientation(path3, Allocation((0, 2)))
    assert not is_orientation(path3, Allocation((2, 2)))
    zero = make(3, [(0, 1, 0, 0), (1, 2, 1, 0)])
    assert is_non_wasteful(zero, Allocation((2, 1)))  # 0/0 edge may go anywhere
    assert not is_non_wasteful(zero, Allocation((2, 2)))


@given(instance_and_allocation())
def test_ef_implies_efx(case):
    inst, alloc = case
    if is_envy_free(inst, alloc):
        assert is_efx(inst, alloc)


@given(instance_and_allocation())
def test_non_adjacent_agents_value_nothing(case):
    inst, alloc = case
    bundles = alloc.bundles(inst.n_agents)
    neighbours = {i: {inst.edges[g].other(i) for g in inst.incident[i]} for i in range(inst.n_agents)}
    if is_orientation(inst, alloc):
        for i in range(inst.n_agents):
            for j in range(inst.n_agents):
                if j != i and j not in neighbours[i]:
                    assert bundle_utility(inst, i, bundles[j]) == 0


@given(instance_and_allocation())
def test_bundle_utility_additive(case):
    inst, alloc = case
    items = list(range(inst.n_items))
    half = len(items) // 2
    for i in range(inst.n_agents):
        assert bundle_utility(inst, i, items) == bundle_utility(inst, i, items[:half]) + bundle_utility(
            inst, i, items[half:]
        )


@given(instance_and_allocation())
def test_welfare_consistency(case):
    inst, alloc = case
    util = agent_utilities(inst, alloc)
    w = welfare(inst, alloc)
    assert w.utilitarian == sum(util)
    assert (w.nash_product == 0) == any(u == 0 for u in util)
    if is_non_wasteful(inst, alloc):
        assert w.utilitarian == sum(inst.edges[g].value_for(k) for g, k in enumerate(alloc.owner))


@given(instance_and_allocation(values=(0, 1)))
def test_binary_non_wasteful_welfare_counts_valued_edges(case):
    inst, alloc = case
    if is_non_wasteful(inst, alloc):
        valued = sum(1 for e in inst.edges if e.value_a or e.value_b)
        assert welfare(inst, alloc).utilitarian == valued == max_welfare_bound(inst)


def test_empty_instance():
    inst = GraphicalInstance(0, ())
    assert is_envy_free(inst, Allocation(()))
    assert welfare(inst, Allocation(())).utilitarian == 0
