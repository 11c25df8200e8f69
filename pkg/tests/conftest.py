import itertools

import pytest
from hypothesis import strategies as st

from graphfair.core import Allocation, GraphicalInstance, agent_utilities, is_efx, is_envy_free


def make(n, edges):
    return GraphicalInstance.from_edges(n, edges)


@pytest.fixture
def star3():
    return make(4, [(0, 1, 3, 1), (0, 2, 3, 1), (0, 3, 3, 1)])


@pytest.fixture
def path3():
    return make(3, [(0, 1, 1, 1), (1, 2, 1, 1)])


@pytest.fixture
def triangle():
    return make(3, [(0, 1, 1, 1), (1, 2, 1, 1), (2, 0, 1, 1)])


@pytest.fixture
def single_sym():
    return make(2, [(0, 1, 1, 1)])


@pytest.fixture
def single_asym():
    return make(2, [(0, 1, 1, 0)])


@pytest.fixture
def c4():
    return make(4, [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (3, 0, 1, 1)])


# --- naive ground truth: plain product enumeration, no pruning -------------


def all_allocations(inst):
    for owner in itertools.product(range(inst.n_agents), repeat=inst.n_items):
        yield Allocation(owner)


def all_orientations(inst):
    for owner in itertools.product(*[sorted((e.a, e.b)) for e in inst.edges]):
        yield Allocation(owner)


def naive_exists(inst, fairness, space="allocations"):
    gen = all_allocations(inst) if space == "allocations" else all_orientations(inst)
    check = is_envy_free if fairness == "ef" else is_efx
    return next((a for a in gen if check(inst, a)), None)


def nash_key(util):
    pos = [u for u in util if u > 0]
    prod = 1
    for u in pos:
        prod *= u
    return (len(pos), prod)


def naive_max(inst, welfare, constraint=None, space="allocations"):
    gen = all_allocations(inst) if space == "allocations" else all_orientations(inst)
    check = {None: None, "ef": is_envy_free, "efx": is_efx}[constraint]
    best = None
    for a in gen:
        if check and not check(inst, a):
            continue
        util = agent_utilities(inst, a)
        key = {"util": sum(util), "egal": min(util, default=0), "nash": nash_key(util)}[welfare]
        if best is None or key > best[0]:
            best = (key, a, util)
    return best


# --- hypothesis strategies ---------------------------------------------------


@st.composite
def instances(draw, max_agents=4, max_items=5, values=(0, 1, 2, 3)):
    n = draw(st.integers(1, max_agents))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(max_items, len(pairs)))) if pairs else []
    edges = []
    for a, b in chosen:
        if draw(st.booleans()):
            a, b = b, a
        edges.append((a, b, draw(st.sampled_from(values)), draw(st.sampled_from(values))))
    return GraphicalInstance.from_edges(n, edges)


@st.composite
def instance_and_allocation(draw, **kw):
    inst = draw(instances(**kw))
    owner = tuple(draw(st.integers(0, inst.n_agents - 1)) for _ in range(inst.n_items))
    return inst, Allocation(owner)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
