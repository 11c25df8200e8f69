"""Graphical fair-division instances, allocations, fairness predicates and welfare.

An instance is a simple graph whose vertices are agents and whose edges are
items.  Each edge is valued by its two endpoints only; every other agent
values it at 0.  Valuations are additive and integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class InputError(ValueError):
    """Malformed or out-of-range input."""


class PreconditionError(ValueError):
    """An operation was called on an input outside its guarantee."""


class CapacityError(RuntimeError):
    """An exhaustive search would exceed its configured state budget."""


class Edge(NamedTuple):
    a: int
    b: int
    value_a: int
    value_b: int

    def value_for(self, agent: int) -> int:
        if agent == self.a:
            return self.value_a
        if agent == self.b:
            return self.value_b
        return 0

    def other(self, agent: int) -> int:
        return self.b if agent == self.a else self.a


@dataclass(frozen=True)
class GraphicalInstance:
    n_agents: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple(Edge(*map(int, e)) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n_agents < 0:
            raise InputError(f"negative agent count {self.n_agents}")
        seen = set()
        for idx, e in enumerate(edges):
            for v in (e.a, e.b):
                if not 0 <= v < self.n_agents:
                    raise InputError(f"edge {idx}: agent {v} out of range 0..{self.n_agents - 1}")
            if e.a == e.b:
                raise InputError(f"edge {idx}: self-loop on agent {e.a}")
            if e.value_a < 0 or e.value_b < 0:
                raise InputError(f"edge {idx}: negative utility")
            key = frozenset((e.a, e.b))
            if key in seen:
                raise InputError(f"edge {idx}: duplicate edge between {e.a} and {e.b}")
            seen.add(key)

    @classmethod
    def from_edges(cls, n_agents: int, edges: Iterable[Sequence[int]]) -> "GraphicalInstance":
        return cls(n_agents, tuple(Edge(*e) for e in edges))

    @property
    def n_items(self) -> int:
        return len(self.edges)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Item indices incident on each agent, in item order."""
        inc = [[] for _ in range(self.n_agents)]
        for idx, e in enumerate(self.edges):
            inc[e.a].append(idx)
            inc[e.b].append(idx)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def distinct_utilities(self) -> frozenset[int]:
        vals = {0}
        for e in self.edges:
            vals.update((e.value_a, e.value_b))
        return frozenset(vals)

    @cached_property
    def _vmax(self) -> tuple[int, ...]:
        return tuple(
            max((self.edges[g].value_for(i) for g in self.incident[i]), default=0)
            for i in range(self.n_agents)
        )

    def value(self, agent: int, item: int) -> int:
        return self.edges[item].value_for(agent)

    def is_binary(self) -> bool:
        return self.distinct_utilities <= {0, 1}

    def _check_agent(self, agent: int) -> None:
        if not 0 <= agent < self.n_agents:
            raise InputError(f"agent {agent} out of range 0..{self.n_agents - 1}")

    def _check_item(self, item: int) -> None:
        if not 0 <= item < self.n_items:
            raise InputError(f"item {item} out of range 0..{self.n_items - 1}")


@dataclass(frozen=True)
class Allocation:
    """Complete allocation, ``owner[item] = agent``."""

    owner: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "owner", tuple(self.owner))

    def bundles(self, n_agents: int) -> list[list[int]]:
        out = [[] for _ in range(n_agents)]
        for item, agent in enumerate(self.owner):
            out[agent].append(item)
        return out

    def reassign(self, item: int, agent: int) -> "Allocation":
        owner = list(self.owner)
        owner[item] = agent
        return Allocation(tuple(owner))


class WelfareReport(NamedTuple):
    utilitarian: int
    egalitarian: int
    nash_product: int
    nash_positive_support: int


def check_allocation(instance: GraphicalInstance, allocation: Allocation) -> None:
    if len(allocation.owner) != instance.n_items:
        raise InputError(
            f"allocation covers {len(allocation.owner)} items, instance has {instance.n_items}"
        )
    for item, agent in enumerate(allocation.owner):
        if agent is None:
            raise InputError(f"item {item} is unallocated")
        if not 0 <= agent < instance.n_agents:
            raise InputError(f"item {item} assigned to out-of-range agent {agent}")


def bundle_utility(instance: GraphicalInstance, agent: int, bundle: Iterable[int]) -> int:
    instance._check_agent(agent)
    total = 0
    for item in bundle:
        instance._check_item(item)
        total += instance.edges[item].value_for(agent)
    return total


def v_max(instance: GraphicalInstance, agent: int) -> int:
    instance._check_agent(agent)
    return instance._vmax[agent]


def agent_utilities(instance: GraphicalInstance, allocation: Allocation) -> list[int]:
    check_allocation(instance, allocation)
    util = [0] * instance.n_agents
    for item, agent in enumerate(allocation.owner):
        util[agent] += instance.edges[item].value_for(agent)
    return util


def _view_matrix(instance: GraphicalInstance, allocation: Allocation) -> list[list[int]]:
    # view[i][j] = u_i(bundle of j); only endpoints contribute
    n = instance.n_agents
    view = [[0] * n for _ in range(n)]
    for item, j in enumerate(allocation.owner):
        e = instance.edges[item]
        view[e.a][j] += e.value_a
        view[e.b][j] += e.value_b
    return view


def is_envy_free(instance: GraphicalInstance, allocation: Allocation) -> bool:
    check_allocation(instance, allocation)
    view = _view_matrix(instance, allocation)
    return all(view[i][i] >= max(view[i]) for i in range(instance.n_agents))


def is_efx(instance: GraphicalInstance, allocation: Allocation) -> bool:
    """EFX with the quantifier over every item of the envied bundle, zero-valued ones included."""
    check_allocation(instance, allocation)
    view = _view_matrix(instance, allocation)
    bundles = allocation.bundles(instance.n_agents)
    for i in range(instance.n_agents):
        own = view[i][i]
        for j, bundle in enumerate(bundles):
            if j == i or view[i][j] <= own:
                continue
            cheapest = min(instance.edges[g].value_for(i) for g in bundle)
            if view[i][j] - cheapest > own:
                return False
    return True


def is_orientation(instance: GraphicalInstance, allocation: Allocation) -> bool:
    check_allocation(instance, allocation)
    return all(
        agent in (instance.edges[item].a, instance.edges[item].b)
        for item, agent in enumerate(allocation.owner)
    )


def is_non_wasteful(instance: GraphicalInstance, allocation: Allocation) -> bool:
    # 0/0 edges are exempt: nobody can hold them non-wastefully
    check_allocation(instance, allocation)
    for item, agent in enumerate(allocation.owner):
        e = instance.edges[item]
        if (e.value_a or e.value_b) and e.value_for(agent) == 0:
            return False
    return True


def welfare_of_utilities(util: Sequence[int]) -> WelfareReport:
    return WelfareReport(
        utilitarian=sum(util),
        egalitarian=min(util, default=0),
        nash_product=math.prod(util),
        nash_positive_support=sum(1 for u in util if u > 0),
    )


def welfare(instance: GraphicalInstance, allocation: Allocation) -> WelfareReport:
    return welfare_of_utilities(agent_utilities(instance, allocation))


def max_welfare_bound(instance: GraphicalInstance) -> int:
    """Utilitarian optimum: each item to an endpoint valuing it most."""
    return sum(max(e.value_a, e.value_b) for e in instance.edges)
