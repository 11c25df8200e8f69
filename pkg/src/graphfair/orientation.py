"""From EF allocations to EF orientations, and the v_max test for envy-freeness."""

from __future__ import annotations

from .core import (
    Allocation,
    GraphicalInstance,
    PreconditionError,
    agent_utilities,
    is_envy_free,
    is_non_wasteful,
    v_max,
)


def _endpoint_for(edge) -> int:
    # highest-valuing endpoint, lower index on ties
    if edge.value_a != edge.value_b:
        return edge.a if edge.value_a > edge.value_b else edge.b
    return min(edge.a, edge.b)


def to_orientation(instance: GraphicalInstance, allocation: Allocation) -> Allocation:
    """Move every wasted edge of an EF allocation to an endpoint that values it.

    No agent loses utility, and the result stays envy-free: an endpoint that
    now envies the new holder of its shared edge would already have envied
    the old one.  Edges nobody values stay put if held by an endpoint.
    """
    if not is_envy_free(instance, allocation):
        raise PreconditionError("to_orientation requires an envy-free allocation")
    owner = list(allocation.owner)
    for item, agent in enumerate(owner):
        e = instance.edges[item]
        if e.value_a == 0 and e.value_b == 0:
            if agent not in (e.a, e.b):
                owner[item] = min(e.a, e.b)
        elif e.value_for(agent) == 0:
            owner[item] = _endpoint_for(e)
    return Allocation(tuple(owner))


def ef_via_vmax(instance: GraphicalInstance, allocation: Allocation) -> bool:
    """Envy-freeness of a non-wasteful allocation: everyone gets at least v_max."""
    if not is_non_wasteful(instance, allocation):
        raise PreconditionError("ef_via_vmax requires a non-wasteful allocation")
    util = agent_utilities(instance, allocation)
    return all(util[i] >= v_max(instance, i) for i in range(instance.n_agents))
