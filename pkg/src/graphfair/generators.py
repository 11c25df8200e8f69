"""Instance generators.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister), consumed
in a fixed documented order, so a seed pins the instance across versions.
"""

from __future__ import annotations

import random
from typing import Sequence

from .core import GraphicalInstance, InputError
from .reductions import MCISInstance


def gen_star(d: int) -> GraphicalInstance:
    """Star with centre 0 and leaves 1..d; the centre values each edge d, a leaf 1."""
    if d < 1:
        raise InputError(f"star needs d >= 1, got {d}")
    return GraphicalInstance.from_edges(d + 1, [(0, i, d, 1) for i in range(1, d + 1)])


def gen_random(n_agents: int, edge_probability: float, value_set: Sequence[int], seed: int) -> GraphicalInstance:
    """Erdos-Renyi graph with endpoint values drawn uniformly from ``value_set``.

    Pairs (a, b), a < b, are visited in lexicographic order; for each, one
    ``random()`` call decides inclusion (``< p``), then two ``choice()`` calls
    draw ``value_a`` and ``value_b``.
    """
    if n_agents < 1:
        raise InputError(f"need at least one agent, got {n_agents}")
    if not 0.0 <= edge_probability <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {edge_probability}")
    values = list(value_set)
    if not values or any(v < 0 for v in values):
        raise InputError("value set must be a non-empty list of nonnegative integers")
    rng = random.Random(seed)
    edges = []
    for a in range(n_agents):
        for b in range(a + 1, n_agents):
            if rng.random() < edge_probability:
                edges.append((a, b, rng.choice(values), rng.choice(values)))
    return GraphicalInstance.from_edges(n_agents, edges)


def random_regular_graph(n: int, d: int, rng: random.Random, tries: int = 1000) -> list[tuple[int, int]]:
    """Uniform pairing (configuration model) with rejection of loops and multi-edges."""
    if n * d % 2 or (d > 0 and d >= n):
        raise InputError(f"no simple {d}-regular graph on {n} vertices")
    for _ in range(tries):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        pairs = {tuple(sorted(stubs[i : i + 2])) for i in range(0, len(stubs), 2)}
        if len(pairs) == len(stubs) // 2 and all(u != v for u, v in pairs):
            return sorted(pairs)
    raise InputError(f"could not sample a simple {d}-regular graph on {n} vertices")


def random_mcis(n: int, d: int, k: int, seed: int) -> MCISInstance:
    """Random d-regular graph on n vertices split into k non-empty classes."""
    if not 1 <= k <= n:
        raise InputError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = random.Random(seed)
    edges = random_regular_graph(n, d, rng)
    order = list(range(n))
    rng.shuffle(order)
    classes = [[v] for v in order[:k]]
    for v in order[k:]:
        classes[rng.randrange(k)].append(v)
    return MCISInstance(tuple(tuple(c) for c in classes), tuple(edges))
