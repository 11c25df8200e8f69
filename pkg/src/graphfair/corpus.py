"""Test corpora shared by the acceptance suite and the experiment scripts."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .core import GraphicalInstance
from .generators import gen_random, random_mcis
from .reductions import MCISInstance


def _canonical(n, edges):
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or form < best:
            best = form
    return best


def _connected(n, edges):
    if n == 0:
        return False
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {0}, [0]
    while stack:
        for y in adj[stack.pop()] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == n


def small_connected_graphs(max_vertices: int = 5, max_edges: int = 5) -> list[tuple[int, tuple]]:
    """Connected simple graphs up to isomorphism, as ``(n, edges)``, sorted."""
    out = set()
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for m in range(0, min(max_edges, len(pairs)) + 1):
            for edges in itertools.combinations(pairs, m):
                if _connected(n, edges):
                    out.add((n, _canonical(n, edges)))
    return sorted(out)


def labelings(n: int, edges, values=(0, 1)) -> Iterator[GraphicalInstance]:
    """Every assignment of endpoint values from ``values`` to the edges."""
    for labels in itertools.product(itertools.product(values, repeat=2), repeat=len(edges)):
        yield GraphicalInstance.from_edges(n, [(u, v, x, y) for (u, v), (x, y) in zip(edges, labels)])


def exhaustive_binary_corpus(max_vertices: int = 5, max_edges: int = 5) -> Iterator[GraphicalInstance]:
    for n, edges in small_connected_graphs(max_vertices, max_edges):
        yield from labelings(n, edges)


def random_corpus(
    count: int,
    seed: int,
    min_agents: int,
    max_agents: int,
    value_sets,
    max_items: int,
    probabilities=(0.3, 0.5, 0.7),
) -> list[GraphicalInstance]:
    """``count`` seeded random instances with at most ``max_items`` edges.

    Draw ``i`` uses generator seed ``seed * 100003 + i``; draws above the item
    cap are skipped, so the corpus is a deterministic function of the arguments.
    """
    picker = random.Random(seed)
    out = []
    i = 0
    while len(out) < count:
        n = picker.randint(min_agents, max_agents)
        p = picker.choice(probabilities)
        values = picker.choice(value_sets)
        inst = gen_random(n, p, values, seed * 100003 + i)
        i += 1
        if inst.n_items <= max_items:
            out.append(inst)
    return out


def c4_mcis() -> MCISInstance:
    """Cycle 0-1-2-3-0, classes {0,1} and {2,3}: {0,2} is colorful and independent."""
    return MCISInstance(((0, 1), (2, 3)), ((0, 1), (1, 2), (2, 3), (0, 3)))


def k22_mcis() -> MCISInstance:
    """K_{2,2} with the two sides as classes: every colorful pair is adjacent."""
    return MCISInstance(((0, 1), (2, 3)), ((0, 2), (0, 3), (1, 2), (1, 3)))


# (n, d, k) shapes whose gadgets stay inside the default all-allocations budget
SMALL_MCIS_SHAPES = ((3, 2, 1), (3, 2, 2), (3, 2, 3), (4, 2, 1), (4, 2, 2), (4, 2, 3))


def random_mcis_corpus(count: int, seed: int, shapes=SMALL_MCIS_SHAPES) -> list[MCISInstance]:
    picker = random.Random(seed)
    out = []
    for i in range(count):
        n, d, k = picker.choice(shapes)
        out.append(random_mcis(n, d, k, seed * 7919 + i))
    return out
