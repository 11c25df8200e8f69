"""Multi-colored independent set (MCIS) gadgets and their desk-scale inverses.

Agent numbering in every reduced instance: the MCIS vertices keep their
indices 0..N-1, gadget agents follow class by class.  Item numbering: the MCIS
edges first (in input order), then the gadget edges class by class.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    Allocation,
    CapacityError,
    GraphicalInstance,
    InputError,
    PreconditionError,
    is_envy_free,
)

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class MCISInstance:
    classes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        classes = tuple(tuple(sorted(c)) for c in self.classes)
        edges = tuple(tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "edges", edges)
        if not classes or any(not c for c in classes):
            raise InputError("MCIS needs at least one class and no empty class")
        verts = [v for c in classes for v in c]
        if sorted(verts) != list(range(len(verts))):
            raise InputError("classes must partition the vertices 0..N-1")
        n = len(verts)
        seen = set()
        deg = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) has an unknown vertex")
            if u == v:
                raise InputError(f"self-loop on {u}")
            if (u, v) in seen:
                raise InputError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            deg[u] += 1
            deg[v] += 1
        if len(set(deg)) > 1:
            raise InputError(f"graph is not regular: degrees {sorted(set(deg))}")

    @property
    def n_vertices(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def degree(self) -> int:
        return 2 * len(self.edges) // self.n_vertices

    def class_of(self, v: int) -> int:
        return next(i for i, c in enumerate(self.classes) if v in c)

    def is_colorful_independent(self, chosen) -> bool:
        chosen = tuple(chosen)
        if sorted(self.class_of(v) for v in chosen) != list(range(self.k)):
            return False
        picked = set(chosen)
        return not any(u in picked and v in picked for u, v in self.edges)


def _require_degree(mcis: MCISInstance, least: int) -> int:
    d = mcis.degree
    if d < least:
        raise InputError(f"gadget needs a regular graph of degree >= {least}, got {d}")
    return d


def reduce_mcis_to_ef(mcis: MCISInstance) -> GraphicalInstance:
    """Symmetric {0,1,d} instance that has an EF allocation iff the MCIS is a yes.

    Original edges are worth 1 to both ends; class i gets a hub agent ``N + i``
    joined to each of its vertices by an edge worth d to both ends.
    """
    d = _require_degree(mcis, 1)
    n = mcis.n_vertices
    edges = [(u, v, 1, 1) for u, v in mcis.edges]
    for i, cls in enumerate(mcis.classes):
        edges += [(v, n + i, d, d) for v in cls]
    return GraphicalInstance.from_edges(n + mcis.k, edges)


def reduce_mcis_to_um_efx(mcis: MCISInstance, repaired: bool = False) -> GraphicalInstance:
    """UM+EFX gadget: class i gets a path ``w1 - w2 - w3 - w4`` (agents
    ``N+4i .. N+4i+3``) with edge values (0,1), (d,d), (d,0), and edges worth d
    to both ends from w2 to every vertex of the class.

    With the (d,d) middle edge a utilitarian optimum may hand it to w2, after
    which w2 envies nobody and the gadget stops forcing anything: K_{2,2} with
    its sides as classes has no colorful independent set, yet its gadget has a
    utilitarian-optimal EF allocation.  ``repaired=True`` values the middle
    edge (d, d+1) so that every utilitarian optimum gives it to w3; the
    equivalence with MCIS then holds (values become {0, 1, d, d+1}).
    """
    d = _require_degree(mcis, 2)
    n = mcis.n_vertices
    edges = [(u, v, 1, 1) for u, v in mcis.edges]
    for i, cls in enumerate(mcis.classes):
        w1, w2, w3, w4 = (n + 4 * i + j for j in range(4))
        edges += [(w1, w2, 0, 1), (w2, w3, d, d + 1 if repaired else d), (w3, w4, d, 0)]
        edges += [(v, w2, d, d) for v in cls]
    return GraphicalInstance.from_edges(n + 4 * mcis.k, edges)


def reduce_mcis_to_em_efx(mcis: MCISInstance) -> tuple[GraphicalInstance, int]:
    """The EF gadget paired with the egalitarian threshold d."""
    inst = reduce_mcis_to_ef(mcis)
    return inst, mcis.degree


def solve_mcis_bruteforce(mcis: MCISInstance, budget: int = DEFAULT_BUDGET) -> Optional[tuple[int, ...]]:
    """Lexicographically first colorful independent set, one vertex per class."""
    size = math.prod(len(c) for c in mcis.classes)
    if size > budget:
        raise CapacityError(f"MCIS search has {size} states, budget is {budget}")
    adjacent = set(mcis.edges)
    for pick in itertools.product(*mcis.classes):
        if all(tuple(sorted((u, v))) not in adjacent for u, v in itertools.combinations(pick, 2)):
            return pick
    return None


def ef_orientation_from_independent_set(mcis: MCISInstance, chosen) -> Allocation:
    """The forward-direction orientation on the EF gadget for a planted solution."""
    if not mcis.is_colorful_independent(chosen):
        raise PreconditionError(f"{tuple(chosen)} is not a colorful independent set")
    chosen = set(chosen)
    n = mcis.n_vertices
    owner = []
    for u, v in mcis.edges:
        owner.append(u if u in chosen else v if v in chosen else u)
    for i, cls in enumerate(mcis.classes):
        owner += [n + i if v in chosen else v for v in cls]
    return Allocation(tuple(owner))


def um_efx_allocation_from_independent_set(mcis: MCISInstance, chosen) -> Allocation:
    """The forward-direction allocation on the UM+EFX gadget for a planted solution."""
    if not mcis.is_colorful_independent(chosen):
        raise PreconditionError(f"{tuple(chosen)} is not a colorful independent set")
    chosen = set(chosen)
    n = mcis.n_vertices
    owner = []
    for u, v in mcis.edges:
        owner.append(u if u in chosen else v if v in chosen else u)
    for i, cls in enumerate(mcis.classes):
        w1, w2, w3, w4 = (n + 4 * i + j for j in range(4))
        owner += [w2, w3, w3]
        owner += [w2 if v in chosen else v for v in cls]
    return Allocation(tuple(owner))


def extract_independent_set(mcis: MCISInstance, allocation: Allocation) -> Optional[tuple[int, ...]]:
    """Read a colorful independent set off an EF allocation of the EF gadget.

    In each class some vertex misses its hub edge; being envy-free it must then
    hold all d of its original edges, which forces the picks to be pairwise
    non-adjacent.
    """
    inst = reduce_mcis_to_ef(mcis)
    if not is_envy_free(inst, allocation):
        raise PreconditionError("extract_independent_set requires an EF allocation of the gadget")
    d = mcis.degree
    n_orig = len(mcis.edges)
    unit = [0] * mcis.n_vertices
    for g, (u, v) in enumerate(mcis.edges):
        k = allocation.owner[g]
        if k in (u, v):
            unit[k] += 1
    picks = []
    g = n_orig
    for cls in mcis.classes:
        found = None
        for v in cls:
            if allocation.owner[g] != v and unit[v] >= d and found is None:
                found = v
            g += 1
        if found is None:
            return None
        picks.append(found)
    picks = tuple(picks)
    return picks if mcis.is_colorful_independent(picks) else None
