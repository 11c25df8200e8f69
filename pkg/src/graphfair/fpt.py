"""EF orientations via an ILP whose size depends only on the vertex cover number.

Pipeline: exact minimum vertex cover S; the independent side I is grouped
into types (same neighbourhood in S, same edge values on both sides); for
each type every local orientation of its star that gives the centre at least
its v_max is a "good" pattern; an integer program counts how many members of
each type use each pattern, decides who gets the edges inside S, and asks
every cover agent to reach its v_max.  A feasible point lifts back to an EF
orientation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import Allocation, GraphicalInstance, InputError, is_envy_free, v_max
from .ilp import IlpModel, ilp_feasible

DEFAULT_MAX_DISTINCT = 8
GOOD_RULES = ("vmax", "highest-edge")


class VertexCoverDecomposition(NamedTuple):
    cover: tuple[int, ...]
    independent: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.cover)


@dataclass(frozen=True)
class TypeClass:
    neighborhood: tuple[int, ...]  # sorted cover agents adjacent to the members
    signature: tuple[tuple[int, int], ...]  # (member's value, cover agent's value) per neighbour
    members: tuple[int, ...]

    @property
    def n_T(self) -> int:
        return len(self.members)

    @property
    def vertex_vmax(self) -> int:
        return max((mine for mine, _ in self.signature), default=0)


@dataclass(frozen=True)
class OrientationPattern:
    toward_vertex: tuple[bool, ...]  # per neighbourhood position
    vertex_utility: int
    cover_utility: tuple[tuple[int, int], ...]  # (cover agent, u(i,T,o)) for every neighbour

    def u(self, agent: int) -> int:
        return dict(self.cover_utility).get(agent, 0)


class FptModel(NamedTuple):
    ilp: IlpModel
    decomposition: VertexCoverDecomposition
    types: list
    patterns: list  # patterns[t] = good patterns of type t, in variable order
    cover_edges: tuple[int, ...]  # items with both endpoints in the cover


def min_vertex_cover(instance: GraphicalInstance) -> VertexCoverDecomposition:
    """Exact minimum vertex cover by bounded branching on uncovered edges.

    Iterative deepening on the size bound; among the minimum covers reached by
    the branching the lexicographically smallest is returned.
    """
    edges = [tuple(sorted((e.a, e.b))) for e in instance.edges]

    def branch(chosen, budget, found):
        uncovered = next(((u, v) for u, v in edges if u not in chosen and v not in chosen), None)
        if uncovered is None:
            found.add(tuple(sorted(chosen)))
            return
        if budget == 0:
            return
        for w in uncovered:
            branch(chosen | {w}, budget - 1, found)

    for k in range(instance.n_agents + 1):
        found = set()
        branch(frozenset(), k, found)
        if found:
            cover = min(found, key=lambda c: (len(c), c))
            break
    independent = tuple(v for v in range(instance.n_agents) if v not in cover)
    return VertexCoverDecomposition(cover, independent)


def _check_decomposition(instance, dec):
    cover = set(dec.cover)
    if cover & set(dec.independent) or cover | set(dec.independent) != set(range(instance.n_agents)):
        raise InputError("cover and independent set must partition the agents")
    for idx, e in enumerate(instance.edges):
        if e.a not in cover and e.b not in cover:
            raise InputError(f"edge {idx} ({e.a},{e.b}) is not covered")


def classify_types(instance: GraphicalInstance, decomposition: VertexCoverDecomposition) -> list[TypeClass]:
    """Partition the independent side by neighbourhood and edge values.

    The signature records the value on both ends of each edge to the cover, so
    that every cover agent's gain from a pattern is the same for all members.
    """
    _check_decomposition(instance, decomposition)
    groups = {}
    for v in decomposition.independent:
        nbrs = sorted((instance.edges[g].other(v), g) for g in instance.incident[v])
        key = (
            tuple(s for s, _ in nbrs),
            tuple((instance.value(v, g), instance.value(s, g)) for s, g in nbrs),
        )
        groups.setdefault(key, []).append(v)
    return [TypeClass(nb, sig, tuple(members)) for (nb, sig), members in groups.items()]


def good_orientations(
    instance: GraphicalInstance, type_class: TypeClass, rule: str = "vmax"
) -> list[OrientationPattern]:
    """Local orientations of a member's star that leave the member envy-free.

    ``rule="vmax"`` keeps every pattern whose edges toward the member sum to at
    least its v_max; ``"highest-edge"`` keeps only those sending it one of its
    highest-valued edges.
    """
    if rule not in GOOD_RULES:
        raise InputError(f"unknown good-pattern rule {rule!r}")
    top = type_class.vertex_vmax
    out = []
    for toward in itertools.product((True, False), repeat=len(type_class.neighborhood)):
        mine = sum(sig[0] for sig, t in zip(type_class.signature, toward) if t)
        if rule == "vmax":
            good = mine >= top
        else:
            good = top == 0 or any(t and sig[0] == top for sig, t in zip(type_class.signature, toward))
        if not good:
            continue
        cover_u = tuple(
            (s, 0 if t else sig[1])
            for s, sig, t in zip(type_class.neighborhood, type_class.signature, toward)
        )
        out.append(OrientationPattern(toward, mine, cover_u))
    return out


def build_ilp(
    instance: GraphicalInstance,
    decomposition: VertexCoverDecomposition,
    types: list[TypeClass],
    rule: str = "vmax",
) -> FptModel:
    model = IlpModel()
    cover = set(decomposition.cover)
    all_patterns = []
    pattern_gain = {i: [] for i in decomposition.cover}
    for t, tc in enumerate(types):
        pats = good_orientations(instance, tc, rule)
        # search heuristic only: patterns feeding the cover most come first
        pats.sort(key=lambda p: -sum(u for _, u in p.cover_utility))
        all_patterns.append(pats)
        names = [model.add_var(("x", t, o), 0, tc.n_T) for o in range(len(pats))]
        model.add_constraint([(x, 1) for x in names], "==", tc.n_T, "type-count")
        for x, p in zip(names, pats):
            for s, u in p.cover_utility:
                if u:
                    pattern_gain[s].append((x, u))
    cover_edges = tuple(g for g, e in enumerate(instance.edges) if e.a in cover and e.b in cover)
    all_xe = []
    for g in cover_edges:
        e = instance.edges[g]
        xs = [model.add_var(("xe", i, g), 0, 1) for i in sorted((e.a, e.b))]
        all_xe.extend(xs)
        model.add_constraint([(x, 1) for x in xs], "==", 1, "edge-once")
    if cover_edges:
        model.add_constraint([(x, 1) for x in all_xe], "==", len(cover_edges), "all-edges")
    for i in decomposition.cover:
        terms = [(("xe", i, g), instance.value(i, g)) for g in cover_edges if i in (instance.edges[g].a, instance.edges[g].b)]
        terms += pattern_gain[i]
        model.add_constraint(terms, ">=", v_max(instance, i), "cover-vmax")
    return FptModel(model, decomposition, types, all_patterns, cover_edges)


def lift(instance: GraphicalInstance, fm: FptModel, assignment: dict) -> Allocation:
    """Turn pattern counts and cover-edge choices into a concrete orientation."""
    owner = [None] * instance.n_items
    for t, tc in enumerate(fm.types):
        members = iter(tc.members)
        for o, pat in enumerate(fm.patterns[t]):
            for _ in range(assignment[("x", t, o)]):
                v = next(members)
                nbrs = sorted((instance.edges[g].other(v), g) for g in instance.incident[v])
                for (s, g), toward in zip(nbrs, pat.toward_vertex):
                    owner[g] = v if toward else s
    for g in fm.cover_edges:
        e = instance.edges[g]
        owner[g] = e.a if assignment[("xe", e.a, g)] == 1 else e.b
    return Allocation(tuple(owner))


def cover_utilities(instance: GraphicalInstance, fm: FptModel, assignment: dict) -> dict[int, int]:
    """Left-hand side of each cover agent's v_max constraint at ``assignment``."""
    rows = [c for c in fm.ilp.constraints if c.label == "cover-vmax"]
    return {i: con.activity(assignment) for i, con in zip(fm.decomposition.cover, rows)}


def solve_ef_fpt(
    instance: GraphicalInstance,
    max_distinct: int = DEFAULT_MAX_DISTINCT,
    rule: str = "vmax",
) -> Optional[Allocation]:
    """An EF orientation found through the vertex-cover ILP, or None."""
    n_distinct = len(instance.distinct_utilities)
    if n_distinct > max_distinct:
        raise InputError(
            f"instance has {n_distinct} distinct utilities, above the cap of {max_distinct}"
        )
    dec = min_vertex_cover(instance)
    types = classify_types(instance, dec)
    fm = build_ilp(instance, dec, types, rule)
    assignment = ilp_feasible(fm.ilp)
    if assignment is None:
        return None
    alloc = lift(instance, fm, assignment)
    assert is_envy_free(instance, alloc), "lifted orientation is not envy-free"
    return alloc


def type_count_bound(k: int, n_distinct: int) -> int:
    """Upper bound on the number of types for cover size k (two-sided signatures)."""
    return sum(math.comb(k, t) * n_distinct ** (2 * t) for t in range(k + 1))
