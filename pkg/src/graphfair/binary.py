"""Polynomial-time EF and EFX construction for {0,1}-graphical instances.

Asymmetric edges go to the endpoint that values them; that endpoint is then
"special" (its utility already reaches its v_max, so it is envy-free under any
completion).  What remains is the subgraph of symmetric value-1 edges, solved
one connected component at a time:

* tree component: every vertex but the root can receive its parent edge, so
  an EF orientation exists iff the component contains a special vertex to act
  as root;
* component with a cycle: orient the cycle cyclically, then hand every other
  vertex its parent edge in a BFS tree grown from the cycle.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .core import Allocation, GraphicalInstance, InputError, v_max


def _require_binary(instance: GraphicalInstance) -> None:
    if not instance.is_binary():
        raise InputError(f"binary solver needs utilities in {{0,1}}, got {sorted(instance.distinct_utilities)}")


def _symmetric_components(instance):
    """Connected components of the symmetric value-1 subgraph.

    Returns ``(adjacency, components)``; adjacency maps vertex -> sorted list of
    ``(neighbour, item)``, components are ``(vertices, items)`` ordered by
    their smallest vertex.
    """
    adj = {}
    for g, e in enumerate(instance.edges):
        if e.value_a == 1 and e.value_b == 1:
            adj.setdefault(e.a, []).append((e.b, g))
            adj.setdefault(e.b, []).append((e.a, g))
    for v in adj:
        adj[v].sort()
    seen = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        seen.add(start)
        verts, items = [start], set()
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, g in adj[x]:
                items.add(g)
                if y not in seen:
                    seen.add(y)
                    verts.append(y)
                    queue.append(y)
        comps.append((sorted(verts), sorted(items)))
    return adj, comps


def _find_cycle(adj, start):
    """Vertices of the first cycle met by a DFS from ``start``, in cycle order."""
    parent = {start: (None, None)}
    stack = [(start, iter(adj[start]))]
    on_path = {start: 0}
    path = [start]
    while stack:
        x, it = stack[-1]
        advanced = False
        for y, g in it:
            if y == parent[x][0] and g == parent[x][1]:
                continue
            if y in on_path:
                return path[on_path[y]:]
            if y in parent:
                continue
            parent[y] = (x, g)
            on_path[y] = len(path)
            path.append(y)
            stack.append((y, iter(adj[y])))
            advanced = True
            break
        if not advanced:
            stack.pop()
            del on_path[path.pop()]
    return None


def _orient_tree_from(adj, roots, owner):
    """BFS from ``roots``; every newly reached vertex takes the edge to its parent."""
    seen = set(roots)
    queue = deque(sorted(roots))
    while queue:
        x = queue.popleft()
        for y, g in adj[x]:
            if y not in seen:
                seen.add(y)
                owner[g] = y
                queue.append(y)


def _orient_cyclic(instance, adj, verts, items, owner):
    cycle = _find_cycle(adj, verts[0])
    edge_between = {}
    for x in cycle:
        for y, g in adj[x]:
            edge_between[(x, y)] = g
    for idx, x in enumerate(cycle):
        y = cycle[(idx + 1) % len(cycle)]
        owner[edge_between[(x, y)]] = x
    _orient_tree_from(adj, cycle, owner)


def _base_orientation(instance, owner):
    """Asymmetric edges to their 1-valuer; returns per-agent utility."""
    util = [0] * instance.n_agents
    for g, e in enumerate(instance.edges):
        if e.value_a != e.value_b:
            k = e.a if e.value_a > e.value_b else e.b
            owner[g] = k
            util[k] += 1
    return util


def _fill_leftover(instance, items, owner):
    for g in items:
        if owner[g] is None:
            e = instance.edges[g]
            owner[g] = min(e.a, e.b)


def solve_ef_binary(instance: GraphicalInstance) -> Optional[Allocation]:
    """An EF orientation of a {0,1}-instance, or None when no EF allocation exists."""
    _require_binary(instance)
    owner = [None] * instance.n_items
    util = _base_orientation(instance, owner)
    special = [util[v] >= v_max(instance, v) for v in range(instance.n_agents)]
    adj, comps = _symmetric_components(instance)
    for verts, items in comps:
        if len(items) == len(verts) - 1:
            roots = [v for v in verts if special[v]]
            if not roots:
                return None
            _orient_tree_from(adj, [roots[0]], owner)
        else:
            _orient_cyclic(instance, adj, verts, items, owner)
        _fill_leftover(instance, items, owner)
    # 0/0 edges: nobody values them
    _fill_leftover(instance, range(instance.n_items), owner)
    return Allocation(tuple(owner))


def _balance(instance, owner, util):
    """Shift load along alternating paths until no agent is 2 units ahead of a
    neighbour-reachable one.

    A symmetric edge (x, y) held by y can be handed to x; chaining such moves
    from a poor agent p to a rich agent r transfers one unit of utility from r
    to p and leaves everyone in between unchanged.  When no transfer with
    ``util[r] >= util[p] + 2`` remains, the utility vector is lexicographically
    max-min, which simultaneously maximises egalitarian and Nash welfare over
    all non-wasteful allocations.
    """
    sym_adj = {}
    for g, e in enumerate(instance.edges):
        if e.value_a == 1 and e.value_b == 1:
            sym_adj.setdefault(e.a, []).append((e.b, g))
            sym_adj.setdefault(e.b, []).append((e.a, g))
    for v in sym_adj:
        sym_adj[v].sort()
    while True:
        moved = False
        for p in sorted(sym_adj, key=lambda v: (util[v], v)):
            prev = {p: None}
            queue = deque([p])
            target = None
            while queue and target is None:
                x = queue.popleft()
                for y, g in sym_adj[x]:
                    if owner[g] == y and y not in prev:
                        prev[y] = (x, g)
                        if util[y] >= util[p] + 2:
                            target = y
                            break
                        queue.append(y)
            if target is None:
                continue
            y = target
            while prev[y] is not None:
                x, g = prev[y]
                owner[g] = x
                y = x
            util[p] += 1
            util[target] -= 1
            moved = True
            break
        if not moved:
            return


def solve_efx_binary(instance: GraphicalInstance, balance: bool = True) -> Allocation:
    """A non-wasteful EFX allocation of a {0,1}-instance (always exists).

    Tree components without a special vertex are rooted at a minimum-degree
    vertex; the root stays empty-handed but every agent it envies holds a
    single item.  With ``balance`` the orientation is then levelled so the
    result also attains the optimal egalitarian and Nash welfare.  Edges valued
    0 by both endpoints go last, to an agent nobody envies.
    """
    _require_binary(instance)
    owner = [None] * instance.n_items
    util = _base_orientation(instance, owner)
    special = [util[v] >= v_max(instance, v) for v in range(instance.n_agents)]
    adj, comps = _symmetric_components(instance)
    for verts, items in comps:
        if len(items) == len(verts) - 1:
            roots = [v for v in verts if special[v]]
            if roots:
                root = roots[0]
            else:
                root = min(verts, key=lambda v: (len(adj[v]), v))
            _orient_tree_from(adj, [root], owner)
        else:
            _orient_cyclic(instance, adj, verts, items, owner)
        _fill_leftover(instance, items, owner)
    util = [0] * instance.n_agents
    for g, k in enumerate(owner):
        if k is not None:
            util[k] += instance.edges[g].value_for(k)
    if balance:
        _balance(instance, owner, util)
    zero_items = [g for g in range(instance.n_items) if owner[g] is None]
    if zero_items:
        envied = _envied_agents(instance, owner, util)
        calm = [v for v in range(instance.n_agents) if v not in envied]
        for g in zero_items:
            e = instance.edges[g]
            ends = [v for v in calm if v in (e.a, e.b)]
            owner[g] = ends[0] if ends else calm[0]
    return Allocation(tuple(owner))


def _envied_agents(instance, owner, util):
    # with only valued edges placed, i can value j's bundle only via their shared edge
    envied = set()
    for g, k in enumerate(owner):
        if k is None:
            continue
        e = instance.edges[g]
        for i in (e.a, e.b):
            if i != k and e.value_for(i) > util[i]:
                envied.add(k)
    return envied
