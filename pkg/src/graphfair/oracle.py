"""Exhaustive ground truth: fair-allocation existence, constrained welfare optima,
price of EFX and the UM+EFX / EM-within-EFX decision problems.

Everything here is a depth-first enumeration of owner vectors, items in index
order and owners in increasing agent order, so the first witness found is the
lexicographically smallest one.  Partial assignments are pruned only by
conditions that no completion can repair:

* envy ``u_i(B_j) > u_i(B_i) + (value still obtainable by i)`` (EF),
* the same with the cheapest item of ``B_j`` removed (EFX; adding items to a
  bundle never lowers this quantity),
* an egalitarian threshold some agent can no longer reach,
* a welfare upper bound that cannot beat the incumbent.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .core import (
    Allocation,
    CapacityError,
    GraphicalInstance,
    InputError,
    is_efx,
    is_envy_free,
    max_welfare_bound,
)

DEFAULT_BUDGET = 10**7

SPACES = ("allocations", "orientations")
FAIRNESS = ("ef", "efx")
WELFARES = ("util", "egal", "nash")


@dataclass(frozen=True)
class OracleConfig:
    budget: int = DEFAULT_BUDGET
    workers: int = 1


@dataclass(frozen=True)
class SearchSpace:
    """All complete allocations (``n**m``) or all orientations (``2**m``)."""

    instance: GraphicalInstance
    mode: str = "allocations"

    def __post_init__(self):
        if self.mode not in SPACES:
            raise InputError(f"unknown search space {self.mode!r}")

    def candidates(self) -> list[tuple[int, ...]]:
        inst = self.instance
        if self.mode == "orientations":
            return [tuple(sorted((e.a, e.b))) for e in inst.edges]
        return [tuple(range(inst.n_agents)) for _ in inst.edges]

    @property
    def size(self) -> int:
        return math.prod(len(c) for c in self.candidates())

    def __iter__(self) -> Iterator[Allocation]:
        for owner in itertools.product(*self.candidates()):
            yield Allocation(owner)


class WelfareOptimum(NamedTuple):
    value: Optional[int]  # None when the constrained set is empty
    witness: Optional[Allocation]
    feasible: bool
    support: Optional[int] = None  # agents with positive utility in the witness


@dataclass(frozen=True)
class PofRatio:
    numerator: int
    denominator: int

    @property
    def infinite(self) -> bool:
        return self.denominator == 0 and self.numerator > 0

    def as_fraction(self) -> Fraction:
        if self.infinite:
            raise ValueError("ratio is infinite")
        if self.denominator == 0:
            return Fraction(1)
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        if self.infinite:
            return "inf"
        fr = self.as_fraction()
        return f"{fr.numerator}/{fr.denominator}"


def _unconstrained_candidates(inst: GraphicalInstance) -> list[tuple[int, ...]]:
    # Without a fairness constraint only the utility profile matters, and every
    # non-endpoint owner yields the same profile; the lowest-indexed one is the
    # lexicographically smallest representative of that class.
    cands = []
    for e in inst.edges:
        others = [v for v in range(inst.n_agents) if v != e.a and v != e.b]
        cands.append(tuple(sorted([e.a, e.b] + others[:1])))
    return cands


def _um_candidates(inst: GraphicalInstance) -> list[tuple[int, ...]]:
    cands = []
    for e in inst.edges:
        best = max(e.value_a, e.value_b)
        if best == 0:
            cands.append(tuple(range(inst.n_agents)))
        else:
            cands.append(tuple(sorted(v for v, x in ((e.a, e.value_a), (e.b, e.value_b)) if x == best)))
    return cands


class _Search:
    """Incremental DFS over owner vectors with sound pruning."""

    def __init__(self, inst, candidates, fairness=None, threshold=None, objective=None):
        self.inst = inst
        self.cands = candidates
        self.fairness = fairness
        self.threshold = threshold
        self.objective = objective
        n = inst.n_agents
        self.n = n
        self.own = [0] * n
        self.view = [[0] * n for _ in range(n)]  # view[i][j] = u_i(B_j)
        self.minv = [[0] * n for _ in range(n)]  # minv[j][i] = min_{g in B_j} u_i(g)
        self.cnt = [0] * n
        self.owner = [0] * inst.n_items
        # value still obtainable per agent, counting only items it may receive
        self.rem = [0] * n
        self.supply = []
        for g, e in enumerate(inst.edges):
            sup = [(v, x) for v, x in ((e.a, e.value_a), (e.b, e.value_b)) if x > 0 and v in candidates[g]]
            self.supply.append(sup)
            for v, x in sup:
                self.rem[v] += x
        best_item = [max((inst.edges[g].value_for(v) for v in candidates[g]), default=0) for g in range(inst.n_items)]
        self.util_suffix = list(itertools.accumulate(reversed(best_item), initial=0))[::-1]
        self.best_key = None
        self.best_owner = None

    # objective keys; larger is better
    def _key(self):
        own = self.own
        if self.objective == "util":
            return sum(own)
        if self.objective == "egal":
            return min(own, default=0)
        return (sum(1 for u in own if u > 0), math.prod(u for u in own if u > 0))

    def _upper(self, pos):
        own, rem = self.own, self.rem
        if self.objective == "util":
            return sum(own) + self.util_suffix[pos]
        if self.objective == "egal":
            return min((own[i] + rem[i] for i in range(self.n)), default=0)
        caps = [own[i] + rem[i] for i in range(self.n)]
        return (sum(1 for c in caps if c > 0), math.prod(c for c in caps if c > 0))

    def _violates(self, a, b, k):
        n, own, rem, view, minv, cnt = self.n, self.own, self.rem, self.view, self.minv, self.cnt
        efx = self.fairness == "efx"
        thr = self.threshold
        for i in (a, b):
            slack = own[i] + rem[i]
            if thr is not None and slack < thr:
                return True
            if self.fairness is None:
                continue
            row = view[i]
            for j in range(n):
                if j == i or row[j] <= slack:
                    continue
                if not efx or row[j] - minv[j][i] > slack:
                    return True
        if self.fairness is not None:
            mk = minv[k]
            for i in range(n):
                if i == k:
                    continue
                x = view[i][k]
                slack = own[i] + rem[i]
                if x > slack and (not efx or x - mk[i] > slack):
                    return True
        return False

    def run(self, prefix=()):
        """Search; ``prefix`` fixes the owners of the first items."""
        inst = self.inst
        if self.threshold is not None and any(self.rem[i] < self.threshold for i in range(self.n)):
            return
        self._prefix = prefix
        self._dfs(0)

    def _dfs(self, pos):
        inst = self.inst
        if pos == inst.n_items:
            return self._leaf()
        if self.objective is not None and self.best_key is not None and self._upper(pos) <= self.best_key:
            return False
        e = inst.edges[pos]
        a, b, va, vb = e
        sup = self.supply[pos]
        rem = self.rem
        for v, x in sup:
            rem[v] -= x
        choices = self.cands[pos]
        if pos < len(self._prefix):
            choices = (self._prefix[pos],)
        own, view, minv, cnt = self.own, self.view, self.minv, self.cnt
        n = self.n
        done = False
        for k in choices:
            gain = va if k == a else vb if k == b else 0
            own[k] += gain
            view[a][k] += va
            view[b][k] += vb
            old_row = minv[k]
            if cnt[k] == 0:
                new_row = [0] * n
                new_row[a] = va
                new_row[b] = vb
            else:
                new_row = [0] * n
                new_row[a] = min(old_row[a], va)
                new_row[b] = min(old_row[b], vb)
            minv[k] = new_row
            cnt[k] += 1
            self.owner[pos] = k
            if not self._violates(a, b, k):
                done = self._dfs(pos + 1)
            cnt[k] -= 1
            minv[k] = old_row
            view[b][k] -= vb
            view[a][k] -= va
            own[k] -= gain
            if done:
                break
        for v, x in sup:
            rem[v] += x
        return done

    def _leaf(self):
        if self.objective is None:
            self.best_owner = tuple(self.owner)
            return True
        key = self._key()
        if self.best_key is None or key > self.best_key:
            self.best_key = key
            self.best_owner = tuple(self.owner)
        return False


def _check_budget(cands, budget):
    size = math.prod(len(c) for c in cands)
    if size > budget:
        raise CapacityError(f"search space has {size} states, budget is {budget}")
    return size


def _run_task(args):
    inst, cands, fairness, threshold, objective, prefix = args
    s = _Search(inst, cands, fairness, threshold, objective)
    s.run(prefix)
    return s.best_key, s.best_owner


def _search(inst, cands, config, fairness=None, threshold=None, objective=None):
    """Return ``(best_key, owner)``; owner is None when nothing qualifies."""
    config = config or OracleConfig()
    _check_budget(cands, config.budget)
    if config.workers <= 1 or inst.n_items == 0 or len(cands[0]) < 2:
        return _run_task((inst, cands, fairness, threshold, objective, ()))
    tasks = [(inst, cands, fairness, threshold, objective, (k,)) for k in cands[0]]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        results = list(pool.map(_run_task, tasks))
    # reduce in prefix order so the lexicographically smallest witness wins
    best_key, best_owner = None, None
    for key, owner in results:
        if owner is None:
            continue
        if objective is None:
            return key, owner
        if best_key is None or key > best_key:
            best_key, best_owner = key, owner
    return best_key, best_owner


def _space_candidates(inst, space):
    return SearchSpace(inst, space).candidates()


def exists_fair(
    instance: GraphicalInstance,
    fairness: str = "ef",
    space: str = "allocations",
    config: OracleConfig | None = None,
) -> Optional[Allocation]:
    if fairness not in FAIRNESS:
        raise InputError(f"unknown fairness notion {fairness!r}")
    _, owner = _search(instance, _space_candidates(instance, space), config, fairness=fairness)
    if owner is None:
        return None
    alloc = Allocation(owner)
    check = is_envy_free if fairness == "ef" else is_efx
    assert check(instance, alloc), "pruned search returned an unfair witness"
    return alloc


def max_welfare(
    instance: GraphicalInstance,
    welfare: str = "util",
    constraint: str | None = None,
    space: str = "allocations",
    config: OracleConfig | None = None,
) -> WelfareOptimum:
    """Exact optimum of a welfare function over the (constrained) space.

    Nash welfare is maximised by (agents with positive utility, product of the
    positive utilities); the reported value is the plain product.
    """
    if welfare not in WELFARES:
        raise InputError(f"unknown welfare {welfare!r}")
    if constraint in ("none", ""):
        constraint = None
    if constraint is not None and constraint not in FAIRNESS:
        raise InputError(f"unknown constraint {constraint!r}")
    if constraint is None and space == "allocations":
        cands = _unconstrained_candidates(instance)
    else:
        cands = _space_candidates(instance, space)
    key, owner = _search(instance, cands, config, fairness=constraint, objective=welfare)
    if owner is None:
        return WelfareOptimum(None, None, False)
    util = [0] * instance.n_agents
    for g, k in enumerate(owner):
        util[k] += instance.edges[g].value_for(k)
    support = sum(1 for u in util if u > 0)
    value = math.prod(util) if welfare == "nash" else key
    return WelfareOptimum(value, Allocation(owner), True, support)


def price_of_efx(
    instance: GraphicalInstance, welfare: str = "util", config: OracleConfig | None = None
) -> PofRatio:
    best = max_welfare(instance, welfare, None, "allocations", config)
    fair = max_welfare(instance, welfare, "efx", "allocations", config)
    if not fair.feasible:
        raise AssertionError("no EFX allocation found; graphical instances always admit one")
    return PofRatio(best.value, fair.value)


def decide_um_plus_efx(instance: GraphicalInstance, config: OracleConfig | None = None) -> bool:
    """Is some utilitarian-optimal allocation EFX?

    Utilitarian-optimal allocations are exactly those giving every item to an
    agent that values it most, so only that subspace is enumerated.
    """
    _, owner = _search(instance, _um_candidates(instance), config, fairness="efx")
    if owner is not None:
        assert sum(instance.edges[g].value_for(k) for g, k in enumerate(owner)) == max_welfare_bound(instance)
    return owner is not None


def decide_em_efx_threshold(
    instance: GraphicalInstance,
    threshold: int,
    config: OracleConfig | None = None,
    space: str = "allocations",
) -> bool:
    """Does some EFX allocation give every agent utility at least ``threshold``?"""
    _, owner = _search(
        instance, _space_candidates(instance, space), config, fairness="efx", threshold=threshold
    )
    return owner is not None
