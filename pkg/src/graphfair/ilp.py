"""Bounded integer feasibility: linear constraints over finite integer boxes.

The search is plain backtracking over variables in insertion order, values
tried from the upper bound down, with bound propagation after every choice.
Exact and exhaustive; intended for the small models built by :mod:`graphfair.fpt`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Optional

SENSES = ("==", ">=", "<=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[tuple[Hashable, int], ...]
    sense: str
    rhs: int
    label: str = ""

    def activity(self, assignment) -> int:
        return sum(c * assignment[v] for v, c in self.coeffs)

    def holds(self, assignment) -> bool:
        lhs = self.activity(assignment)
        if self.sense == "==":
            return lhs == self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs <= self.rhs


@dataclass
class IlpModel:
    bounds: dict = field(default_factory=dict)  # var -> (lb, ub), insertion-ordered
    constraints: list = field(default_factory=list)

    def add_var(self, name, lb: int, ub: int):
        if name in self.bounds:
            raise ValueError(f"duplicate variable {name!r}")
        self.bounds[name] = (int(lb), int(ub))
        return name

    def add_constraint(self, coeffs, sense: str, rhs: int, label: str = "") -> Constraint:
        if sense not in SENSES:
            raise ValueError(f"unknown sense {sense!r}")
        merged = {}
        for v, c in coeffs:
            if v not in self.bounds:
                raise ValueError(f"unknown variable {v!r}")
            merged[v] = merged.get(v, 0) + int(c)
        con = Constraint(tuple((v, c) for v, c in merged.items() if c), sense, int(rhs), label)
        self.constraints.append(con)
        return con

    @property
    def n_vars(self) -> int:
        return len(self.bounds)

    def is_feasible_point(self, assignment) -> bool:
        for v, (lb, ub) in self.bounds.items():
            if not lb <= assignment[v] <= ub:
                return False
        return all(c.holds(assignment) for c in self.constraints)


def _normalised(constraints):
    """Every constraint as ``sum c*x >= rhs`` rows."""
    rows = []
    for con in constraints:
        if con.sense in ("==", ">="):
            rows.append((con.coeffs, con.rhs))
        if con.sense in ("==", "<="):
            rows.append((tuple((v, -c) for v, c in con.coeffs), -con.rhs))
    return rows


def _propagate(rows, watch, lo, hi, changed):
    """Tighten bounds to a fixpoint; False on a proven contradiction."""
    queue = list(range(len(rows))) if changed is None else sorted({r for v in changed for r in watch[v]})
    pending = set(queue)
    while queue:
        r = queue.pop()
        pending.discard(r)
        coeffs, rhs = rows[r]
        top = 0
        for v, c in coeffs:
            top += c * (hi[v] if c > 0 else lo[v])
        if top < rhs:
            return False
        for v, c in coeffs:
            # the other terms can contribute at most top - own_max
            own_max = c * (hi[v] if c > 0 else lo[v])
            need = rhs - (top - own_max)
            if c > 0:
                new_lo = -((-need) // c)
                if new_lo > lo[v]:
                    if new_lo > hi[v]:
                        return False
                    lo[v] = new_lo
                    tightened = True
                else:
                    tightened = False
            else:
                # c*x >= need with c < 0  <=>  x <= floor(-need / -c)
                new_hi = (-need) // (-c)
                if new_hi < hi[v]:
                    if new_hi < lo[v]:
                        return False
                    hi[v] = new_hi
                    tightened = True
                else:
                    tightened = False
            if tightened:
                for r2 in watch[v]:
                    if r2 not in pending:
                        pending.add(r2)
                        queue.append(r2)
    return True


def ilp_feasible(model: IlpModel) -> Optional[dict]:
    """An integer point satisfying every constraint, or None if there is none."""
    names = list(model.bounds)
    lo = {v: b[0] for v, b in model.bounds.items()}
    hi = {v: b[1] for v, b in model.bounds.items()}
    if any(lo[v] > hi[v] for v in names):
        return None
    rows = _normalised(model.constraints)
    watch = {v: [] for v in names}
    for r, (coeffs, _) in enumerate(rows):
        for v, _c in coeffs:
            watch[v].append(r)
    if not _propagate(rows, watch, lo, hi, None):
        return None

    def search(lo, hi):
        free = next((v for v in names if lo[v] < hi[v]), None)
        if free is None:
            return dict(lo)
        for val in range(hi[free], lo[free] - 1, -1):
            lo2, hi2 = dict(lo), dict(hi)
            lo2[free] = hi2[free] = val
            if _propagate(rows, watch, lo2, hi2, [free]):
                found = search(lo2, hi2)
                if found is not None:
                    return found
        return None

    result = search(lo, hi)
    if result is not None:
        assert model.is_feasible_point(result)
    return result
