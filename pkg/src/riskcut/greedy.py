"""Efficiency-sorted greedy solver with a budget-split sweep.

The solver ranks facilities by closure cost per unit of baseline risk and
people by isolation cost per unit of infection probability, then tries every
integer percentage split of the budget between an isolation phase and a
closure phase, keeping the split with the lowest resulting risk.

Within each phase the greedy walks the full ranked list and takes anything
that still fits (skip-and-continue rather than stop at the first item that
does not fit). Money left over from the isolation phase rolls into the
closure phase, which spends against the entire remaining budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .instance import Instance, Solution
from .risk import _masks, _total_from_masks, baseline_risk_value, facility_risks, risk_ratio


class _ExactSpender:
    """Running sum of spent money held as exact Shewchuk partials.

    Budget checks compare the correctly-rounded true sum, so a sequence of
    accepted costs can never overdraw the cap by rounding drift, and the final
    total equals math.fsum of the accepted costs.
    """

    __slots__ = ("partials",)

    def __init__(self, partials: Sequence[float] = ()):
        self.partials = list(partials)

    def copy(self) -> "_ExactSpender":
        return _ExactSpender(self.partials)

    def total_with(self, x: float) -> float:
        return math.fsum(self.partials + [x])

    def total(self) -> float:
        return math.fsum(self.partials)

    def add(self, x: float) -> None:
        partials = self.partials
        i = 0
        for y in partials:
            if abs(x) < abs(y):
                x, y = y, x
            hi = x + y
            lo = y - (hi - x)
            if lo:
                partials[i] = lo
                i += 1
            x = hi
        partials[i:] = [x]


@dataclass(frozen=True)
class SweepEntry:
    """Outcome of the greedy at one budget split."""

    split: float
    solution: Solution
    total_risk: float
    spent_isolation: float
    spent_closure: float


@dataclass(frozen=True)
class SweepResult:
    """Greedy outcomes for every split value, plus the winning index.

    ``best_index`` attains the minimum total risk; ties go to the smaller
    split. ``baseline_risk`` is the no-action risk used for ratios.
    """

    entries: tuple[SweepEntry, ...]
    best_index: int
    baseline_risk: float

    @property
    def best(self) -> SweepEntry:
        return self.entries[self.best_index]

    def ratio_of(self, entry: SweepEntry) -> float:
        return risk_ratio(entry.total_risk, self.baseline_risk)

    def to_csv(self) -> str:
        lines = ["split,spentIsolation,spentClosure,totalRisk,ratio"]
        for e in self.entries:
            split = int(e.split) if float(e.split).is_integer() else e.split
            lines.append(
                f"{split},{e.spent_isolation!r},{e.spent_closure!r},"
                f"{e.total_risk!r},{self.ratio_of(e)!r}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "baselineRisk": self.baseline_risk,
            "bestIndex": self.best_index,
            "perSplit": [
                {
                    "split": int(e.split) if float(e.split).is_integer() else e.split,
                    "solution": e.solution.to_json_dict(),
                    "totalRisk": e.total_risk,
                    "spentIsolation": e.spent_isolation,
                    "spentClosure": e.spent_closure,
                    "ratio": self.ratio_of(e),
                }
                for e in self.entries
            ],
        }


def facility_efficiency(instance: Instance, base_solution: Solution | None = None) -> np.ndarray:
    """Closure cost per unit of facility risk; +inf where the risk is zero.

    Risks are taken on the baseline graph (or on ``base_solution`` when the
    caller has already committed to some interventions). Facilities with an
    infinite efficiency are never worth selecting.
    """
    r = facility_risks(instance, base_solution)
    eff = np.full(instance.n_facilities, np.inf)
    positive = r > 0.0
    eff[positive] = instance.closure_cost[positive] / r[positive]
    return eff


def person_efficiency(instance: Instance) -> np.ndarray:
    """Isolation cost per unit of infection probability; +inf where f is zero."""
    f = instance.infection_prob
    eff = np.full(instance.n_people, np.inf)
    positive = f > 0.0
    eff[positive] = instance.isolation_cost[positive] / f[positive]
    return eff


def _greedy_order(efficiency: np.ndarray, cost: np.ndarray, banned: frozenset[int]) -> list[int]:
    """Candidate ids in selection order: efficiency, then cost, then id."""
    n = len(efficiency)
    order = np.lexsort((np.arange(n), cost, efficiency))
    return [int(i) for i in order if np.isfinite(efficiency[i]) and int(i) not in banned]


def _run_split(
    instance: Instance,
    split: float,
    person_order: list[int],
    facility_order: list[int],
    budget: float,
    forced_closed: frozenset[int],
    forced_isolated: frozenset[int],
    forced_spender: _ExactSpender,
) -> SweepEntry:
    iso_cost = instance.isolation_cost
    clo_cost = instance.closure_cost
    remaining = budget - forced_spender.total()
    iso_cap = remaining * (split / 100.0)

    spender = forced_spender.copy()
    iso_spender = _ExactSpender()
    isolated = list(forced_isolated)
    closed = list(forced_closed)

    for u in person_order:
        c = float(iso_cost[u])
        if iso_spender.total_with(c) <= iso_cap and spender.total_with(c) <= budget:
            iso_spender.add(c)
            spender.add(c)
            isolated.append(u)

    for v in facility_order:
        c = float(clo_cost[v])
        if spender.total_with(c) <= budget:
            spender.add(c)
            closed.append(v)

    solution = Solution.build(instance, closed, isolated)
    active, open_ = _masks(instance, solution)
    total = _total_from_masks(instance, active, open_)
    spent_isolation = math.fsum(float(iso_cost[u]) for u in sorted(isolated))
    spent_closure = math.fsum(float(clo_cost[v]) for v in sorted(closed))
    return SweepEntry(
        split=split,
        solution=solution,
        total_risk=total,
        spent_isolation=spent_isolation,
        spent_closure=spent_closure,
    )


def _prepare(
    instance: Instance,
    budget: float | None,
    forced_closed: Iterable[int],
    forced_isolated: Iterable[int],
    banned_people: Iterable[int],
    banned_facilities: Iterable[int],
):
    cap = instance.budget if budget is None else float(budget)
    forced_c = frozenset(int(v) for v in forced_closed)
    forced_i = frozenset(int(u) for u in forced_isolated)
    base = Solution.build(instance, forced_c, forced_i) if (forced_c or forced_i) else None
    skip_people = frozenset(int(u) for u in banned_people) | forced_i
    skip_facilities = frozenset(int(v) for v in banned_facilities) | forced_c

    person_order = _greedy_order(person_efficiency(instance), instance.isolation_cost, skip_people)
    facility_order = _greedy_order(
        facility_efficiency(instance, base), instance.closure_cost, skip_facilities
    )
    forced_spender = _ExactSpender()
    for v in sorted(forced_c):
        forced_spender.add(float(instance.closure_cost[v]))
    for u in sorted(forced_i):
        forced_spender.add(float(instance.isolation_cost[u]))
    return cap, forced_c, forced_i, person_order, facility_order, forced_spender


def solve_at_split(
    instance: Instance,
    split_percent: float,
    *,
    budget: float | None = None,
    forced_closed: Iterable[int] = (),
    forced_isolated: Iterable[int] = (),
    banned_people: Iterable[int] = (),
    banned_facilities: Iterable[int] = (),
) -> tuple[Solution, float]:
    """Run the two-phase greedy at one split of the budget.

    ``split_percent`` of the budget caps the isolation phase; the closure
    phase then spends whatever money is actually left. Returns the solution
    and its total risk on the residual graph.
    """
    if not 0.0 <= split_percent <= 100.0:
        raise ValueError("split_percent must lie in [0, 100]")
    cap, forced_c, forced_i, p_order, f_order, spender = _prepare(
        instance, budget, forced_closed, forced_isolated, banned_people, banned_facilities
    )
    entry = _run_split(instance, split_percent, p_order, f_order, cap, forced_c, forced_i, spender)
    return entry.solution, entry.total_risk


def sweep(
    instance: Instance,
    *,
    budget: float | None = None,
    forced_closed: Iterable[int] = (),
    forced_isolated: Iterable[int] = (),
    banned_people: Iterable[int] = (),
    banned_facilities: Iterable[int] = (),
    grid: Sequence[float] | None = None,
) -> SweepResult:
    """Evaluate the greedy at every split and keep the best.

    The default grid is the 101 integer percentages 0..100; a finer grid can
    be passed explicitly. Entries are assembled in grid order, so the result
    is deterministic for a given instance.
    """
    cap, forced_c, forced_i, p_order, f_order, spender = _prepare(
        instance, budget, forced_closed, forced_isolated, banned_people, banned_facilities
    )
    splits: Sequence[float] = range(101) if grid is None else grid
    entries = []
    best_index = 0
    for i, s in enumerate(splits):
        entry = _run_split(instance, float(s), p_order, f_order, cap, forced_c, forced_i, spender)
        entries.append(entry)
        if entry.total_risk < entries[best_index].total_risk:
            best_index = i
    return SweepResult(
        entries=tuple(entries),
        best_index=best_index,
        baseline_risk=baseline_risk_value(instance),
    )
