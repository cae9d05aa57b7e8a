"""Exhaustive ground-truth solver for small instances.

Enumerates every (isolation set, closure set) pair, so it is exponential and
exists to validate the greedy and the ILP translation, not to run at scale.
Also provides the subset-sum instance family whose optimal risk is tied to an
exact subset sum, which makes convenient ground truth in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import Instance, Solution
from .risk import total_risk_value


DEFAULT_LIMIT = 2**22


class InstanceTooLargeError(ValueError):
    """Enumeration would exceed the caller's cap."""

    def __init__(self, required: int, allowed: int):
        super().__init__(
            f"exact enumeration needs {required} subset pairs, cap is {allowed}"
        )
        self.required = required
        self.allowed = allowed


@dataclass(frozen=True)
class OracleResult:
    optimum: Solution
    optimal_risk: float
    nodes_explored: int

    def to_json_dict(self) -> dict:
        return {
            "optimum": self.optimum.to_json_dict(),
            "optimalRisk": self.optimal_risk,
            "nodesExplored": self.nodes_explored,
        }


def _subset_bits(n: int) -> np.ndarray:
    """Boolean matrix of all 2**n subsets; row index is the subset bitmask."""
    idx = np.arange(2**n, dtype=np.uint32)
    return (idx[:, None] >> np.arange(n, dtype=np.uint32)) & 1 == 1


def _bits_to_ids(mask_row: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.nonzero(mask_row)[0])


def solve_exact(instance: Instance, limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Minimize total risk over every feasible closure/isolation pair.

    Ties are broken by lower spend, then by lexicographically smaller
    (closed facilities, isolated people) id tuples, so the result does not
    depend on enumeration order. The reported risk is recomputed through the
    standard risk evaluation on the winning pair. Raises
    :class:`InstanceTooLargeError` when 2**(people+facilities) exceeds
    ``limit``.
    """
    instance.require_valid_ids()
    n_p, n_f = instance.n_people, instance.n_facilities
    required = 2 ** (n_p + n_f)
    if required > limit:
        raise InstanceTooLargeError(required, limit)

    pu, fv, w = instance.edge_person, instance.edge_facility, instance.edge_share
    f = instance.infection_prob

    iso_masks = _subset_bits(n_p)
    iso_spend = iso_masks @ instance.isolation_cost
    clo_masks = _subset_bits(n_f)
    clo_spend = clo_masks @ instance.closure_cost

    budget = instance.budget
    best_key: tuple | None = None
    best_pair: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    # Recompute through the canonical risk path on a sparse sample of pairs to
    # guard the factored evaluation below against silent drift.
    check_stride = max(1, required // 100)
    nodes = 0

    for iso_idx in range(len(iso_masks)):
        active = ~iso_masks[iso_idx]
        spent_iso = float(iso_spend[iso_idx])
        if len(pu):
            keep = active[pu]
            # Facility risk and facility time mass under this isolation set;
            # closing v then removes the product R(v) * Q(v) from the total.
            R = np.bincount(fv[keep], weights=f[pu[keep]] * w[keep], minlength=n_f)
            Q = np.bincount(fv[keep], weights=w[keep], minlength=n_f)
            g = R * Q
        else:
            g = np.zeros(n_f)
        full_total = math.fsum(g)

        totals = full_total - clo_masks @ g
        spends = spent_iso + clo_spend
        feasible = spends <= budget
        nodes += len(totals)

        if not feasible.any():
            continue
        feas_totals = np.where(feasible, totals, np.inf)
        block_min = float(feas_totals.min())
        if best_key is None or block_min <= best_key[0]:
            cand = np.nonzero(feas_totals == block_min)[0]
            cand_spend = spends[cand]
            cand = cand[cand_spend == cand_spend.min()]
            iso_ids = _bits_to_ids(iso_masks[iso_idx])
            for clo_idx in cand:
                closed_ids = _bits_to_ids(clo_masks[clo_idx])
                key = (block_min, float(spends[clo_idx]), closed_ids, iso_ids)
                if best_key is None or key < best_key:
                    best_key = key
                    best_pair = (closed_ids, iso_ids)

        if iso_idx % check_stride == 0 and n_f:
            probe = int(iso_idx % len(totals))
            recomputed = total_risk_value(
                instance,
                Solution.build(instance, _bits_to_ids(clo_masks[probe]), _bits_to_ids(iso_masks[iso_idx])),
            )
            if not math.isclose(recomputed, float(totals[probe]), rel_tol=1e-9, abs_tol=1e-12):
                raise AssertionError(
                    f"oracle self-check failed: factored {totals[probe]!r} vs recomputed {recomputed!r}"
                )

    assert best_pair is not None  # the empty pair costs 0 and is always feasible
    closed_ids, iso_ids = best_pair
    optimum = Solution.build(instance, closed_ids, iso_ids)
    return OracleResult(
        optimum=optimum,
        optimal_risk=total_risk_value(instance, optimum),
        nodes_explored=nodes,
    )


def subset_sum_fixture(costs, budget: float) -> Instance:
    """Instance family whose optimum encodes a subset-sum answer.

    One facility per cost, each visited by a single private person all day.
    Infection probabilities are the costs normalized by the largest one, and
    isolation is priced above the budget so only closures matter. Closing a
    facility set of total cost X leaves total risk (sum(costs) - X) / max(costs).
    """
    costs = [float(c) for c in costs]
    if not costs:
        raise ValueError("costs must be nonempty")
    if any(c <= 0 for c in costs):
        raise ValueError("costs must all be positive")
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    top = max(costs)
    n = len(costs)
    return Instance(
        n_people=n,
        n_facilities=n,
        edges=[(i, i, 1.0) for i in range(n)],
        infection_prob=[c / top for c in costs],
        isolation_cost=[budget + 1.0] * n,
        closure_cost=costs,
        budget=float(budget),
    )
