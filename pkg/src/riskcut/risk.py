"""Population risk evaluation on the residual graph after interventions.

Closing a facility and isolating a person are both edge removals. On the
surviving edges, a facility accumulates infection-weighted time mass

    R(v) = sum over surviving edges (u, v) of f(u) * p(u, v)

and a person accumulates facility-risk-weighted time

    r(u) = sum over surviving edges (u, v) of R(v) * p(u, v).

Total population risk is the plain sum of person risks. All functions here are
pure in (instance, solution) and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import Instance, Solution


@dataclass(frozen=True)
class RiskReport:
    """Per-facility and per-person risks plus the before/after ratio.

    ``ratio`` is total over baseline risk, defined as 1 when the baseline is
    zero (no risk means nothing to improve).
    """

    facility_risk: np.ndarray
    person_risk: np.ndarray
    total_risk: float
    baseline_risk: float
    ratio: float

    def to_json_dict(self) -> dict:
        return {
            "facilityRisk": self.facility_risk.tolist(),
            "personRisk": self.person_risk.tolist(),
            "totalRisk": self.total_risk,
            "baselineRisk": self.baseline_risk,
            "ratio": self.ratio,
        }


def _masks(instance: Instance, solution: Solution | None) -> tuple[np.ndarray, np.ndarray]:
    """Boolean (person active, facility open) masks for a solution."""
    active = np.ones(instance.n_people, dtype=bool)
    open_ = np.ones(instance.n_facilities, dtype=bool)
    if solution is not None:
        for u in solution.isolated_people:
            if not 0 <= u < instance.n_people:
                raise IndexError(f"isolated person id {u} out of range")
            active[u] = False
        for v in solution.closed_facilities:
            if not 0 <= v < instance.n_facilities:
                raise IndexError(f"closed facility id {v} out of range")
            open_[v] = False
    return active, open_


def _risk_vectors_from_masks(
    instance: Instance, active: np.ndarray, open_: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    instance.require_valid_ids()
    pu, fv, w = instance.edge_person, instance.edge_facility, instance.edge_share
    alive = active[pu] & open_[fv]
    pu, fv, w = pu[alive], fv[alive], w[alive]
    facility_risk = np.bincount(
        fv, weights=instance.infection_prob[pu] * w, minlength=instance.n_facilities
    )
    person_risk = np.bincount(pu, weights=facility_risk[fv] * w, minlength=instance.n_people)
    return facility_risk, person_risk


def _total_from_masks(instance: Instance, active: np.ndarray, open_: np.ndarray) -> float:
    _, person_risk = _risk_vectors_from_masks(instance, active, open_)
    # Compensated summation in ascending person id keeps totals reproducible.
    return math.fsum(person_risk)


def facility_risks(instance: Instance, solution: Solution | None = None) -> np.ndarray:
    """R(v) for every facility under a solution (no action when ``None``)."""
    active, open_ = _masks(instance, solution)
    facility_risk, _ = _risk_vectors_from_masks(instance, active, open_)
    return facility_risk


def person_risks(instance: Instance, solution: Solution | None = None) -> np.ndarray:
    """r(u) for every person under a solution (no action when ``None``)."""
    active, open_ = _masks(instance, solution)
    _, person_risk = _risk_vectors_from_masks(instance, active, open_)
    return person_risk


def total_risk_value(instance: Instance, solution: Solution | None = None) -> float:
    """Total population risk only, skipping report assembly."""
    active, open_ = _masks(instance, solution)
    return _total_from_masks(instance, active, open_)


def baseline_risk_value(instance: Instance) -> float:
    """Total risk when nothing is closed and nobody is isolated."""
    return total_risk_value(instance, None)


def risk_ratio(total: float, baseline: float) -> float:
    return total / baseline if baseline != 0.0 else 1.0


def total_risk(instance: Instance, solution: Solution | None = None) -> RiskReport:
    """Full report for a solution: vectors, total, baseline, and ratio."""
    active, open_ = _masks(instance, solution)
    facility_risk, person_risk = _risk_vectors_from_masks(instance, active, open_)
    total = math.fsum(person_risk)
    baseline = _total_from_masks(
        instance, np.ones(instance.n_people, dtype=bool), np.ones(instance.n_facilities, dtype=bool)
    )
    return RiskReport(
        facility_risk=facility_risk,
        person_risk=person_risk,
        total_risk=total,
        baseline_risk=baseline,
        ratio=risk_ratio(total, baseline),
    )
