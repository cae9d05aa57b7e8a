"""Reproducible synthetic instance generation.

Facility sizes follow a truncated power law, people are assigned to
facilities uniformly at random, visit lengths are exponential, infection
probabilities follow a second power law, and closure costs grow as a random
power of facility size. One seed drives independent per-phase substreams of a
fixed generator (PCG64), so adding a later phase never perturbs earlier draws
and regeneration is byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .instance import Instance

_U64 = (1 << 64) - 1

# Substream ids, one per generation phase.
_PHASE_SIZES = 0
_PHASE_MEMBERSHIP = 1
_PHASE_TIMESHARE = 2
_PHASE_INFECTION = 3
_PHASE_COST = 4


class GenerationError(ValueError):
    """The configuration is invalid or infeasible for drawing an instance."""


@dataclass(frozen=True)
class GenConfig:
    """All stochastic-generation parameters plus the seed that fixes them."""

    seed: int
    n_facilities: int
    min_facility_size: int
    max_facility_size: int
    size_alpha: float
    avg_activities: float
    infect_alpha: float
    cost_mu: float
    cost_sigma: float
    isolation_cost_fraction: float
    budget_fraction: float
    day_fraction: float = 0.7
    infect_floor: float = 1e-4

    def violations(self) -> list[str]:
        out = []
        if self.n_facilities < 0:
            out.append("nFacilities must be nonnegative")
        if self.min_facility_size < 1:
            out.append("minFacilitySize must be at least 1")
        if self.max_facility_size < self.min_facility_size:
            out.append("maxFacilitySize must be >= minFacilitySize")
        if not self.size_alpha > 0:
            out.append("sizeAlpha must be positive")
        if not self.avg_activities >= 1:
            out.append("avgActivities must be at least 1")
        if not self.infect_alpha > 0:
            out.append("infectAlpha must be positive")
        if self.cost_sigma < 0:
            out.append("costSigma must be nonnegative")
        if not 0 < self.budget_fraction <= 1:
            out.append("budgetFraction must lie in (0, 1]")
        if self.isolation_cost_fraction < 0:
            out.append("isolationCostFraction must be nonnegative")
        if not 0 < self.day_fraction <= 1:
            out.append("dayFraction must lie in (0, 1]")
        if not 0 < self.infect_floor <= 1:
            out.append("infectFloor must lie in (0, 1]")
        return out

    _JSON_KEYS = (
        ("seed", "seed"),
        ("nFacilities", "n_facilities"),
        ("minFacilitySize", "min_facility_size"),
        ("maxFacilitySize", "max_facility_size"),
        ("sizeAlpha", "size_alpha"),
        ("avgActivities", "avg_activities"),
        ("infectAlpha", "infect_alpha"),
        ("costMu", "cost_mu"),
        ("costSigma", "cost_sigma"),
        ("isolationCostFraction", "isolation_cost_fraction"),
        ("budgetFraction", "budget_fraction"),
        ("dayFraction", "day_fraction"),
        ("infectFloor", "infect_floor"),
    )

    def to_json_dict(self) -> dict:
        return {json_key: getattr(self, attr) for json_key, attr in self._JSON_KEYS}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GenConfig":
        kwargs = {}
        known = dict(cls._JSON_KEYS)
        for key, value in doc.items():
            if key not in known:
                raise GenerationError(f"unknown generator parameter {key!r}")
            kwargs[known[key]] = value
        return cls(**kwargs)


def _phase_rng(seed: int, phase: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed & _U64, spawn_key=(phase,))
    return np.random.Generator(np.random.PCG64(ss))


def truncated_power_law(rng: np.random.Generator, alpha: float, lo: float, hi: float, size: int) -> np.ndarray:
    """Inverse-CDF draws from density proportional to x**(-alpha) on [lo, hi]."""
    if lo <= 0 or hi < lo:
        raise ValueError("support must satisfy 0 < lo <= hi")
    q = rng.random(size)
    if abs(alpha - 1.0) < 1e-12:
        # The alpha = 1 normalizer is logarithmic, not a power.
        return lo * (hi / lo) ** q
    e = 1.0 - alpha
    return (lo**e + q * (hi**e - lo**e)) ** (1.0 / e)


def _round_half_up(x: np.ndarray) -> np.ndarray:
    return np.floor(x + 0.5)


def generate(config: GenConfig) -> Instance:
    """Draw one instance; deterministic in the seed."""
    problems = config.violations()
    if problems:
        raise GenerationError("; ".join(problems))

    sizes = _round_half_up(
        truncated_power_law(
            _phase_rng(config.seed, _PHASE_SIZES),
            config.size_alpha,
            float(config.min_facility_size),
            float(config.max_facility_size),
            config.n_facilities,
        )
    ).astype(np.int64)
    sizes = np.clip(sizes, config.min_facility_size, config.max_facility_size)

    total_slots = int(sizes.sum())
    n_people = int(_round_half_up(np.float64(total_slots / config.avg_activities)))
    max_size = int(sizes.max()) if config.n_facilities else 0
    if max_size > n_people:
        raise GenerationError(
            f"infeasible: a facility of size {max_size} cannot draw distinct members "
            f"from a population of {n_people}"
        )

    rng_members = _phase_rng(config.seed, _PHASE_MEMBERSHIP)
    edge_person = np.empty(total_slots, dtype=np.int64)
    edge_facility = np.empty(total_slots, dtype=np.int64)
    pos = 0
    for v in range(config.n_facilities):
        s = int(sizes[v])
        edge_person[pos : pos + s] = rng_members.choice(n_people, size=s, replace=False)
        edge_facility[pos : pos + s] = v
        pos += s

    rng_share = _phase_rng(config.seed, _PHASE_TIMESHARE)
    shares = rng_share.exponential(
        scale=config.day_fraction / config.avg_activities, size=total_slots
    )
    if n_people:
        person_sum = np.bincount(edge_person, weights=shares, minlength=n_people)
        # Rescale oversubscribed days; the tiny overshoot guard keeps the
        # rescaled sums strictly below 1 after rounding.
        factor = np.ones(n_people)
        over = person_sum > 1.0
        factor[over] = 1.0 / (person_sum[over] * (1.0 + 1e-12))
        shares = shares * factor[edge_person]

    infection = truncated_power_law(
        _phase_rng(config.seed, _PHASE_INFECTION),
        config.infect_alpha,
        config.infect_floor,
        1.0,
        n_people,
    )

    rng_cost = _phase_rng(config.seed, _PHASE_COST)
    exponents = np.clip(rng_cost.normal(config.cost_mu, config.cost_sigma, config.n_facilities), 0.0, None)
    closure_cost = sizes.astype(np.float64) ** exponents
    budget = config.budget_fraction * math.fsum(closure_cost)
    isolation_cost = np.full(n_people, config.isolation_cost_fraction * budget)

    instance = Instance(
        n_people=n_people,
        n_facilities=config.n_facilities,
        edges=zip(edge_person.tolist(), edge_facility.tolist(), shares.tolist()),
        infection_prob=infection,
        isolation_cost=isolation_cost,
        closure_cost=closure_cost,
        budget=budget,
    )
    from .instance import validate

    bad = validate(instance)
    if bad:  # generator bug guard, not a user-facing path
        raise GenerationError("generated instance failed validation: " + "; ".join(bad[:5]))
    return instance


# -- summaries -----------------------------------------------------------------


@dataclass(frozen=True)
class LogHistogram:
    """Counts per decade bucket [10^k, 10^(k+1)); zeros tallied separately."""

    zeros: int
    buckets: tuple[tuple[float, float, int], ...]

    @staticmethod
    def of(values: Sequence[float] | np.ndarray) -> "LogHistogram":
        arr = np.asarray(values, dtype=np.float64)
        if arr.size == 0:
            return LogHistogram(0, ())
        zeros = int(np.count_nonzero(arr <= 0.0))
        positive = arr[arr > 0.0]
        if positive.size == 0:
            return LogHistogram(zeros, ())
        exps = np.floor(np.log10(positive)).astype(np.int64)
        lo, hi = int(exps.min()), int(exps.max())
        counts = np.bincount(exps - lo, minlength=hi - lo + 1)
        return LogHistogram(
            zeros,
            tuple(
                (10.0**k, 10.0 ** (k + 1), int(counts[k - lo]))
                for k in range(lo, hi + 1)
            ),
        )

    def to_json(self) -> dict:
        return {
            "zeros": self.zeros,
            "buckets": [{"lo": lo, "hi": hi, "count": c} for lo, hi, c in self.buckets],
        }


@dataclass(frozen=True)
class GenSummary:
    """Shape-of-the-instance digest: totals plus decade histograms."""

    n_people: int
    n_facilities: int
    n_edges: int
    total_facility_size: int
    total_closure_cost: float
    budget: float
    facility_sizes: LogHistogram
    activities_per_person: LogHistogram
    infection_probs: LogHistogram
    closure_costs: LogHistogram

    def to_json_dict(self) -> dict:
        return {
            "nPeople": self.n_people,
            "nFacilities": self.n_facilities,
            "nEdges": self.n_edges,
            "totalFacilitySize": self.total_facility_size,
            "totalClosureCost": self.total_closure_cost,
            "budget": self.budget,
            "facilitySizes": self.facility_sizes.to_json(),
            "activitiesPerPerson": self.activities_per_person.to_json(),
            "infectionProbs": self.infection_probs.to_json(),
            "closureCosts": self.closure_costs.to_json(),
        }

    def to_csv(self) -> str:
        lines = ["metric,bucketLo,bucketHi,count"]
        for metric, hist in (
            ("facilitySizes", self.facility_sizes),
            ("activitiesPerPerson", self.activities_per_person),
            ("infectionProbs", self.infection_probs),
            ("closureCosts", self.closure_costs),
        ):
            if hist.zeros:
                lines.append(f"{metric},0,0,{hist.zeros}")
            for lo, hi, count in hist.buckets:
                lines.append(f"{metric},{lo!r},{hi!r},{count}")
        return "\n".join(lines) + "\n"


def summarize(instance: Instance) -> GenSummary:
    """Histogram digest of an instance, generated or loaded."""
    sizes = instance.facility_sizes()
    activities = instance.person_degrees()
    return GenSummary(
        n_people=instance.n_people,
        n_facilities=instance.n_facilities,
        n_edges=instance.n_edges,
        total_facility_size=int(sizes.sum()),
        total_closure_cost=math.fsum(instance.closure_cost),
        budget=instance.budget,
        facility_sizes=LogHistogram.of(sizes),
        activities_per_person=LogHistogram.of(activities),
        infection_probs=LogHistogram.of(instance.infection_prob),
        closure_costs=LogHistogram.of(instance.closure_cost),
    )
