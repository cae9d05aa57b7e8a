"""Experiment harness: parameter grids of generate-and-sweep runs.

A plan takes a base generator configuration, varies one parameter over a
grid, and runs several seeded replicates per cell. Replicate seeds derive
from (base seed, cell index, replicate index), so cells can be computed in
any order, or skipped, without changing any other cell's draws. The harness
emits both per-replicate rows and per-cell aggregates so the aggregation is
recomputable downstream.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .generate import GenConfig, GenerationError, generate
from .greedy import SweepResult, sweep
from .instance import Instance

_PARAM_ATTRS = dict(GenConfig._JSON_KEYS)


@dataclass(frozen=True)
class ExperimentPlan:
    """A one-parameter grid around a base configuration."""

    base: GenConfig
    parameter: str  # JSON-style key, e.g. "nFacilities" or "budgetFraction"
    values: tuple
    seeds_per_cell: int = 5

    def __post_init__(self):
        if self.parameter not in _PARAM_ATTRS or self.parameter == "seed":
            raise ValueError(f"unknown plan parameter {self.parameter!r}")
        if not self.values:
            raise ValueError("plan grid must be nonempty")
        if self.seeds_per_cell < 1:
            raise ValueError("seeds_per_cell must be at least 1")

    def to_json_dict(self) -> dict:
        return {
            "baseConfig": self.base.to_json_dict(),
            "parameter": self.parameter,
            "values": list(self.values),
            "seedsPerCell": self.seeds_per_cell,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ExperimentPlan":
        return cls(
            base=GenConfig.from_json_dict(doc["baseConfig"]),
            parameter=doc["parameter"],
            values=tuple(doc["values"]),
            seeds_per_cell=int(doc.get("seedsPerCell", 5)),
        )

    @classmethod
    def from_json(cls, data: bytes | str) -> "ExperimentPlan":
        return cls.from_json_dict(json.loads(data))


def replicate_seed(base_seed: int, cell_index: int, replicate_index: int) -> int:
    """Stable 64-bit seed for one replicate, independent of run order."""
    ss = np.random.SeedSequence([base_seed & ((1 << 64) - 1), cell_index, replicate_index])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ReplicateResult:
    cell_index: int
    value: float
    replicate: int
    seed: int
    baseline_risk: float
    best_risk: float
    ratio: float
    best_split: int
    spent: float


@dataclass(frozen=True)
class CellResult:
    cell_index: int
    value: float
    replicates: tuple[ReplicateResult, ...]
    error: str | None = None

    @property
    def mean_ratio(self) -> float:
        return math.fsum(r.ratio for r in self.replicates) / len(self.replicates)

    @property
    def std_ratio(self) -> float:
        mean = self.mean_ratio
        return math.sqrt(
            math.fsum((r.ratio - mean) ** 2 for r in self.replicates) / len(self.replicates)
        )

    @property
    def best_split(self) -> float:
        return statistics.median(r.best_split for r in self.replicates)


@dataclass(frozen=True)
class PlanResult:
    plan: ExperimentPlan
    cells: tuple[CellResult, ...]

    def cells_csv(self) -> str:
        lines = ["cellIndex,parameter,value,seedsPerCell,meanRatio,stdRatio,bestSplit,error"]
        for c in self.cells:
            if c.error is not None:
                lines.append(
                    f"{c.cell_index},{self.plan.parameter},{c.value!r},"
                    f"{self.plan.seeds_per_cell},,,,{c.error}"
                )
            else:
                lines.append(
                    f"{c.cell_index},{self.plan.parameter},{c.value!r},"
                    f"{self.plan.seeds_per_cell},{c.mean_ratio!r},{c.std_ratio!r},"
                    f"{c.best_split!r},"
                )
        return "\n".join(lines) + "\n"

    def replicates_csv(self) -> str:
        lines = ["cellIndex,value,replicate,seed,baselineRisk,bestRisk,ratio,bestSplit,spent"]
        for c in self.cells:
            for r in c.replicates:
                lines.append(
                    f"{r.cell_index},{r.value!r},{r.replicate},{r.seed},"
                    f"{r.baseline_risk!r},{r.best_risk!r},{r.ratio!r},{r.best_split},{r.spent!r}"
                )
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str | Path) -> None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "cells.csv").write_text(self.cells_csv(), encoding="utf-8", newline="\n")
        (out / "replicates.csv").write_text(self.replicates_csv(), encoding="utf-8", newline="\n")


def _run_replicate(config: GenConfig, cell_index: int, value, replicate: int) -> ReplicateResult:
    instance = generate(config)
    result = sweep(instance)
    best = result.best
    return ReplicateResult(
        cell_index=cell_index,
        value=value,
        replicate=replicate,
        seed=config.seed,
        baseline_risk=result.baseline_risk,
        best_risk=best.total_risk,
        ratio=result.ratio_of(best),
        best_split=int(best.split),
        spent=best.solution.spent,
    )


def run_plan(plan: ExperimentPlan) -> PlanResult:
    """Run every cell and replicate; generation failures skip just their cell."""
    cells = []
    attr = _PARAM_ATTRS[plan.parameter]
    for cell_index, value in enumerate(plan.values):
        replicates = []
        error = None
        try:
            for rep in range(plan.seeds_per_cell):
                cfg = replace(
                    plan.base,
                    seed=replicate_seed(plan.base.seed, cell_index, rep),
                    **{attr: value},
                )
                replicates.append(_run_replicate(cfg, cell_index, value, rep))
        except GenerationError as exc:
            error = str(exc).replace(",", ";")
            replicates = []
        cells.append(CellResult(cell_index, value, tuple(replicates), error))
    return PlanResult(plan, tuple(cells))


def split_curve(instance: Instance) -> SweepResult:
    """The full budget-split sweep for one instance (the x-y curve data)."""
    return sweep(instance)
