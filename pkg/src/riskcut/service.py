"""Read-mostly what-if HTTP API over one loaded instance.

The server holds a single immutable instance. Every scenario request is
evaluated from scratch: forced closures and isolations are charged to the
budget first, then the greedy sweep runs over whatever remains, honoring
exclusions. Responses carry the full risk report and split curve so a client
can redraw everything from one round trip.
"""

from __future__ import annotations

import math
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .generate import summarize
from .greedy import sweep
from .instance import Instance, spend_of
from .risk import total_risk


class ScenarioRequest(BaseModel):
    budget: Optional[float] = None
    splitPercent: Optional[int] = None
    forcedClosures: list[int] = Field(default_factory=list)
    forcedIsolations: list[int] = Field(default_factory=list)
    excludedFacilities: list[int] = Field(default_factory=list)
    excludedPeople: list[int] = Field(default_factory=list)


def _check_ids(name: str, ids: list[int], n: int) -> None:
    for i in ids:
        if not 0 <= i < n:
            raise HTTPException(status_code=400, detail=f"{name} id {i} out of range [0, {n})")


def create_app(instance: Instance | None) -> FastAPI:
    """Build the API over one instance (``None`` gives a 409-everywhere app)."""
    app = FastAPI(title="riskcut what-if service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def require_instance() -> Instance:
        if instance is None:
            raise HTTPException(status_code=409, detail="no instance loaded")
        return instance

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.get("/instance/summary")
    def instance_summary() -> dict:
        inst = require_instance()
        report = total_risk(inst, None)
        return {
            "nPeople": inst.n_people,
            "nFacilities": inst.n_facilities,
            "budget": inst.budget,
            "baselineRisk": report.baseline_risk,
            "summary": summarize(inst).to_json_dict(),
            "facilities": {
                "sizes": inst.facility_sizes().tolist(),
                "closureCosts": inst.closure_cost.tolist(),
                "labels": list(inst.facility_labels) if inst.facility_labels else None,
            },
        }

    @app.post("/scenario")
    def scenario(req: ScenarioRequest) -> dict:
        inst = require_instance()
        _check_ids("forcedClosures", req.forcedClosures, inst.n_facilities)
        _check_ids("excludedFacilities", req.excludedFacilities, inst.n_facilities)
        _check_ids("forcedIsolations", req.forcedIsolations, inst.n_people)
        _check_ids("excludedPeople", req.excludedPeople, inst.n_people)

        forced_c = frozenset(req.forcedClosures)
        forced_i = frozenset(req.forcedIsolations)
        if forced_c & set(req.excludedFacilities):
            raise HTTPException(400, "a facility is both forced closed and excluded")
        if forced_i & set(req.excludedPeople):
            raise HTTPException(400, "a person is both forced isolated and excluded")
        if req.splitPercent is not None and not 0 <= req.splitPercent <= 100:
            raise HTTPException(400, "splitPercent must lie in [0, 100]")

        budget = inst.budget if req.budget is None else float(req.budget)
        if not (math.isfinite(budget) and budget >= 0.0):
            raise HTTPException(400, "budget must be a nonnegative finite number")
        forced_spend = spend_of(inst, forced_c, forced_i)
        if forced_spend > budget:
            raise HTTPException(
                422, f"forced choices cost {forced_spend}, exceeding the budget {budget}"
            )

        result = sweep(
            inst,
            budget=budget,
            forced_closed=forced_c,
            forced_isolated=forced_i,
            banned_people=req.excludedPeople,
            banned_facilities=req.excludedFacilities,
        )
        chosen = result.entries[req.splitPercent] if req.splitPercent is not None else result.best
        report = total_risk(inst, chosen.solution)
        return {
            "solution": chosen.solution.to_json_dict(),
            "riskReport": report.to_json_dict(),
            "splitCurve": [
                {
                    "split": int(e.split),
                    "spentIsolation": e.spent_isolation,
                    "spentClosure": e.spent_closure,
                    "totalRisk": e.total_risk,
                    "ratio": result.ratio_of(e),
                }
                for e in result.entries
            ],
            "bestSplit": int(result.best.split),
            "evaluatedSplit": int(chosen.split),
            "spentIsolation": chosen.spent_isolation,
            "spentClosure": chosen.spent_closure,
            "budget": budget,
        }

    return app


def serve(instance: Instance, host: str = "127.0.0.1", port: int = 8080) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(instance), host=host, port=port, log_level="info")
