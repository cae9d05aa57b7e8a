"""Budget-constrained epidemic intervention planning on bipartite contact graphs.

Core objects: an :class:`Instance` describes people, facilities, visit time
shares, infection probabilities, and intervention costs; a :class:`Solution`
is a budget-feasible set of facility closures and person isolations. The
package evaluates population risk, searches for good solutions with an
efficiency-greedy budget-split sweep, verifies against an exhaustive oracle,
exports MILP translations, generates synthetic populations, runs experiment
grids, and serves a what-if HTTP API.
"""

from .exact import InstanceTooLargeError, OracleResult, solve_exact, subset_sum_fixture
from .experiments import ExperimentPlan, PlanResult, run_plan, split_curve
from .generate import GenConfig, GenerationError, GenSummary, generate, summarize
from .greedy import (
    SweepEntry,
    SweepResult,
    facility_efficiency,
    person_efficiency,
    solve_at_split,
    sweep,
)
from .ilp import IlpModel, build_ilp, parse_lp_format, write_lp_format
from .instance import (
    Instance,
    InvalidInstanceError,
    SchemaError,
    Solution,
    load_instance,
    save_instance,
    solution_violations,
    validate,
)
from .risk import RiskReport, facility_risks, person_risks, total_risk, total_risk_value

__version__ = "0.1.0"

__all__ = [
    "ExperimentPlan",
    "GenConfig",
    "GenSummary",
    "GenerationError",
    "IlpModel",
    "Instance",
    "InstanceTooLargeError",
    "InvalidInstanceError",
    "OracleResult",
    "PlanResult",
    "RiskReport",
    "SchemaError",
    "Solution",
    "SweepEntry",
    "SweepResult",
    "build_ilp",
    "facility_efficiency",
    "facility_risks",
    "generate",
    "load_instance",
    "parse_lp_format",
    "person_efficiency",
    "person_risks",
    "run_plan",
    "save_instance",
    "solve_at_split",
    "solve_exact",
    "solution_violations",
    "split_curve",
    "subset_sum_fixture",
    "summarize",
    "sweep",
    "total_risk",
    "total_risk_value",
    "validate",
    "write_lp_format",
]
