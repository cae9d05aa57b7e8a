"""Command line front end: gen, solve, oracle, export-ilp, run-plan, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import exact, experiments, greedy, ilp, instance as model, service
from .generate import GenConfig, GenerationError, generate as generate_instance, summarize


def _read_instance(path: str) -> model.Instance:
    return model.load_instance(Path(path).read_bytes())


def _cmd_gen(args) -> int:
    config = GenConfig(
        seed=args.seed,
        n_facilities=args.facilities,
        min_facility_size=args.min_size,
        max_facility_size=args.max_size,
        size_alpha=args.size_alpha,
        avg_activities=args.avg_activities,
        infect_alpha=args.infect_alpha,
        cost_mu=args.cost_mu,
        cost_sigma=args.cost_sigma,
        isolation_cost_fraction=args.isolation_frac,
        budget_fraction=args.budget_frac,
    )
    inst = generate_instance(config)
    Path(args.out).write_bytes(model.save_instance(inst))
    summary = summarize(inst)
    print(
        f"wrote {args.out}: {inst.n_people} people, {inst.n_facilities} facilities, "
        f"{inst.n_edges} edges, budget {inst.budget:.6g}"
    )
    if args.summary_out:
        Path(args.summary_out).write_text(summary.to_csv(), encoding="utf-8", newline="\n")
        print(f"wrote {args.summary_out}")
    return 0


def _cmd_solve(args) -> int:
    inst = _read_instance(getattr(args, "in"))
    result = greedy.sweep(inst)
    best = result.best
    print(
        f"best split {int(best.split)}: risk {best.total_risk:.6g} of baseline "
        f"{result.baseline_risk:.6g} (ratio {result.ratio_of(best):.4f}), "
        f"spent {best.solution.spent:.6g} of {inst.budget:.6g}"
    )
    if args.out:
        Path(args.out).write_text(result.to_csv(), encoding="utf-8", newline="\n")
        print(f"wrote {args.out}")
    if args.json_out:
        Path(args.json_out).write_text(
            json.dumps(result.to_json_dict(), allow_nan=False) + "\n", encoding="utf-8"
        )
        print(f"wrote {args.json_out}")
    return 0


def _cmd_oracle(args) -> int:
    inst = _read_instance(getattr(args, "in"))
    try:
        result = exact.solve_exact(inst, limit=args.limit)
    except exact.InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        f"optimum risk {result.optimal_risk:.6g}, spent {result.optimum.spent:.6g}, "
        f"explored {result.nodes_explored} subset pairs"
    )
    if args.out:
        Path(args.out).write_text(
            json.dumps(result.to_json_dict(), allow_nan=False) + "\n", encoding="utf-8"
        )
        print(f"wrote {args.out}")
    return 0


def _cmd_export_ilp(args) -> int:
    inst = _read_instance(getattr(args, "in"))
    model_ilp = ilp.build_ilp(inst)
    Path(args.out).write_bytes(ilp.write_lp_format(model_ilp))
    print(
        f"wrote {args.out}: {len(model_ilp.variables)} variables, "
        f"{len(model_ilp.constraints)} constraints"
    )
    return 0


def _cmd_run_plan(args) -> int:
    plan = experiments.ExperimentPlan.from_json(Path(args.plan).read_text(encoding="utf-8"))
    result = experiments.run_plan(plan)
    result.write(args.out)
    for cell in result.cells:
        if cell.error is not None:
            print(f"cell {cell.cell_index} ({plan.parameter}={cell.value}): ERROR {cell.error}")
        else:
            print(
                f"cell {cell.cell_index} ({plan.parameter}={cell.value}): "
                f"mean ratio {cell.mean_ratio:.4f} +- {cell.std_ratio:.4f}, "
                f"median best split {cell.best_split}"
            )
    print(f"wrote {Path(args.out) / 'cells.csv'} and {Path(args.out) / 'replicates.csv'}")
    return 0


def _cmd_serve(args) -> int:
    inst = _read_instance(getattr(args, "in"))
    service.serve(inst, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskcut",
        description="Budget-constrained facility closure and person isolation planning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic instance")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--facilities", type=int, default=500)
    gen.add_argument("--min-size", type=int, default=4)
    gen.add_argument("--max-size", type=int, default=1000)
    gen.add_argument("--size-alpha", type=float, default=1.1)
    gen.add_argument("--avg-activities", type=float, default=4.0)
    gen.add_argument("--infect-alpha", type=float, default=2.0)
    gen.add_argument("--cost-mu", type=float, default=1.1)
    gen.add_argument("--cost-sigma", type=float, default=0.5)
    gen.add_argument("--isolation-frac", type=float, default=0.01)
    gen.add_argument("--budget-frac", type=float, default=0.01)
    gen.add_argument("--out", required=True)
    gen.add_argument("--summary-out", default=None, help="also write histogram CSV")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="run the budget-split sweep on an instance")
    solve.add_argument("--in", required=True)
    solve.add_argument("--out", default=None, help="write the per-split CSV here")
    solve.add_argument("--json-out", default=None, help="write the full sweep JSON here")
    solve.set_defaults(func=_cmd_solve)

    oracle = sub.add_parser("oracle", help="exact optimum by exhaustive enumeration")
    oracle.add_argument("--in", required=True)
    oracle.add_argument("--limit", type=int, default=exact.DEFAULT_LIMIT)
    oracle.add_argument("--out", default=None, help="write the result JSON here")
    oracle.set_defaults(func=_cmd_oracle)

    export = sub.add_parser("export-ilp", help="write the instance as an LP-format MILP")
    export.add_argument("--in", required=True)
    export.add_argument("--out", required=True)
    export.set_defaults(func=_cmd_export_ilp)

    plan = sub.add_parser("run-plan", help="run a parameter-grid experiment plan")
    plan.add_argument("--plan", required=True)
    plan.add_argument("--out", required=True, help="output directory for CSV files")
    plan.set_defaults(func=_cmd_run_plan)

    serve = sub.add_parser("serve", help="serve the what-if HTTP API over an instance")
    serve.add_argument("--in", required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (model.SchemaError, model.InvalidInstanceError, GenerationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
