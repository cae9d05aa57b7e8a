"""Mixed-integer linear program translation and LP-format text export.

The model uses activity indicators (a_u = 1 while person u stays active,
b_v = 1 while facility v stays open) so risk accumulates only over the
surviving graph, and the budget row charges the complements. The two
products that make the natural formulation bilinear, facility risk times its
open indicator and person risk times its activity indicator, are linearized
with their tight natural upper bounds as big-M constants:

    w = R * b becomes   w <= Rmax * b,  w <= R,  w >= R - Rmax * (1 - b),  w >= 0

and t = r * a analogously with bound rmax. For every 0/1 assignment the
continuous variables are forced to exactly the residual-graph risks, so the
objective sum of t equals the evaluated total risk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .instance import Instance


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str  # "binary" or "continuous"
    lower: float = 0.0
    upper: float = 1.0


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[tuple[float, str], ...]  # (coefficient, variable name)
    sense: str  # "<=", ">=", "="
    rhs: float


@dataclass(frozen=True)
class Objective:
    sense: str  # "minimize"
    terms: tuple[tuple[float, str], ...]


@dataclass(frozen=True)
class IlpModel:
    variables: tuple[Variable, ...]
    constraints: tuple[Constraint, ...]
    objective: Objective

    def variable_map(self) -> dict[str, Variable]:
        return {v.name: v for v in self.variables}

    def check(self) -> list[str]:
        """Structural problems: undeclared variables, non-finite bounds."""
        out = []
        declared = {v.name for v in self.variables}
        for v in self.variables:
            if not (math.isfinite(v.lower) and math.isfinite(v.upper)):
                out.append(f"variable {v.name}: non-finite bounds [{v.lower}, {v.upper}]")
        for c in self.constraints:
            for _, name in c.terms:
                if name not in declared:
                    out.append(f"constraint {c.name}: undeclared variable {name}")
        for _, name in self.objective.terms:
            if name not in declared:
                out.append(f"objective: undeclared variable {name}")
        return out


def build_ilp(instance: Instance) -> IlpModel:
    """Translate an instance into the linearized budgeted-risk MILP."""
    instance.require_valid_ids()
    n_p, n_f = instance.n_people, instance.n_facilities
    f = instance.infection_prob

    r_max = [math.fsum(float(f[u]) * float(s) for u, s in zip(*instance.people_of_facility(v)))
             for v in range(n_f)]
    t_max = [math.fsum(float(s) * r_max[v] for v, s in zip(*instance.facilities_of_person(u)))
             for u in range(n_p)]

    variables = (
        [Variable(f"a_{u}", "binary") for u in range(n_p)]
        + [Variable(f"b_{v}", "binary") for v in range(n_f)]
        + [Variable(f"R_{v}", "continuous", 0.0, r_max[v]) for v in range(n_f)]
        + [Variable(f"w_{v}", "continuous", 0.0, r_max[v]) for v in range(n_f)]
        + [Variable(f"r_{u}", "continuous", 0.0, t_max[u]) for u in range(n_p)]
        + [Variable(f"t_{u}", "continuous", 0.0, t_max[u]) for u in range(n_p)]
    )

    constraints: list[Constraint] = []

    budget_terms = [(-float(instance.isolation_cost[u]), f"a_{u}") for u in range(n_p)]
    budget_terms += [(-float(instance.closure_cost[v]), f"b_{v}") for v in range(n_f)]
    spend_all = math.fsum(instance.isolation_cost.tolist() + instance.closure_cost.tolist())
    constraints.append(
        Constraint("budget", tuple(budget_terms), "<=", instance.budget - spend_all)
    )

    for v in range(n_f):
        people, shares = instance.people_of_facility(v)
        terms = [(float(f[u]) * float(s), f"a_{int(u)}") for u, s in zip(people, shares)]
        constraints.append(Constraint(f"Rdef_{v}", tuple(terms + [(-1.0, f"R_{v}")]), "=", 0.0))
        constraints.append(
            Constraint(f"wcap_{v}", ((1.0, f"w_{v}"), (-r_max[v], f"b_{v}")), "<=", 0.0)
        )
        constraints.append(
            Constraint(f"wler_{v}", ((1.0, f"w_{v}"), (-1.0, f"R_{v}")), "<=", 0.0)
        )
        constraints.append(
            Constraint(
                f"wfloor_{v}",
                ((1.0, f"w_{v}"), (-1.0, f"R_{v}"), (-r_max[v], f"b_{v}")),
                ">=",
                -r_max[v],
            )
        )

    for u in range(n_p):
        facs, shares = instance.facilities_of_person(u)
        terms = [(float(s), f"w_{int(v)}") for v, s in zip(facs, shares)]
        constraints.append(Constraint(f"rdef_{u}", tuple(terms + [(-1.0, f"r_{u}")]), "=", 0.0))
        constraints.append(
            Constraint(f"tcap_{u}", ((1.0, f"t_{u}"), (-t_max[u], f"a_{u}")), "<=", 0.0)
        )
        constraints.append(
            Constraint(f"tler_{u}", ((1.0, f"t_{u}"), (-1.0, f"r_{u}")), "<=", 0.0)
        )
        constraints.append(
            Constraint(
                f"tfloor_{u}",
                ((1.0, f"t_{u}"), (-1.0, f"r_{u}"), (-t_max[u], f"a_{u}")),
                ">=",
                -t_max[u],
            )
        )

    objective = Objective("minimize", tuple((1.0, f"t_{u}") for u in range(n_p)))
    return IlpModel(tuple(variables), tuple(constraints), objective)


def objective_value(model: IlpModel, values: Mapping[str, float]) -> float:
    return math.fsum(coef * values[name] for coef, name in model.objective.terms)


def constraint_violations(
    model: IlpModel, values: Mapping[str, float], tol: float = 1e-9
) -> list[str]:
    """Names of constraints and bounds a point violates beyond ``tol``."""
    out = []
    for var in model.variables:
        x = values[var.name]
        if x < var.lower - tol or x > var.upper + tol:
            out.append(f"bound {var.name}")
        if var.kind == "binary" and min(abs(x), abs(x - 1.0)) > tol:
            out.append(f"integrality {var.name}")
    for c in model.constraints:
        lhs = math.fsum(coef * values[name] for coef, name in c.terms)
        if c.sense == "<=" and lhs > c.rhs + tol:
            out.append(c.name)
        elif c.sense == ">=" and lhs < c.rhs - tol:
            out.append(c.name)
        elif c.sense == "=" and abs(lhs - c.rhs) > tol:
            out.append(c.name)
    return out


# -- LP file text ---------------------------------------------------------------


def _format_terms(terms: tuple[tuple[float, str], ...]) -> list[str]:
    if not terms:
        return ["0"]
    parts = []
    for coef, name in terms:
        sign = "-" if (coef < 0 or (coef == 0 and math.copysign(1.0, coef) < 0)) else "+"
        parts.append(f"{sign} {abs(coef)!r} {name}")
    return parts


def _wrap(prefix: str, parts: list[str], per_line: int = 8) -> list[str]:
    lines = []
    for i in range(0, len(parts), per_line):
        chunk = " ".join(parts[i : i + per_line])
        lines.append(f"{prefix}{chunk}" if i == 0 else f"   {chunk}")
    return lines or [prefix.rstrip()]

def write_lp_format(model: IlpModel) -> bytes:
    """Render the model as solver-ready LP text (CPLEX LP dialect).

    Variable and constraint order is exactly the model's order, and
    coefficients use shortest round-trip decimal form, so the output is
    byte-deterministic and re-parses to an identical model.
    """
    problems = model.check()
    if problems:
        raise ValueError("model is not well formed: " + "; ".join(problems))

    lines = ["Minimize"]
    lines += _wrap(" obj: ", _format_terms(model.objective.terms))
    lines.append("Subject To")
    for c in model.constraints:
        parts = _format_terms(c.terms) + [c.sense, repr(float(c.rhs))]
        lines += _wrap(f" {c.name}: ", parts)
    continuous = [v for v in model.variables if v.kind == "continuous"]
    binaries = [v for v in model.variables if v.kind == "binary"]
    if continuous:
        lines.append("Bounds")
        for v in continuous:
            lines.append(f" {v.lower!r} <= {v.name} <= {v.upper!r}")
    if binaries:
        lines.append("Binary")
        lines += _wrap(" ", [v.name for v in binaries], per_line=12)
    lines.append("End")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_lp_format(data: bytes | str) -> IlpModel:
    """Parse LP text produced by :func:`write_lp_format` back into a model.

    Supports only this writer's dialect (explicit signed coefficients,
    binaries listed after continuous bounds); it exists so tests can prove
    the export is lossless, not as a general LP reader.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    section = None
    obj_tokens: list[str] = []
    constraint_tokens: list[list[str]] = []
    bounds: list[tuple[float, str, float]] = []
    binaries: list[str] = []
    for raw in data.splitlines():
        line = raw.strip()
        if not line:
            continue
        low = line.lower()
        if low in ("minimize", "maximize"):
            section = "objective"
            continue
        if low == "subject to":
            section = "constraints"
            continue
        if low == "bounds":
            section = "bounds"
            continue
        if low == "binary":
            section = "binary"
            continue
        if low == "end":
            break
        continued = raw.startswith("   ") and ":" not in line.split()[0]
        if section == "objective":
            if ":" in line:
                line = line.split(":", 1)[1]
            obj_tokens += line.split()
        elif section == "constraints":
            if continued and constraint_tokens:
                constraint_tokens[-1] += line.split()
            else:
                name, rest = line.split(":", 1)
                constraint_tokens.append([name.strip()] + rest.split())
        elif section == "bounds":
            lo, _, name, _, hi = line.split()
            bounds.append((float(lo), name, float(hi)))
        elif section == "binary":
            binaries += line.split()

    def parse_terms(tokens: list[str]) -> tuple[tuple[float, str], ...]:
        if tokens == ["0"]:
            return ()
        terms = []
        for i in range(0, len(tokens), 3):
            sign, mag, name = tokens[i : i + 3]
            coef = float(mag) if sign == "+" else -float(mag)
            terms.append((coef, name))
        return tuple(terms)

    objective = Objective("minimize", parse_terms(obj_tokens))
    constraints = []
    for tokens in constraint_tokens:
        name, body, rhs = tokens[0], tokens[1:-2], tokens[-1]
        sense = tokens[-2]
        constraints.append(Constraint(name, parse_terms(body), sense, float(rhs)))
    variables = [Variable(name, "binary") for name in binaries]
    variables += [Variable(name, "continuous", lo, hi) for lo, name, hi in bounds]
    return IlpModel(tuple(variables), tuple(constraints), objective)
