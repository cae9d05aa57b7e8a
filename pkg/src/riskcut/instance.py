"""Bipartite people-facility model: instances, solutions, validation, JSON I/O.

People and facilities are dense 0-based integer ids. Edges carry the fraction
of a day a person spends in a facility. Costs attach to closing facilities and
isolating people, both charged against one shared budget.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """A serialized instance does not match the documented JSON schema."""


class InvalidInstanceError(ValueError):
    """A loaded instance fails validation; ``violations`` lists the problems."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("invalid instance: " + "; ".join(violations))
        self.violations = list(violations)


def _as_float_array(values, name: str, length: int) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.shape != (length,):
        raise ValueError(f"{name} must have length {length}, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


class Instance:
    """One-day snapshot of who spends time where and what interventions cost.

    Immutable after construction. Edges are normalized to (person, facility)
    sorted order; a facility-major permutation is precomputed so both sides of
    the bipartite graph can be walked in O(degree).

    Construction only enforces structural consistency (array lengths, edge
    arity). Semantic rules such as value ranges are checked by
    :func:`validate`, which reports violations as data instead of raising.
    """

    __slots__ = (
        "n_people",
        "n_facilities",
        "edge_person",
        "edge_facility",
        "edge_share",
        "infection_prob",
        "isolation_cost",
        "closure_cost",
        "budget",
        "person_labels",
        "facility_labels",
        "_ids_valid",
        "_person_indptr",
        "_facility_order",
        "_facility_indptr",
    )

    def __init__(
        self,
        n_people: int,
        n_facilities: int,
        edges: Iterable[tuple[int, int, float]],
        infection_prob,
        isolation_cost,
        closure_cost,
        budget: float,
        person_labels: Sequence[str] | None = None,
        facility_labels: Sequence[str] | None = None,
    ):
        self.n_people = int(n_people)
        self.n_facilities = int(n_facilities)
        if self.n_people < 0 or self.n_facilities < 0:
            raise ValueError("counts must be nonnegative")

        triples = list(edges)
        person = np.fromiter((t[0] for t in triples), dtype=np.int64, count=len(triples))
        facility = np.fromiter((t[1] for t in triples), dtype=np.int64, count=len(triples))
        share = np.fromiter((t[2] for t in triples), dtype=np.float64, count=len(triples))

        # Canonical person-major order; a stable key makes equality well defined.
        order = np.lexsort((facility, person))
        self.edge_person = person[order]
        self.edge_facility = facility[order]
        self.edge_share = share[order]
        for arr in (self.edge_person, self.edge_facility, self.edge_share):
            arr.flags.writeable = False

        self.infection_prob = _as_float_array(infection_prob, "infection_prob", self.n_people)
        self.isolation_cost = _as_float_array(isolation_cost, "isolation_cost", self.n_people)
        self.closure_cost = _as_float_array(closure_cost, "closure_cost", self.n_facilities)
        self.budget = float(budget)

        if person_labels is not None and len(person_labels) != self.n_people:
            raise ValueError("person_labels length mismatch")
        if facility_labels is not None and len(facility_labels) != self.n_facilities:
            raise ValueError("facility_labels length mismatch")
        self.person_labels = tuple(person_labels) if person_labels is not None else None
        self.facility_labels = tuple(facility_labels) if facility_labels is not None else None

        self._ids_valid = bool(
            len(self.edge_person) == 0
            or (
                self.edge_person.min() >= 0
                and self.edge_person.max() < self.n_people
                and self.edge_facility.min() >= 0
                and self.edge_facility.max() < self.n_facilities
            )
        )
        if self._ids_valid:
            self._person_indptr = _indptr(self.edge_person, self.n_people)
            self._facility_order = np.lexsort((self.edge_person, self.edge_facility))
            self._facility_order.flags.writeable = False
            self._facility_indptr = _indptr(
                self.edge_facility[self._facility_order], self.n_facilities
            )
        else:
            self._person_indptr = None
            self._facility_order = None
            self._facility_indptr = None

    # -- structure -----------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edge_person)

    def require_valid_ids(self) -> None:
        if not self._ids_valid:
            raise ValueError("instance has edges referencing out-of-range ids")

    def facilities_of_person(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        """Ids and time shares of the facilities person ``u`` visits."""
        self.require_valid_ids()
        if not 0 <= u < self.n_people:
            raise IndexError(f"person id {u} out of range")
        lo, hi = self._person_indptr[u], self._person_indptr[u + 1]
        return self.edge_facility[lo:hi], self.edge_share[lo:hi]

    def people_of_facility(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Ids and time shares of the people visiting facility ``v``."""
        self.require_valid_ids()
        if not 0 <= v < self.n_facilities:
            raise IndexError(f"facility id {v} out of range")
        lo, hi = self._facility_indptr[v], self._facility_indptr[v + 1]
        idx = self._facility_order[lo:hi]
        return self.edge_person[idx], self.edge_share[idx]

    def person_degrees(self) -> np.ndarray:
        self.require_valid_ids()
        return np.diff(self._person_indptr)

    def facility_sizes(self) -> np.ndarray:
        self.require_valid_ids()
        return np.diff(self._facility_indptr)

    # -- equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.n_people == other.n_people
            and self.n_facilities == other.n_facilities
            and self.budget == other.budget
            and np.array_equal(self.edge_person, other.edge_person)
            and np.array_equal(self.edge_facility, other.edge_facility)
            and np.array_equal(self.edge_share, other.edge_share)
            and np.array_equal(self.infection_prob, other.infection_prob)
            and np.array_equal(self.isolation_cost, other.isolation_cost)
            and np.array_equal(self.closure_cost, other.closure_cost)
            and self.person_labels == other.person_labels
            and self.facility_labels == other.facility_labels
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"Instance(n_people={self.n_people}, n_facilities={self.n_facilities}, "
            f"n_edges={self.n_edges}, budget={self.budget})"
        )


def _indptr(sorted_ids: np.ndarray, n: int) -> np.ndarray:
    counts = np.bincount(sorted_ids, minlength=n) if len(sorted_ids) else np.zeros(n, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indptr.flags.writeable = False
    return indptr


# -- validation ---------------------------------------------------------------


def validate(instance: Instance) -> list[str]:
    """Check every model invariant, returning one message per violation.

    A valid instance yields an empty list. Violations are data, not faults:
    instances that break the rules can still be constructed and inspected.
    """
    out: list[str] = []
    n_p, n_f = instance.n_people, instance.n_facilities
    pu, fv, w = instance.edge_person, instance.edge_facility, instance.edge_share

    seen_pairs = set()
    # Per-person sums count only edges that individually pass their own checks,
    # so a single bad edge yields a single violation.
    share_ok = np.ones(len(w), dtype=bool)
    for i in range(len(pu)):
        u, v, s = int(pu[i]), int(fv[i]), float(w[i])
        where = f"edge {i} (person {u}, facility {v})"
        if not 0 <= u < n_p:
            out.append(f"{where}: person id out of range [0, {n_p})")
            share_ok[i] = False
        if not 0 <= v < n_f:
            out.append(f"{where}: facility id out of range [0, {n_f})")
            share_ok[i] = False
        if not (math.isfinite(s) and 0.0 <= s <= 1.0):
            out.append(f"{where}: timeShare {s} outside [0, 1]")
            share_ok[i] = False
        if (u, v) in seen_pairs:
            out.append(f"{where}: duplicate edge for this person/facility pair")
            share_ok[i] = False
        seen_pairs.add((u, v))

    if n_p:
        in_range = share_ok & (pu >= 0) & (pu < n_p)
        sums = np.bincount(pu[in_range], weights=w[in_range], minlength=n_p)
        for u in np.nonzero(sums > 1.0)[0]:
            out.append(
                f"person {int(u)}: day oversubscribed (timeShare sum {sums[u]:.6g} > 1)"
            )

    for u, p in enumerate(instance.infection_prob):
        if not (math.isfinite(p) and 0.0 <= p <= 1.0):
            out.append(f"person {u}: infectionProb {p} outside [0, 1]")
    for u, c in enumerate(instance.isolation_cost):
        if not (math.isfinite(c) and c >= 0.0):
            out.append(f"person {u}: isolationCost {c} is negative or non-finite")
    for v, c in enumerate(instance.closure_cost):
        if not (math.isfinite(c) and c >= 0.0):
            out.append(f"facility {v}: closureCost {c} is negative or non-finite")
    if not (math.isfinite(instance.budget) and instance.budget >= 0.0):
        out.append(f"budget {instance.budget} is negative or non-finite")
    return out


# -- solutions ----------------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    """A chosen set of closures and isolations plus the money they consume.

    ``spent`` is the exactly-rounded sum (math.fsum) of closure costs in
    ascending facility id followed by isolation costs in ascending person id.
    """

    closed_facilities: frozenset[int]
    isolated_people: frozenset[int]
    spent: float

    @staticmethod
    def build(instance: Instance, closed: Iterable[int] = (), isolated: Iterable[int] = ()) -> "Solution":
        closed_f = frozenset(int(v) for v in closed)
        isolated_p = frozenset(int(u) for u in isolated)
        spent = spend_of(instance, closed_f, isolated_p)
        return Solution(closed_f, isolated_p, spent)

    @staticmethod
    def empty() -> "Solution":
        return Solution(frozenset(), frozenset(), 0.0)

    def to_json_dict(self) -> dict:
        return {
            "closedFacilities": sorted(self.closed_facilities),
            "isolatedPeople": sorted(self.isolated_people),
            "spent": self.spent,
        }


def spend_of(instance: Instance, closed: Iterable[int], isolated: Iterable[int]) -> float:
    costs = [float(instance.closure_cost[v]) for v in sorted(closed)]
    costs += [float(instance.isolation_cost[u]) for u in sorted(isolated)]
    return math.fsum(costs)


def solution_violations(instance: Instance, solution: Solution, budget: float | None = None) -> list[str]:
    """Check a solution against an instance; empty list when consistent."""
    out = []
    for v in solution.closed_facilities:
        if not 0 <= v < instance.n_facilities:
            out.append(f"closed facility id {v} out of range")
    for u in solution.isolated_people:
        if not 0 <= u < instance.n_people:
            out.append(f"isolated person id {u} out of range")
    if out:
        return out
    expected = spend_of(instance, solution.closed_facilities, solution.isolated_people)
    if solution.spent != expected:
        out.append(f"spent {solution.spent!r} does not match recomputed {expected!r}")
    cap = instance.budget if budget is None else budget
    if expected > cap:
        out.append(f"spent {expected!r} exceeds budget {cap!r}")
    return out


# -- serialization -------------------------------------------------------------


def save_instance(instance: Instance) -> bytes:
    """Serialize to the versioned JSON schema (UTF-8, no NaN/Infinity)."""
    doc = {
        "version": SCHEMA_VERSION,
        "nPeople": instance.n_people,
        "nFacilities": instance.n_facilities,
        "budget": instance.budget,
        "infectionProb": instance.infection_prob.tolist(),
        "isolationCost": instance.isolation_cost.tolist(),
        "closureCost": instance.closure_cost.tolist(),
        "edges": [
            [int(u), int(v), float(s)]
            for u, v, s in zip(instance.edge_person, instance.edge_facility, instance.edge_share)
        ],
    }
    if instance.person_labels is not None:
        doc["personLabels"] = list(instance.person_labels)
    if instance.facility_labels is not None:
        doc["facilityLabels"] = list(instance.facility_labels)
    return (json.dumps(doc, allow_nan=False, separators=(",", ":")) + "\n").encode("utf-8")


def _reject_constant(token: str):
    raise SchemaError(f"non-finite number {token!r} is not permitted")


def load_instance(data: bytes | str) -> Instance:
    """Parse and validate an instance from its JSON schema.

    Raises :class:`SchemaError` for malformed documents and
    :class:`InvalidInstanceError` (with the violation list) for documents
    that parse but break model invariants.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top-level value must be an object")

    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version!r} (expected {SCHEMA_VERSION})")

    required = ["nPeople", "nFacilities", "budget", "infectionProb", "isolationCost", "closureCost", "edges"]
    for key in required:
        if key not in doc:
            raise SchemaError(f"missing required field {key!r}")

    n_people, n_facilities = doc["nPeople"], doc["nFacilities"]
    if not isinstance(n_people, int) or not isinstance(n_facilities, int):
        raise SchemaError("nPeople and nFacilities must be integers")
    for key, expect_len in (("infectionProb", n_people), ("isolationCost", n_people), ("closureCost", n_facilities)):
        arr = doc[key]
        if not isinstance(arr, list) or len(arr) != expect_len:
            raise SchemaError(f"{key} must be an array of length {expect_len}")
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in arr):
            raise SchemaError(f"{key} must contain only numbers")
    if not isinstance(doc["budget"], (int, float)) or isinstance(doc["budget"], bool):
        raise SchemaError("budget must be a number")
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise SchemaError("edges must be an array")
    for i, e in enumerate(edges):
        if (
            not isinstance(e, list)
            or len(e) != 3
            or not isinstance(e[0], int)
            or not isinstance(e[1], int)
            or not isinstance(e[2], (int, float))
            or isinstance(e[2], bool)
        ):
            raise SchemaError(f"edges[{i}] must be a [person, facility, timeShare] triple")

    labels = {}
    for key, expect_len in (("personLabels", n_people), ("facilityLabels", n_facilities)):
        if key in doc:
            arr = doc[key]
            if not isinstance(arr, list) or len(arr) != expect_len or not all(isinstance(x, str) for x in arr):
                raise SchemaError(f"{key} must be an array of {expect_len} strings")
            labels[key] = arr

    instance = Instance(
        n_people=n_people,
        n_facilities=n_facilities,
        edges=[(e[0], e[1], float(e[2])) for e in edges],
        infection_prob=doc["infectionProb"],
        isolation_cost=doc["isolationCost"],
        closure_cost=doc["closureCost"],
        budget=float(doc["budget"]),
        person_labels=labels.get("personLabels"),
        facility_labels=labels.get("facilityLabels"),
    )
    violations = validate(instance)
    if violations:
        raise InvalidInstanceError(violations)
    return instance
