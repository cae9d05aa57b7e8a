"""Acceptance gate: one test per release criterion, each printing PASS/FAIL.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Every tolerance is pinned here, not configurable.
"""

import itertools
import math
import statistics
import time

import numpy as np
from scipy import stats

import riskcut as rc
from riskcut.experiments import replicate_seed
from riskcut.ilp import constraint_violations, objective_value
from conftest import make_random_instance
from naive_risk import naive_facility_risks, naive_person_risks, naive_total_risk
from test_ilp import forced_point

# Expected people per facility for the 4..1000 sizes at exponent 1.1 and four
# daily activities, measured once on this generator; used to price isolation
# as a fixed share of the population across differently sized runs.
PEOPLE_PER_FACILITY = 33.2


def report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_formula_fidelity_vs_naive_reimplementation():
    rng = np.random.default_rng(1000)
    started = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        inst = make_random_instance(rng, max_people=20, max_facilities=10)
        closed = [v for v in range(inst.n_facilities) if rng.random() < 0.25]
        isolated = [u for u in range(inst.n_people) if rng.random() < 0.25]
        for c, i in ((closed, isolated), ((), ())):
            sol = rc.Solution.build(inst, c, i)
            df = np.abs(rc.facility_risks(inst, sol) - naive_facility_risks(inst, c, i)).max(initial=0.0)
            dp = np.abs(rc.person_risks(inst, sol) - naive_person_risks(inst, c, i)).max(initial=0.0)
            dt = abs(rc.total_risk_value(inst, sol) - naive_total_risk(inst, c, i))
            worst = max(worst, df, dp, dt)
    elapsed = time.perf_counter() - started
    ok = worst <= 1e-12 and elapsed < 10.0
    report(
        "formula fidelity",
        ok,
        f"1000 instances, max deviation {worst:.2e} (tol 1e-12), {elapsed:.1f}s (< 10s)",
    )


def test_oracle_dominance_on_small_instances():
    rng = np.random.default_rng(2000)
    started = time.perf_counter()
    worst_gap = 0.0
    for _ in range(200):
        inst = make_random_instance(rng, max_people=6, max_facilities=5)
        sweep = rc.sweep(inst)
        oracle = rc.solve_exact(inst)
        assert rc.solution_violations(inst, sweep.best.solution) == []
        assert rc.solution_violations(inst, oracle.optimum) == []
        gap = oracle.optimal_risk - sweep.best.total_risk
        worst_gap = max(worst_gap, gap)
        assert sweep.best.total_risk >= oracle.optimal_risk - 1e-12
    elapsed = time.perf_counter() - started
    ok = worst_gap <= 1e-12 and elapsed < 60.0
    report(
        "oracle dominance",
        ok,
        f"200 instances, oracle never above greedy (worst slack {worst_gap:.2e}), "
        f"{elapsed:.1f}s (< 60s)",
    )


def test_subset_sum_family_exact_ratios():
    costs = [2.0, 3.0, 5.0]
    total = sum(costs)
    exact_hits = 0
    for budget in range(0, 11):
        inst = rc.subset_sum_fixture(costs, float(budget))
        oracle = rc.solve_exact(inst)
        ratio = rc.total_risk(inst, oracle.optimum).ratio
        best_sum = max(
            (sum(c) for n in range(len(costs) + 1) for c in itertools.combinations(costs, n) if sum(c) <= budget),
            default=0.0,
        )
        expected = (total - best_sum) / total
        assert ratio == expected, f"budget {budget}: {ratio!r} != {expected!r}"
        exact_hits += 1
    report(
        "subset-sum family",
        exact_hits == 11,
        f"costs {{2,3,5}}, budgets 0..10 all bitwise-equal to (sum-best)/sum",
    )


def test_one_percent_budget_reaches_quarter_risk():
    started = time.perf_counter()
    ratios = []
    for seed in range(1, 6):
        cfg = rc.GenConfig(
            seed=seed,
            n_facilities=500,
            min_facility_size=4,
            max_facility_size=1000,
            size_alpha=1.1,
            avg_activities=4.0,
            infect_alpha=2.0,
            cost_mu=1.1,
            cost_sigma=0.5,
            # prices isolation so the whole budget could isolate about 1% of
            # the expected population
            isolation_cost_fraction=0.006,
            budget_fraction=0.01,
        )
        inst = rc.generate(cfg)
        sweep = rc.sweep(inst)
        ratios.append(sweep.ratio_of(sweep.best))
    elapsed = time.perf_counter() - started
    median = statistics.median(ratios)
    ok = median <= 0.25 and elapsed < 300.0
    report(
        "1% budget risk cut",
        ok,
        f"5 seeds, best-split ratios {[f'{r:.3f}' for r in ratios]}, "
        f"median {median:.4f} (<= 0.25), {elapsed:.0f}s (< 300s)",
    )


def test_risk_improvement_grows_with_population():
    started = time.perf_counter()
    cells = (100, 250, 500, 750, 1000)
    mean_ratios = []
    for cell_index, n_facilities in enumerate(cells):
        # keep the share of the population the budget can isolate constant
        # (about 5%) as the population scales with the facility count
        frac = 1.0 / (0.05 * PEOPLE_PER_FACILITY * n_facilities)
        ratios = []
        for rep in range(5):
            cfg = rc.GenConfig(
                seed=replicate_seed(1, cell_index, rep),
                n_facilities=n_facilities,
                min_facility_size=4,
                max_facility_size=1000,
                size_alpha=1.1,
                avg_activities=4.0,
                infect_alpha=2.0,
                cost_mu=1.1,
                cost_sigma=0.5,
                isolation_cost_fraction=frac,
                budget_fraction=0.05,
            )
            inst = rc.generate(cfg)
            sweep = rc.sweep(inst)
            ratios.append(sweep.ratio_of(sweep.best))
        mean_ratios.append(math.fsum(ratios) / len(ratios))
    rho, _ = stats.spearmanr(cells, mean_ratios)
    elapsed = time.perf_counter() - started
    ok = rho < 0.0 and elapsed < 600.0
    report(
        "population scaling trend",
        ok,
        f"mean ratios {[f'{m:.3f}' for m in mean_ratios]} over facilities {list(cells)}, "
        f"spearman {rho:+.2f} (< 0), {elapsed:.0f}s (< 600s)",
    )


def test_ilp_linearization_exact_on_every_binary_point():
    rng = np.random.default_rng(3000)
    started = time.perf_counter()
    points = 0
    for _ in range(100):
        inst = make_random_instance(rng, max_people=6, max_facilities=4)
        model = rc.build_ilp(inst)
        n = inst.n_people + inst.n_facilities
        assert n <= 10
        for bits in itertools.product([0, 1], repeat=n):
            active, open_ = bits[: inst.n_people], bits[inst.n_people :]
            values = forced_point(inst, active, open_)
            rows = [c for c in constraint_violations(model, values, tol=1e-9) if c != "budget"]
            assert rows == [], f"linearization rows violated: {rows}"
            closed = [v for v in range(inst.n_facilities) if not open_[v]]
            isolated = [u for u in range(inst.n_people) if not active[u]]
            expected = naive_total_risk(inst, closed, isolated)
            assert abs(objective_value(model, values) - expected) <= 1e-9
            points += 1
        oracle = rc.solve_exact(inst)
        active = [0 if u in oracle.optimum.isolated_people else 1 for u in range(inst.n_people)]
        open_ = [0 if v in oracle.optimum.closed_facilities else 1 for v in range(inst.n_facilities)]
        values = forced_point(inst, active, open_)
        assert constraint_violations(model, values, tol=1e-9) == []
        assert abs(objective_value(model, values) - oracle.optimal_risk) <= 1e-9
    elapsed = time.perf_counter() - started
    report(
        "ILP linearization exactness",
        True,
        f"100 instances, {points} binary points all match within 1e-9, {elapsed:.1f}s",
    )


def test_generator_statistics_suite():
    started = time.perf_counter()
    for seed in range(1, 11):
        cfg = rc.GenConfig(
            seed=seed,
            n_facilities=300,
            min_facility_size=4,
            max_facility_size=800,
            size_alpha=1.1,
            avg_activities=4.0,
            infect_alpha=2.0,
            cost_mu=1.1,
            cost_sigma=0.5,
            isolation_cost_fraction=0.01,
            budget_fraction=0.02,
        )
        inst = rc.generate(cfg)
        sizes = inst.facility_sizes()
        assert sizes.min() >= 4 and sizes.max() <= 800
        for v in range(inst.n_facilities):
            people, _ = inst.people_of_facility(v)
            assert len(set(people.tolist())) == len(people)
        sums = np.bincount(inst.edge_person, weights=inst.edge_share, minlength=inst.n_people)
        assert (sums <= 1.0).all()
        mean_activities = inst.n_edges / inst.n_people
        assert abs(mean_activities - 4.0) / 4.0 < 0.05
        assert rc.save_instance(rc.generate(cfg)) == rc.save_instance(inst)
    elapsed = time.perf_counter() - started
    report(
        "generator statistics",
        True,
        f"10 seeds: bounds, distinctness, day budgets, activity means, "
        f"byte-identical regeneration, {elapsed:.1f}s",
    )
