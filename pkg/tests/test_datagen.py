import math

import numpy as np
import pytest

import riskcut as rc
from riskcut.generate import LogHistogram, truncated_power_law


def desk_config(seed: int, **overrides) -> rc.GenConfig:
    base = dict(
        seed=seed,
        n_facilities=200,
        min_facility_size=4,
        max_facility_size=500,
        size_alpha=1.1,
        avg_activities=4.0,
        infect_alpha=2.0,
        cost_mu=1.1,
        cost_sigma=0.5,
        isolation_cost_fraction=0.01,
        budget_fraction=0.05,
    )
    base.update(overrides)
    return rc.GenConfig(**base)


def test_same_seed_gives_byte_identical_instances():
    a = rc.save_instance(rc.generate(desk_config(123)))
    b = rc.save_instance(rc.generate(desk_config(123)))
    assert a == b


def test_different_seeds_differ():
    a = rc.save_instance(rc.generate(desk_config(1)))
    b = rc.save_instance(rc.generate(desk_config(2)))
    assert a != b


def test_generated_instance_is_valid_and_in_bounds():
    inst = rc.generate(desk_config(5))
    assert rc.validate(inst) == []
    sizes = inst.facility_sizes()
    assert sizes.min() >= 4 and sizes.max() <= 500
    # distinct memberships per facility
    for v in range(inst.n_facilities):
        people, _ = inst.people_of_facility(v)
        assert len(set(people.tolist())) == len(people)
    sums = np.bincount(inst.edge_person, weights=inst.edge_share, minlength=inst.n_people)
    assert (sums <= 1.0).all()


def test_population_matches_average_activities():
    inst = rc.generate(desk_config(6))
    mean_activities = inst.n_edges / inst.n_people
    assert abs(mean_activities - 4.0) / 4.0 < 0.05


def test_activity_counts_are_poisson_like():
    # Uniform membership makes per-person activity counts binomial, which at
    # this scale is Poisson-like: dispersion near 1 and mean near the target.
    cfg = desk_config(20, n_facilities=1000, max_facility_size=1000, avg_activities=5.0)
    inst = rc.generate(cfg)
    assert inst.n_people == int(inst.n_edges / 5.0 + 0.5)
    counts = inst.person_degrees()
    mean = counts.mean()
    dispersion = counts.var() / mean
    assert abs(mean - 5.0) / 5.0 < 0.05
    assert 0.7 < dispersion < 1.3


def test_size_histogram_thins_across_decades():
    cfg = desk_config(21, n_facilities=1000, min_facility_size=10, max_facility_size=10000)
    sizes = rc.generate(cfg).facility_sizes()
    decades = [
        np.count_nonzero((sizes >= 10) & (sizes < 100)),
        np.count_nonzero((sizes >= 100) & (sizes < 1000)),
        np.count_nonzero(sizes >= 1000),
    ]
    assert decades[0] > decades[1] > decades[2] > 0


def test_budget_identity_is_exact():
    cfg = desk_config(7)
    inst = rc.generate(cfg)
    assert inst.budget == cfg.budget_fraction * math.fsum(inst.closure_cost)
    assert (inst.isolation_cost == cfg.isolation_cost_fraction * inst.budget).all()


def test_membership_total_equals_size_total():
    inst = rc.generate(desk_config(8))
    assert inst.n_edges == int(inst.facility_sizes().sum())


def test_infeasible_population_reported():
    # Two facilities of exactly 3 people but a population rounded to 1.
    cfg = desk_config(9, n_facilities=2, min_facility_size=3, max_facility_size=3, avg_activities=8.0)
    with pytest.raises(rc.GenerationError, match="distinct members"):
        rc.generate(cfg)


def test_config_violations_reported_before_any_drawing():
    cfg = desk_config(10, min_facility_size=0, budget_fraction=0.0, size_alpha=-1)
    with pytest.raises(rc.GenerationError) as err:
        rc.generate(cfg)
    message = str(err.value)
    assert "minFacilitySize" in message
    assert "budgetFraction" in message
    assert "sizeAlpha" in message


def test_power_law_matches_analytic_cdf():
    # 1000 facilities sized 10..10000 with exponent 1.1: the sample must track
    # the truncated-Pareto CDF (Kolmogorov-Smirnov style bound for n = 1000),
    # with the bulk sitting far below the geometric midpoint of the range.
    rng = np.random.default_rng(0)
    alpha, lo, hi, n = 1.1, 10.0, 10000.0, 1000
    draws = np.sort(truncated_power_law(rng, alpha, lo, hi, n))
    assert draws.min() >= lo and draws.max() <= hi
    e = 1.0 - alpha
    cdf = (draws**e - lo**e) / (hi**e - lo**e)
    empirical = (np.arange(n) + 0.5) / n
    assert np.abs(cdf - empirical).max() < 0.06
    assert np.median(draws) < math.sqrt(lo * hi)


def test_power_law_alpha_one_branch():
    rng = np.random.default_rng(0)
    draws = truncated_power_law(rng, 1.0, 5.0, 500.0, 2000)
    assert draws.min() >= 5.0 and draws.max() <= 500.0


def test_higher_infect_alpha_thins_the_risky_tail():
    flat = rc.generate(desk_config(11, infect_alpha=2.0))
    steep = rc.generate(desk_config(11, infect_alpha=4.0))
    risky_flat = np.count_nonzero(flat.infection_prob > 0.1)
    risky_steep = np.count_nonzero(steep.infection_prob > 0.1)
    assert risky_steep < risky_flat


def test_summary_totals_and_histograms():
    inst = rc.generate(desk_config(12))
    summary = rc.summarize(inst)
    assert summary.n_edges == inst.n_edges
    assert summary.total_facility_size == inst.n_edges
    assert summary.budget == inst.budget
    assert summary.total_closure_cost == math.fsum(inst.closure_cost)
    assert sum(c for _, _, c in summary.facility_sizes.buckets) == inst.n_facilities
    people_counted = summary.activities_per_person.zeros + sum(
        c for _, _, c in summary.activities_per_person.buckets
    )
    assert people_counted == inst.n_people
    csv = summary.to_csv()
    assert csv.splitlines()[0] == "metric,bucketLo,bucketHi,count"


def test_empty_instance_summary_is_all_zero():
    summary = rc.summarize(rc.Instance(0, 0, [], [], [], [], 0.0))
    assert summary.facility_sizes == LogHistogram(0, ())
    assert summary.activities_per_person == LogHistogram(0, ())
    assert summary.n_edges == 0


def test_gen_config_json_round_trip():
    cfg = desk_config(13)
    assert rc.GenConfig.from_json_dict(cfg.to_json_dict()) == cfg
    with pytest.raises(rc.GenerationError, match="unknown"):
        rc.GenConfig.from_json_dict({"seed": 1, "bogus": 2})
