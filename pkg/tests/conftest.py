import numpy as np
import pytest

from riskcut import Instance


@pytest.fixture
def f1() -> Instance:
    """Two people, one facility: f=(0.5, 0.25), p=(0.5, 1.0)."""
    return Instance(
        n_people=2,
        n_facilities=1,
        edges=[(0, 0, 0.5), (1, 0, 1.0)],
        infection_prob=[0.5, 0.25],
        isolation_cost=[4.0, 4.0],
        closure_cost=[10.0],
        budget=4.0,
    )


def make_random_instance(
    rng: np.random.Generator,
    max_people: int = 20,
    max_facilities: int = 10,
    budget: float | None = None,
) -> Instance:
    """Small random instance with valid, well-spread values."""
    n_p = int(rng.integers(1, max_people + 1))
    n_f = int(rng.integers(1, max_facilities + 1))
    pairs = [(u, v) for u in range(n_p) for v in range(n_f)]
    density = rng.uniform(0.2, 0.9)
    keep = [p for p in pairs if rng.random() < density]
    # Per-person shares drawn then normalized under 1 to keep the day feasible.
    shares = {}
    for u in range(n_p):
        mine = [p for p in keep if p[0] == u]
        if not mine:
            continue
        raw = rng.uniform(0.05, 1.0, len(mine))
        scale = min(1.0, 0.97 / raw.sum())
        for p, s in zip(mine, raw * scale):
            shares[p] = float(s)
    edges = [(u, v, shares[(u, v)]) for (u, v) in keep if (u, v) in shares]
    if budget is None:
        budget = float(rng.uniform(0.0, 3.0 * (n_p + n_f)))
    return Instance(
        n_people=n_p,
        n_facilities=n_f,
        edges=edges,
        infection_prob=rng.uniform(0.0, 1.0, n_p),
        isolation_cost=rng.uniform(0.0, 5.0, n_p),
        closure_cost=rng.uniform(0.0, 5.0, n_f),
        budget=budget,
    )
