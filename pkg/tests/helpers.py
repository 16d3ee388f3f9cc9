"""Shared builders for the test suite."""

import numpy as np

from macp import CachingPolicy, Instance, SppInstance

# Two-SCBS, three-file walkthrough instance: unit macro cost, free SCBS
# transmissions, one cache slot each, one-second period.
MOTIVATING_RATES = [
    [0.0, 0.0, 0.0],
    [0.51, 0.49, 0.0],
    [0.51, 0.0, 0.49],
]


def motivating_instance() -> Instance:
    return Instance(
        num_scbs=2,
        num_files=3,
        cache_size=[1, 1],
        cost_backhaul=0.4,
        cost_mbs_tx=0.6,
        cost_scbs_tx=[0.0, 0.0],
        demand=MOTIVATING_RATES,
        deadline=1.0,
    )


def motivating_optimal_policy() -> CachingPolicy:
    # second file at the first SCBS, third file at the second
    return CachingPolicy.from_pairs(2, 3, [(1, 1), (2, 2)])


def motivating_popular_policy() -> CachingPolicy:
    # the locally most popular file at both SCBSs
    return CachingPolicy.from_pairs(2, 3, [(1, 0), (2, 0)])


def random_instance(
    rng: np.random.Generator,
    max_scbs: int = 8,
    max_files: int = 6,
    rate_high: float = 2.0,
    heavy_scbs_costs: bool = False,
) -> Instance:
    """Random small instance.

    By default SCBS costs are scaled so their sum stays below the macro
    cost, which keeps placements cost-monotone; ``heavy_scbs_costs`` lifts
    that restriction (still respecting c_n <= c_W) to exercise the general
    cost regime.
    """
    n = int(rng.integers(1, max_scbs + 1))
    i = int(rng.integers(1, max_files + 1))
    cost_w = float(rng.uniform(0.2, 1.5))
    cost_b = float(rng.uniform(0.0, 1.5))
    if heavy_scbs_costs:
        c = rng.uniform(0.0, cost_w, size=n)
    else:
        c = rng.uniform(0.0, min(cost_w, (cost_b + cost_w) / n), size=n)
    demand = rng.uniform(0.0, rate_high, size=(n + 1, i))
    demand[rng.random(demand.shape) < 0.2] = 0.0
    if rng.random() < 0.3:
        demand[0] = 0.0
    return Instance(
        num_scbs=n,
        num_files=i,
        cache_size=rng.integers(0, i + 1, size=n),
        cost_backhaul=cost_b,
        cost_mbs_tx=cost_w,
        cost_scbs_tx=c,
        demand=demand,
        deadline=float(rng.uniform(0.2, 3.0)),
    )


def random_policy(rng: np.random.Generator, instance: Instance) -> CachingPolicy:
    """Uniformly random feasible placement for the instance."""
    x = np.zeros((instance.num_scbs, instance.num_files), dtype=np.int8)
    for row in range(instance.num_scbs):
        k = int(rng.integers(0, instance.cache_size[row] + 1))
        if k:
            x[row, rng.choice(instance.num_files, size=k, replace=False)] = 1
    return CachingPolicy(x)


def random_spp(rng: np.random.Generator, max_elements: int = 6, max_subsets: int = 6) -> SppInstance:
    """Random set packing question over a small integer universe."""
    n = int(rng.integers(1, max_elements + 1))
    universe = list(range(1, n + 1))
    count = int(rng.integers(1, max_subsets + 1))
    subsets = []
    for _ in range(count):
        mask = rng.random(n) < rng.uniform(0.2, 0.8)
        subsets.append(frozenset(e for e, hit in zip(universe, mask) if hit))
    return SppInstance(frozenset(universe), tuple(subsets), int(rng.integers(0, count + 1)))
