#!/usr/bin/env python3
"""Three independent routes to the same expected cost.

A random instance is evaluated (a) by literally enumerating all
2^(N+1) requesting subsets, (b) by the linear-time closed form, and
(c) by Monte Carlo replay of the Poisson request process.  The first
two must agree to machine precision; the simulation mean converges to
them at the usual 1/sqrt(periods) rate.
"""

import numpy as np

from macp import (
    Instance,
    SimConfig,
    cost_bruteforce,
    cost_closed_form,
    cost_unicast,
    simulate,
)
from macp.model import CachingPolicy

rng = np.random.default_rng(2)
N, I = 4, 5
instance = Instance(
    num_scbs=N,
    num_files=I,
    cache_size=[2] * N,
    cost_backhaul=0.7,
    cost_mbs_tx=0.9,
    cost_scbs_tx=rng.uniform(0.0, 0.3, N),
    demand=rng.uniform(0.0, 1.2, (N + 1, I)),
    deadline=1.5,
)
x = np.zeros((N, I), dtype=np.int8)
for row in range(N):
    x[row, rng.choice(I, size=2, replace=False)] = 1
policy = CachingPolicy(x)

brute = cost_bruteforce(instance, policy)
closed = cost_closed_form(instance, policy)
print(f"literal enumeration: {brute.total:.12f}")
print(f"closed form:         {closed.total:.12f}")
print(f"difference:          {abs(brute.total - closed.total):.2e}")
print(f"macro / small-cell split: {closed.mbs_component:.4f} / {closed.scbs_component:.4f}")

print("\nMonte Carlo, multicast service:")
for periods in (1_000, 10_000, 100_000):
    rep = simulate(instance, policy, SimConfig(periods, "multicast", seed=11))
    z = abs(rep.mean_cost_per_period - closed.total) / rep.std_error
    print(f"  {periods:>7d} periods: mean {rep.mean_cost_per_period:.4f} "
          f"(stderr {rep.std_error:.4f}, {z:.2f} sigma from analytic)")

unicast = cost_unicast(instance, policy)
print(f"\nUnicast metric (every request its own transmission): {unicast.total:.4f}")
rep = simulate(instance, policy, SimConfig(100_000, "unicast", seed=12))
z = abs(rep.mean_cost_per_period - unicast.total) / rep.std_error
print(f"  simulated: {rep.mean_cost_per_period:.4f} ({z:.2f} sigma from analytic)")
print(f"  transmissions: {rep.unicast_transmissions} requests served, "
      f"{rep.mbs_transmissions} by the macro cell")
