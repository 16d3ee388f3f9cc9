"""Cache placement solvers.

``greedy_macp`` is the multicast-aware heuristic (commit the single best
placement until every cache is full), ``popularity_placement`` is the
conventional per-SCBS top-k baseline, and ``exact_optimal`` exhaustively
enumerates feasible placements as an optimality oracle for tiny instances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapacityError
from .model import CachingPolicy, Instance

DEFAULT_POLICY_CAP = 10_000_000


@dataclass(frozen=True, eq=False)
class SolverReport:
    """Solver output: the policy, a placement audit trail, and work counters.

    ``trace`` holds one ``(iteration, scbs, file, objective_after)`` entry
    per committed placement (greedy only; exhaustive search leaves it
    empty).  ``evaluations`` counts candidate objective evaluations.
    """

    policy: CachingPolicy
    trace: tuple[tuple[int, int, int, float], ...]
    evaluations: int


def greedy_macp(instance: Instance) -> SolverReport:
    """Greedy multicast-aware placement.

    Starts from empty caches; each iteration evaluates the objective after
    every still-possible single placement and commits the cheapest one,
    until all caches are full.  Ties go to the smallest SCBS id, then the
    smallest file index.
    """
    n, i = instance.num_scbs, instance.num_files
    p = instance.request_probabilities()
    q = 1.0 - p
    qs = q[1:]
    q0 = q[0]
    c = instance.cost_scbs_tx
    c_mbs = instance.cost_backhaul + instance.cost_mbs_tx
    sizes = instance.cache_size
    budget = int(sizes.sum())

    cached = np.zeros((n, i), dtype=bool)
    fill = np.zeros(n, dtype=np.int64)
    zero_q = qs == 0.0

    a_all = 1.0 - q.prod(axis=0)
    # per-file objective terms under the current (initially empty) policy
    terms = c_mbs * a_all
    total = float(terms.sum())

    trace: list[tuple[int, int, int, float]] = []
    evaluations = 0

    for iteration in range(1, budget + 1):
        # Products of q over each file's uncached SCBS areas, with exact-zero
        # factors counted separately so that "product without one area" can
        # be formed by division without ever dividing by zero.
        un = np.where(cached, 1.0, qs)
        un_zero = (~cached) & zero_q
        zc = un_zero.sum(axis=0)
        prodnz = np.where(un_zero, 1.0, un).prod(axis=0)

        denom = np.where(un_zero, 1.0, un)
        rem_zeros = zc[None, :] - un_zero
        u_minus = np.where(rem_zeros > 0, 0.0, prodnz[None, :] / denom) * q0[None, :]

        v = np.where(cached, qs, 1.0).prod(axis=0)
        w = (c[:, None] * p[1:] * cached).sum(axis=0)

        b_new = u_minus * (1.0 - v[None, :] * qs)
        cand_terms = c_mbs * (a_all[None, :] - b_new) + u_minus * (
            w[None, :] + c[:, None] * p[1:]
        )
        cand_total = (total - terms)[None, :] + cand_terms

        valid = (~cached) & (fill < sizes)[:, None]
        evaluations += int(valid.sum())
        flat = int(np.argmin(np.where(valid, cand_total, np.inf)))
        row, file = divmod(flat, i)

        cached[row, file] = True
        fill[row] += 1
        terms = terms.copy()
        terms[file] = cand_terms[row, file]
        total = float(terms.sum())
        trace.append((iteration, row + 1, file, total))

    policy = CachingPolicy(cached.astype(np.int8))
    return SolverReport(policy=policy, trace=tuple(trace), evaluations=evaluations)


def popularity_placement(instance: Instance) -> CachingPolicy:
    """Each SCBS independently caches its locally most demanded files.

    Ranks files by the SCBS's own request rate, ties broken by the smaller
    file index, and fills the cache with the top entries.
    """
    n, i = instance.num_scbs, instance.num_files
    x = np.zeros((n, i), dtype=np.int8)
    ranks = np.arange(i)
    for row in range(n):
        k = int(instance.cache_size[row])
        if k == 0:
            continue
        order = np.lexsort((ranks, -instance.demand[row + 1]))
        x[row, order[:k]] = 1
    return CachingPolicy(x)


def iter_feasible_placements(num_files: int, cache_sizes) -> Iterator[tuple[np.ndarray, ...]]:
    """Yield every 0/1 placement matrix with row sums within the cache sizes.

    Matrices arrive in lexicographic row-major order (all-zeros first), so
    a first-strict-minimum scan picks the lexicographically smallest
    optimum deterministically.
    """
    per_row = []
    for s in cache_sizes:
        rows = []
        for k in range(min(int(s), num_files) + 1):
            for combo in itertools.combinations(range(num_files), k):
                row = np.zeros(num_files, dtype=np.int8)
                row[list(combo)] = 1
                rows.append(row)
        rows.sort(key=lambda r: r.tolist())
        per_row.append(rows)
    return itertools.product(*per_row)


def count_feasible_placements(num_files: int, cache_sizes) -> int:
    """Number of matrices ``iter_feasible_placements`` would yield."""
    return math.prod(
        sum(math.comb(num_files, k) for k in range(min(int(s), num_files) + 1))
        for s in cache_sizes
    )


def exact_optimal(instance: Instance, max_policies: int = DEFAULT_POLICY_CAP) -> SolverReport:
    """Minimize the objective by exhaustive search over feasible placements.

    Only viable on tiny instances; raises CapacityError with the search
    space cardinality when it exceeds ``max_policies``.  Among equal-cost
    optima the lexicographically smallest placement matrix wins.
    """
    n, i = instance.num_scbs, instance.num_files
    space = count_feasible_placements(i, instance.cache_size)
    if space > max_policies:
        raise CapacityError(
            f"{space} feasible placements exceed the enumeration cap of {max_policies}"
        )

    p = instance.request_probabilities()
    q = 1.0 - p
    qs = q[1:]
    c = instance.cost_scbs_tx
    c_mbs = instance.cost_backhaul + instance.cost_mbs_tx
    a_all = 1.0 - q.prod(axis=0)

    best_cost = math.inf
    best: np.ndarray | None = None
    evaluations = 0
    for rows in iter_feasible_placements(i, instance.cache_size):
        x = np.array(rows, dtype=bool).reshape(n, i)
        v = np.where(x, qs, 1.0).prod(axis=0)
        u = q[0] * np.where(x, 1.0, qs).prod(axis=0)
        w = (c[:, None] * p[1:] * x).sum(axis=0)
        cost = float((c_mbs * (a_all - u * (1.0 - v)) + u * w).sum())
        evaluations += 1
        if cost < best_cost:
            best_cost = cost
            best = x
    assert best is not None
    policy = CachingPolicy(best.astype(np.int8))
    return SolverReport(policy=policy, trace=(), evaluations=evaluations)
