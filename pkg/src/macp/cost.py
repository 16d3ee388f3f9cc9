"""Expected per-period servicing cost of a caching policy.

Two independent evaluators of the multicast objective are provided:
``cost_bruteforce`` literally enumerates all 2^(N+1) requesting subsets
and is the ground truth for small N, while ``cost_closed_form`` exploits
the independence of areas to reach the same value in O(N * I).  The
unicast metric used by popularity/unicast baselines lives here too.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .model import CachingPolicy, Instance

DEFAULT_BRUTEFORCE_CAP = 16


@dataclass(frozen=True, eq=False)
class CostBreakdown:
    """Expected cost per service period, split by file and by transmitter."""

    total: float
    per_file: np.ndarray
    mbs_component: float
    scbs_component: float

    def __post_init__(self):
        pf = np.array(self.per_file, dtype=np.float64)
        pf.setflags(write=False)
        object.__setattr__(self, "per_file", pf)
        object.__setattr__(self, "total", float(self.total))
        object.__setattr__(self, "mbs_component", float(self.mbs_component))
        object.__setattr__(self, "scbs_component", float(self.scbs_component))

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "per_file": self.per_file.tolist(),
            "mbs_component": self.mbs_component,
            "scbs_component": self.scbs_component,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CostBreakdown":
        return cls(
            total=data["total"],
            per_file=data["per_file"],
            mbs_component=data["mbs_component"],
            scbs_component=data["scbs_component"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _breakdown(mbs_pf: np.ndarray, scbs_pf: np.ndarray) -> CostBreakdown:
    mbs = float(mbs_pf.sum())
    scbs = float(scbs_pf.sum())
    return CostBreakdown(
        total=mbs + scbs,
        per_file=mbs_pf + scbs_pf,
        mbs_component=mbs,
        scbs_component=scbs,
    )


def cost_bruteforce(
    instance: Instance,
    policy: CachingPolicy,
    max_scbs: int = DEFAULT_BRUTEFORCE_CAP,
) -> CostBreakdown:
    """Exact objective by enumerating every non-empty requesting subset.

    For each file and each subset r of the N+1 areas, adds
    ``P(r requests) * (cost_backhaul + cost_mbs_tx)`` when r triggers the
    macro cell, else ``P(r requests) * sum of the requesters' SCBS costs``.
    Work is Theta(I * 2^(N+1)); refuses to run above ``max_scbs``.
    """
    n = instance.num_scbs
    if n > max_scbs:
        raise CapacityError(
            f"brute-force enumeration over 2^{n + 1} subsets exceeds the cap of "
            f"{max_scbs} SCBSs; use cost_closed_form instead"
        )
    policy.check_feasible(instance)

    p = instance.request_probabilities()
    c = instance.cost_scbs_tx
    c_mbs = instance.cost_backhaul + instance.cost_mbs_tx
    n_areas = n + 1

    mbs_pf = np.zeros(instance.num_files)
    scbs_pf = np.zeros(instance.num_files)
    for i in range(instance.num_files):
        pi = p[:, i].tolist()
        qi = [1.0 - v for v in pi]
        # bit a of the mask = "area a requested"; bit 0 is the macro-only area
        uncached_bits = 1
        for a in range(1, n_areas):
            if not policy.placement[a - 1, i]:
                uncached_bits |= 1 << a
        for mask in range(1, 1 << n_areas):
            prob = 1.0
            for a in range(n_areas):
                prob *= pi[a] if (mask >> a) & 1 else qi[a]
            if prob == 0.0:
                continue
            if mask & uncached_bits:
                mbs_pf[i] += prob * c_mbs
            else:
                local = 0.0
                for a in range(1, n_areas):
                    if (mask >> a) & 1:
                        local += c[a - 1]
                scbs_pf[i] += prob * local
    return _breakdown(mbs_pf, scbs_pf)


def cost_closed_form(instance: Instance, policy: CachingPolicy) -> CostBreakdown:
    """Exact objective in O(N * I), factored over independent areas.

    For file i with cached area set C and per-area no-request probabilities
    q, let A = 1 - prod(q) (some area requests) and
    B = prod(q over areas outside C) * (1 - prod(q over C)) (requests occur
    and all fall inside C).  The macro cell transmits with probability
    A - B, and each cached SCBS n serves locally with probability
    p_n * prod(q outside C).
    """
    policy.check_feasible(instance)
    p = instance.request_probabilities()
    q = 1.0 - p
    cached = policy.placement.astype(bool)
    c = instance.cost_scbs_tx
    c_mbs = instance.cost_backhaul + instance.cost_mbs_tx

    a = 1.0 - q.prod(axis=0)
    v = np.where(cached, q[1:], 1.0).prod(axis=0)
    u = q[0] * np.where(cached, 1.0, q[1:]).prod(axis=0)
    b = u * (1.0 - v)
    w = (c[:, None] * p[1:] * cached).sum(axis=0)

    return _breakdown(c_mbs * (a - b), u * w)


def _file_term(instance: Instance, file: int, cached_rows: np.ndarray) -> float:
    """Single-file contribution to the objective for a given cached row mask."""
    p = -np.expm1(-instance.demand[:, file] * instance.deadline)
    q = 1.0 - p
    c = instance.cost_scbs_tx
    c_mbs = instance.cost_backhaul + instance.cost_mbs_tx
    a = 1.0 - q.prod()
    v = np.where(cached_rows, q[1:], 1.0).prod()
    u = q[0] * np.where(cached_rows, 1.0, q[1:]).prod()
    b = u * (1.0 - v)
    w = (c * p[1:] * cached_rows).sum()
    return float(c_mbs * (a - b) + u * w)


def marginal_cost(
    instance: Instance,
    policy: CachingPolicy,
    scbs: int,
    file: int,
    base: CostBreakdown | None = None,
) -> float:
    """Objective value after additionally caching ``file`` at SCBS ``scbs``.

    Only the placed file's term is recomputed; all other per-file terms are
    reused from ``base`` (the closed-form breakdown of ``policy``, computed
    here when not supplied).
    """
    n = instance.num_scbs
    if not 1 <= scbs <= n:
        raise ValueError(f"scbs id {scbs} outside 1..{n}")
    if not 0 <= file < instance.num_files:
        raise ValueError(f"file index {file} outside 0..{instance.num_files - 1}")
    row = scbs - 1
    if policy.placement[row, file]:
        raise ValueError(f"file {file} is already cached at SCBS {scbs}")
    if policy.placement[row].sum() >= instance.cache_size[row]:
        raise ValueError(f"cache of SCBS {scbs} is full")
    if base is None:
        base = cost_closed_form(instance, policy)
    cached_rows = policy.placement[:, file].astype(bool)
    cached_rows[row] = True
    return base.total - float(base.per_file[file]) + _file_term(instance, file, cached_rows)


def cost_unicast(instance: Instance, policy: CachingPolicy) -> CostBreakdown:
    """Expected per-period cost when every request gets its own transmission.

    Each of the lambda*d expected requests costs the local SCBS rate when
    the file is cached there, and a backhaul-plus-macro transmission
    otherwise; macro-only-area requests always pay the latter.
    """
    policy.check_feasible(instance)
    lam = instance.demand * instance.deadline
    cached = policy.placement.astype(bool)
    c = instance.cost_scbs_tx
    c_mbs = instance.cost_backhaul + instance.cost_mbs_tx

    scbs_pf = (lam[1:] * cached * c[:, None]).sum(axis=0)
    mbs_pf = c_mbs * ((lam[1:] * ~cached).sum(axis=0) + lam[0])
    return _breakdown(mbs_pf, scbs_pf)
