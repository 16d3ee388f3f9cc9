"""Problem data model: instances, caching policies, request probabilities.

Area indexing convention used throughout the package: areas are numbered
0..N, where area 0 is the macro-only region (users covered by no small
cell) and areas 1..N are the SCBS coverage areas.  Arrays that describe
SCBSs only (cache sizes, transmit costs, placement rows) are 0-based over
SCBS 1..N, so entry ``j`` belongs to SCBS ``j + 1``.  File indices are
plain 0-based.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

MBS_AREA = 0


def request_probability(rate: float, deadline: float) -> float:
    """Probability of at least one Poisson arrival within one service period.

    ``rate`` is in requests/second, ``deadline`` is the period length in
    seconds.  Returns ``1 - exp(-rate * deadline)``; below 1 except where
    the exponential underflows.
    """
    if not (math.isfinite(rate) and rate >= 0):
        raise ValueError(f"rate must be finite and non-negative, got {rate!r}")
    if not (math.isfinite(deadline) and deadline > 0):
        raise ValueError(f"deadline must be finite and positive, got {deadline!r}")
    return -math.expm1(-rate * deadline)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    """A complete cell: SCBS caches, transmission costs, and Poisson demand.

    Attributes
    ----------
    num_scbs : int
        N, number of small-cell base stations.
    num_files : int
        I, catalog size.  Files are unit sized.
    cache_size : (N,) int array
        Files each SCBS can hold.  Clamped to ``num_files`` on construction.
    cost_backhaul : float
        Cost of pulling one file over the macro backhaul.
    cost_mbs_tx : float
        Cost of one macro-cell transmission.
    cost_scbs_tx : (N,) float array
        Cost of one transmission by each SCBS; never exceeds ``cost_mbs_tx``.
    demand : (N+1, I) float array
        Request rates in requests/second.  Row 0 is the macro-only area,
        row n (n >= 1) is SCBS n.
    deadline : float
        Service period length d in seconds; requests are batched per period.
    """

    num_scbs: int
    num_files: int
    cache_size: np.ndarray
    cost_backhaul: float
    cost_mbs_tx: float
    cost_scbs_tx: np.ndarray
    demand: np.ndarray
    deadline: float

    def __post_init__(self):
        n, i = int(self.num_scbs), int(self.num_files)
        if n < 1:
            raise ValueError(f"num_scbs must be positive, got {n}")
        if i < 1:
            raise ValueError(f"num_files must be positive, got {i}")
        object.__setattr__(self, "num_scbs", n)
        object.__setattr__(self, "num_files", i)

        cache = np.array(self.cache_size, dtype=np.int64)
        if cache.shape != (n,):
            raise ValueError(f"cache_size must have shape ({n},), got {cache.shape}")
        if (cache < 0).any():
            raise ValueError("cache sizes must be non-negative")
        # caching more than the catalog is meaningless
        np.minimum(cache, i, out=cache)
        object.__setattr__(self, "cache_size", _readonly(cache))

        for name in ("cost_backhaul", "cost_mbs_tx", "deadline"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {v!r}")
            object.__setattr__(self, name, v)
        if self.deadline <= 0:
            raise ValueError("deadline must be strictly positive")

        c = np.array(self.cost_scbs_tx, dtype=np.float64)
        if c.shape != (n,):
            raise ValueError(f"cost_scbs_tx must have shape ({n},), got {c.shape}")
        if not np.isfinite(c).all() or (c < 0).any():
            raise ValueError("SCBS transmission costs must be finite and non-negative")
        if (c > self.cost_mbs_tx).any():
            raise ValueError("SCBS transmission cost may not exceed the MBS cost")
        object.__setattr__(self, "cost_scbs_tx", _readonly(c))

        dem = np.array(self.demand, dtype=np.float64)
        if dem.shape != (n + 1, i):
            raise ValueError(f"demand must have shape ({n + 1}, {i}), got {dem.shape}")
        if not np.isfinite(dem).all() or (dem < 0).any():
            raise ValueError("demand rates must be finite and non-negative")
        object.__setattr__(self, "demand", _readonly(dem))

    def request_probabilities(self) -> np.ndarray:
        """Per-area, per-file probability of at least one request in a period.

        Shape (N+1, I); row 0 is the macro-only area.
        """
        return -np.expm1(-self.demand * self.deadline)

    def to_dict(self) -> dict:
        return {
            "num_scbs": self.num_scbs,
            "num_files": self.num_files,
            "cache_size": self.cache_size.tolist(),
            "cost_backhaul": self.cost_backhaul,
            "cost_mbs_tx": self.cost_mbs_tx,
            "cost_scbs_tx": self.cost_scbs_tx.tolist(),
            "demand": self.demand.tolist(),
            "deadline": self.deadline,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        return cls(
            num_scbs=data["num_scbs"],
            num_files=data["num_files"],
            cache_size=data["cache_size"],
            cost_backhaul=data["cost_backhaul"],
            cost_mbs_tx=data["cost_mbs_tx"],
            cost_scbs_tx=data["cost_scbs_tx"],
            demand=data["demand"],
            deadline=data["deadline"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class CachingPolicy:
    """Binary placement matrix: ``placement[n-1, i] == 1`` iff SCBS n caches file i."""

    placement: np.ndarray

    def __post_init__(self):
        x = np.array(self.placement, dtype=np.int8)
        if x.ndim != 2:
            raise ValueError(f"placement must be a 2-D matrix, got ndim={x.ndim}")
        if not np.isin(x, (0, 1)).all():
            raise ValueError("placement entries must be 0 or 1")
        object.__setattr__(self, "placement", _readonly(x))

    @property
    def num_scbs(self) -> int:
        return self.placement.shape[0]

    @property
    def num_files(self) -> int:
        return self.placement.shape[1]

    @classmethod
    def empty(cls, num_scbs: int, num_files: int) -> "CachingPolicy":
        return cls(np.zeros((num_scbs, num_files), dtype=np.int8))

    @classmethod
    def from_pairs(
        cls, num_scbs: int, num_files: int, pairs: Iterable[tuple[int, int]]
    ) -> "CachingPolicy":
        """Build a policy from (scbs, file) placements; ``scbs`` is an area id in 1..N."""
        x = np.zeros((num_scbs, num_files), dtype=np.int8)
        for scbs, file in pairs:
            if not 1 <= scbs <= num_scbs:
                raise ValueError(f"scbs id {scbs} outside 1..{num_scbs}")
            x[scbs - 1, file] = 1
        return cls(x)

    def cached_areas(self, file: int) -> frozenset[int]:
        """Area ids (1..N) of the SCBSs holding ``file``."""
        return frozenset(int(n) + 1 for n in np.flatnonzero(self.placement[:, file]))

    def check_feasible(self, instance: Instance) -> None:
        """Raise ValueError unless this policy fits the instance's caches."""
        if self.placement.shape != (instance.num_scbs, instance.num_files):
            raise ValueError(
                f"placement shape {self.placement.shape} does not match instance "
                f"({instance.num_scbs}, {instance.num_files})"
            )
        fill = self.placement.sum(axis=1)
        over = np.flatnonzero(fill > instance.cache_size)
        if over.size:
            n = int(over[0])
            raise ValueError(
                f"SCBS {n + 1} holds {int(fill[n])} files but its cache size is "
                f"{int(instance.cache_size[n])}"
            )

    def to_json(self) -> str:
        return json.dumps(self.placement.tolist())

    @classmethod
    def from_json(cls, text: str) -> "CachingPolicy":
        return cls(json.loads(text))


def _area_mask(num_scbs: int, subset: Iterable[int]) -> np.ndarray:
    mask = np.zeros(num_scbs + 1, dtype=bool)
    for a in subset:
        if not 0 <= a <= num_scbs:
            raise ValueError(f"area id {a} outside 0..{num_scbs}")
        mask[a] = True
    return mask


def subset_probability(instance: Instance, subset: Iterable[int], file: int) -> float:
    """Probability that exactly the areas in ``subset`` request ``file`` in a period.

    Areas generate requests independently, so this is the product of each
    member area's request probability and each non-member's complement.
    Over all 2^(N+1) subsets the values sum to 1 for any fixed file.
    """
    if not 0 <= file < instance.num_files:
        raise ValueError(f"file index {file} outside 0..{instance.num_files - 1}")
    mask = _area_mask(instance.num_scbs, subset)
    p = -np.expm1(-instance.demand[:, file] * instance.deadline)
    return float(np.prod(np.where(mask, p, 1.0 - p)))


def mbs_triggered(policy: CachingPolicy, subset: Iterable[int], file: int) -> bool:
    """Whether the requesting areas ``subset`` force a macro-cell multicast.

    True iff the macro-only area requested, or some requesting SCBS lacks
    the file.  When False, every requester is served by its own SCBS.
    """
    if not 0 <= file < policy.num_files:
        raise ValueError(f"file index {file} outside 0..{policy.num_files - 1}")
    areas = list(subset)
    if not areas:
        raise ValueError("requesting subset must be non-empty")
    _area_mask(policy.num_scbs, areas)
    for a in areas:
        if a == MBS_AREA or not policy.placement[a - 1, file]:
            return True
    return False
