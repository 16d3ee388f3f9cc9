"""Set packing reduced to threshold-cost cache placement.

``spp_to_macdp`` builds, from a set packing question, a caching decision
instance whose request probabilities form an explicit joint table (one
subset of areas per file, each with mass 1/|subsets|) rather than a
product of independent areas.  Exhaustive deciders for both problems make
the equivalence machine-checkable on small inputs, and the witness
translators convert solutions back and forth.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .model import CachingPolicy

DEFAULT_SELECTION_CAP = 20
DEFAULT_POLICY_CAP = 10_000_000
COST_SLACK = 1e-9


@dataclass(frozen=True)
class SppInstance:
    """Set packing question: do ``target`` of the listed subsets pairwise disjoint exist?"""

    elements: frozenset
    subsets: tuple[frozenset, ...]
    target: int

    def __post_init__(self):
        elements = frozenset(self.elements)
        subsets = tuple(frozenset(s) for s in self.subsets)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "subsets", subsets)
        object.__setattr__(self, "target", int(self.target))
        for idx, s in enumerate(subsets):
            if not s <= elements:
                raise ValueError(f"subset {idx} contains elements outside the ground set")
        if not 0 <= self.target <= len(subsets):
            raise ValueError(
                f"target must lie in 0..{len(subsets)}, got {self.target}"
            )

    def to_dict(self) -> dict:
        return {
            "elements": sorted(self.elements),
            "subsets": [sorted(s) for s in self.subsets],
            "target": self.target,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SppInstance":
        return cls(
            elements=frozenset(data["elements"]),
            subsets=tuple(frozenset(s) for s in data["subsets"]),
            target=data["target"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SppInstance":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class DecisionInstance:
    """Threshold question over an explicit request-probability table.

    ``probabilities[i]`` lists ``(areas, prob)`` pairs for file i; the
    table is taken literally, so a file's listed masses may sum to less
    than 1 (the remainder is the no-request event).  Asks whether some
    feasible policy has objective value at most ``threshold``.
    """

    num_scbs: int
    num_files: int
    cache_size: np.ndarray
    cost_backhaul: float
    cost_mbs_tx: float
    cost_scbs_tx: np.ndarray
    deadline: float
    probabilities: tuple[tuple[tuple[frozenset[int], float], ...], ...]
    threshold: float

    def __post_init__(self):
        n = int(self.num_scbs)
        i = int(self.num_files)
        if n < 0 or i < 1:
            raise ValueError("need num_scbs >= 0 and num_files >= 1")
        object.__setattr__(self, "num_scbs", n)
        object.__setattr__(self, "num_files", i)
        cache = np.array(self.cache_size, dtype=np.int64)
        if cache.shape != (n,) or (cache < 0).any():
            raise ValueError(f"cache_size must be {n} non-negative integers")
        cache.setflags(write=False)
        object.__setattr__(self, "cache_size", cache)
        c = np.array(self.cost_scbs_tx, dtype=np.float64)
        if c.shape != (n,) or (c < 0).any():
            raise ValueError(f"cost_scbs_tx must be {n} non-negative reals")
        c.setflags(write=False)
        object.__setattr__(self, "cost_scbs_tx", c)
        object.__setattr__(self, "cost_backhaul", float(self.cost_backhaul))
        object.__setattr__(self, "cost_mbs_tx", float(self.cost_mbs_tx))
        object.__setattr__(self, "deadline", float(self.deadline))
        object.__setattr__(self, "threshold", float(self.threshold))
        if self.cost_backhaul < 0 or self.cost_mbs_tx < 0 or self.deadline <= 0:
            raise ValueError("costs must be non-negative and the deadline positive")

        table = tuple(
            tuple((frozenset(r), float(pr)) for r, pr in entries)
            for entries in self.probabilities
        )
        if len(table) != i:
            raise ValueError(f"probabilities must list {i} files, got {len(table)}")
        for file, entries in enumerate(table):
            mass = 0.0
            for areas, pr in entries:
                if not 0.0 <= pr <= 1.0:
                    raise ValueError(f"file {file}: probability {pr} outside [0, 1]")
                if any(not 0 <= a <= n for a in areas):
                    raise ValueError(f"file {file}: area id outside 0..{n}")
                mass += pr
            if mass > 1.0 + 1e-9:
                raise ValueError(f"file {file}: listed probabilities sum to {mass} > 1")
        object.__setattr__(self, "probabilities", table)

    def to_dict(self) -> dict:
        return {
            "num_scbs": self.num_scbs,
            "num_files": self.num_files,
            "cache_size": self.cache_size.tolist(),
            "cost_backhaul": self.cost_backhaul,
            "cost_mbs_tx": self.cost_mbs_tx,
            "cost_scbs_tx": self.cost_scbs_tx.tolist(),
            "deadline": self.deadline,
            "prob_table": [
                {"file": i, "areas": sorted(areas), "prob": pr}
                for i, entries in enumerate(self.probabilities)
                for areas, pr in entries
            ],
            "threshold": self.threshold,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecisionInstance":
        table: list[list[tuple[frozenset[int], float]]] = [
            [] for _ in range(data["num_files"])
        ]
        for entry in data["prob_table"]:
            table[entry["file"]].append((frozenset(entry["areas"]), entry["prob"]))
        return cls(
            num_scbs=data["num_scbs"],
            num_files=data["num_files"],
            cache_size=data["cache_size"],
            cost_backhaul=data["cost_backhaul"],
            cost_mbs_tx=data["cost_mbs_tx"],
            cost_scbs_tx=data["cost_scbs_tx"],
            deadline=data["deadline"],
            probabilities=tuple(tuple(e) for e in table),
            threshold=data["threshold"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DecisionInstance":
        return cls.from_dict(json.loads(text))


def _element_areas(spp: SppInstance) -> dict:
    """Canonical element -> SCBS area id map (sorted element order, ids 1..N)."""
    return {e: j + 1 for j, e in enumerate(sorted(spp.elements))}


def spp_to_macdp(spp: SppInstance) -> DecisionInstance:
    """Encode a set packing question as a threshold caching question.

    One SCBS per element (unit cache), one unit file per listed subset.
    File i is requested, with probability 1/|subsets|, by exactly the areas
    of the i-th subset and never otherwise; backhaul is free, a macro
    transmission costs 1, SCBS transmissions are free.  Packing ``target``
    subsets is then exactly reaching cost ``1 - target/|subsets|``.
    """
    if not spp.subsets:
        raise ValueError("subset list is empty: the cost threshold is undefined")
    area = _element_areas(spp)
    n = len(area)
    count = len(spp.subsets)
    mass = 1.0 / count
    table = tuple(
        ((frozenset(area[e] for e in s), mass),) for s in spp.subsets
    )
    return DecisionInstance(
        num_scbs=n,
        num_files=count,
        cache_size=np.ones(n, dtype=np.int64),
        cost_backhaul=0.0,
        cost_mbs_tx=1.0,
        cost_scbs_tx=np.zeros(n),
        deadline=1.0,
        probabilities=table,
        threshold=1.0 - spp.target / count,
    )


def decision_cost(decision: DecisionInstance, policy: CachingPolicy) -> float:
    """Objective value of ``policy`` under the explicit probability table.

    Empty requesting subsets never cost anything; any lingering mass on
    them is ignored, matching an objective that sums over non-empty
    requesting subsets only.
    """
    x = policy.placement
    if x.shape != (decision.num_scbs, decision.num_files):
        raise ValueError(
            f"placement shape {x.shape} does not match "
            f"({decision.num_scbs}, {decision.num_files})"
        )
    fill = x.sum(axis=1)
    if (fill > decision.cache_size).any():
        raise ValueError("placement exceeds a cache size")
    c = decision.cost_scbs_tx
    c_mbs = decision.cost_backhaul + decision.cost_mbs_tx
    total = 0.0
    for i, entries in enumerate(decision.probabilities):
        for areas, pr in entries:
            if not areas or pr == 0.0:
                continue
            triggered = 0 in areas or any(not x[a - 1, i] for a in areas if a != 0)
            total += pr * (c_mbs if triggered else sum(c[a - 1] for a in areas if a != 0))
    return total


def macdp_decide(
    decision: DecisionInstance, max_policies: int = DEFAULT_POLICY_CAP
) -> tuple[bool, CachingPolicy | None]:
    """Exhaustively decide whether some feasible policy meets the threshold.

    Returns ``(True, witness)`` for the first (lexicographically smallest)
    policy with objective <= threshold + 1e-9, or ``(False, None)`` after
    scanning the whole space.
    """
    n, i = decision.num_scbs, decision.num_files
    space = math.prod(
        sum(math.comb(i, k) for k in range(min(int(s), i) + 1))
        for s in decision.cache_size
    )
    if space > max_policies:
        raise CapacityError(
            f"{space} feasible placements exceed the enumeration cap of {max_policies}"
        )

    c = decision.cost_scbs_tx
    c_mbs = decision.cost_backhaul + decision.cost_mbs_tx
    limit = decision.threshold + COST_SLACK

    # Entries touching the macro-only area cost c_mbs under any policy.
    fixed = 0.0
    dynamic: list[tuple[int, tuple[int, ...], float, float]] = []
    for file, entries in enumerate(decision.probabilities):
        for areas, pr in entries:
            if not areas or pr == 0.0:
                continue
            if 0 in areas:
                fixed += pr * c_mbs
            else:
                rows = tuple(a - 1 for a in sorted(areas))
                local = pr * sum(c[r] for r in rows)
                dynamic.append((file, rows, pr * c_mbs, local))

    if fixed > limit:
        return False, None

    per_row: list[list[frozenset[int]]] = []
    for s in decision.cache_size:
        choices = []
        for k in range(min(int(s), i) + 1):
            choices.extend(itertools.combinations(range(i), k))
        # lexicographic order of the corresponding 0/1 rows
        choices.sort(key=lambda combo: [1 if f in combo else 0 for f in range(i)])
        per_row.append([frozenset(combo) for combo in choices])

    for assignment in itertools.product(*per_row):
        cost = fixed
        for file, rows, mbs_term, local_term in dynamic:
            if all(file in assignment[r] for r in rows):
                cost += local_term
            else:
                cost += mbs_term
            if cost > limit:
                break
        else:
            x = np.zeros((n, i), dtype=np.int8)
            for row, files in enumerate(assignment):
                x[row, list(files)] = 1
            return True, CachingPolicy(x)
    return False, None


def spp_decide(
    spp: SppInstance, max_subsets: int = DEFAULT_SELECTION_CAP
) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustively decide set packing; returns the witness index selection.

    ``(True, indices)`` lists ``target`` pairwise-disjoint subsets (the
    lexicographically first such selection); ``(False, None)`` means none
    exists.  A target of zero is vacuously satisfied.
    """
    count = len(spp.subsets)
    if count > max_subsets:
        raise CapacityError(
            f"{count} subsets exceed the exhaustive selection cap of {max_subsets}"
        )
    if spp.target == 0:
        return True, ()
    for combo in itertools.combinations(range(count), spp.target):
        union: set = set()
        size = 0
        for j in combo:
            union |= spp.subsets[j]
            size += len(spp.subsets[j])
        if len(union) == size:
            return True, combo
    return False, None


def packing_from_policy(spp: SppInstance, policy: CachingPolicy) -> tuple[int, ...]:
    """Subset indices fully served by local caches under ``policy``.

    A subset counts when the corresponding file sits in the cache of every
    SCBS it requests from; empty subsets count unconditionally.  If the
    policy meets the reduced threshold, these indices form a packing of at
    least the target size.
    """
    area = _element_areas(spp)
    picked = []
    for i, s in enumerate(spp.subsets):
        if all(policy.placement[area[e] - 1, i] for e in s):
            picked.append(i)
    return tuple(picked)


def policy_from_packing(spp: SppInstance, indices) -> CachingPolicy:
    """Cache each picked subset's file at all of that subset's SCBSs.

    With pairwise-disjoint picks every unit cache receives at most one
    file, so the result is feasible for the reduced instance.
    """
    area = _element_areas(spp)
    x = np.zeros((len(area), len(spp.subsets)), dtype=np.int8)
    for i in indices:
        for e in spp.subsets[i]:
            x[area[e] - 1, i] = 1
    return CachingPolicy(x)
