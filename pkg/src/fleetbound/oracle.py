"""Brute-force maximizers and grid sweeps that certify the closed forms.

Nothing here knows the closed-form answers. The single-depot oracle
enumerates load vectors, the multi-depot oracle enumerates per-depot
splits, and ``sweep`` drives all three computations (closed form, dynamic
program, brute force) over an instance grid and reports disagreements.
Deliberately dumb and kept that way; speed comes only from pruning that
provably removes infeasible branches.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field

from .core import (
    CELL_BUDGET_ENV,
    DEFAULT_CELL_BUDGET,
    DepotAllocation,
    Instance,
    InstanceError,
    LimitError,
    SingleDepotWitness,
    _as_int,
    dp_solve,
    max_vehicles,
    multi_depot_bound,
)

DEFAULT_SDF_QUANTITY_LIMIT = 60
DEFAULT_SDF_CAPACITY_LIMIT = 20
DEFAULT_MDF_CELL_LIMIT = 10_000_000


class Lcg64:
    """Deterministic 64-bit linear congruential generator.

    state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64),
    output = top 31 bits of the state. Fixed constants so that sampled
    instance sequences and benchmark capacity vectors reproduce
    bit-for-bit across platforms and Python versions.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = 2**64 - 1

    def __init__(self, seed: int) -> None:
        self._state = seed & self.MASK

    def next_raw(self) -> int:
        self._state = (self._state * self.MULTIPLIER + self.INCREMENT) & self.MASK
        return self._state >> 33

    def randint(self, low: int, high: int) -> int:
        """Uniform-ish integer in [low, high] (modulo reduction)."""
        return low + self.next_raw() % (high - low + 1)


def brute_force_single_depot(
    quantity: int,
    vehicle_capacity: int,
    *,
    quantity_limit: int = DEFAULT_SDF_QUANTITY_LIMIT,
    capacity_limit: int = DEFAULT_SDF_CAPACITY_LIMIT,
) -> int:
    """Single-depot fleet maximum by exhaustive load-vector enumeration.

    Enumerates non-increasing load sequences with entries in 1..q summing
    to ``quantity``. Because the sequence is non-increasing, the pairwise
    rule "any two loads sum to at least q + 1" holds for the whole vector
    exactly when it holds for each freshly appended load against its
    predecessor, so violating extensions are cut immediately.
    """
    delta = _as_int(quantity, "quantity", 0)
    q = _as_int(vehicle_capacity, "vehicle_capacity", 1)
    if delta > quantity_limit:
        raise LimitError(f"quantity {delta} exceeds enumeration limit {quantity_limit}")
    if q > capacity_limit:
        raise LimitError(f"capacity {q} exceeds enumeration limit {capacity_limit}")
    if delta == 0:
        return 0

    best = 0

    def extend(remaining: int, prev: int, count: int) -> None:
        nonlocal best
        if remaining == 0:
            if count > best:
                best = count
            return
        low = q + 1 - prev
        if low < 1:
            low = 1
        for load in range(min(prev, remaining), low - 1, -1):
            extend(remaining - load, load, count + 1)

    for first in range(min(q, delta), 0, -1):
        extend(delta - first, first, 1)
    return best


def brute_force_multi_depot(
    instance: Instance,
    *,
    cell_limit: int = DEFAULT_MDF_CELL_LIMIT,
    deep: bool = False,
) -> int:
    """Multi-depot fleet maximum by exhaustive split enumeration.

    Walks every per-depot quantity tuple with 0 <= x_i <= c_i and
    sum(x_i) <= total demand, scoring each depot via the single-depot
    bound. With ``deep=True`` the per-depot score itself comes from
    ``brute_force_single_depot`` instead of the closed form, which makes
    the check fully independent but is only viable for tiny instances.
    """
    q = instance.vehicle_capacity
    delta = instance.total_demand
    caps = instance.depot_capacities

    cells = 1
    for c in caps:
        cells *= min(c, delta) + 1
        if cells > cell_limit:
            raise LimitError(
                f"split enumeration of more than {cell_limit} cells refused"
            )

    top = min(max(caps), delta)
    if deep:
        score = [brute_force_single_depot(x, q) for x in range(top + 1)]
    else:
        score = [max_vehicles(x, q) for x in range(top + 1)]

    n = len(caps)

    def search(i: int, budget: int) -> int:
        if i == n:
            return 0
        best = 0
        for x in range(min(caps[i], budget) + 1):
            v = score[x] + search(i + 1, budget - x)
            if v > best:
                best = v
        return best

    return search(0, delta)


@dataclass(frozen=True)
class GridSpec:
    """An instance grid, swept exhaustively or by deterministic sampling.

    Ranges are inclusive [low, high] pairs; a range with low > high is
    empty and yields no instances. ``sample=None`` means exhaustive
    enumeration (capacity tuples non-increasing, to cut permutation
    symmetry); otherwise ``sample`` instances are drawn with the seeded
    generator, so identical specs produce identical instance sequences.
    """

    q_range: tuple[int, int] = (1, 4)
    n_range: tuple[int, int] = (1, 2)
    c_range: tuple[int, int] = (1, 8)
    delta_range: tuple[int, int] = (0, 16)
    sample: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        for name, (low, _), minimum in (
            ("q_range", self.q_range, 1),
            ("n_range", self.n_range, 1),
            ("c_range", self.c_range, 1),
            ("delta_range", self.delta_range, 0),
        ):
            if low < minimum:
                raise InstanceError(f"{name} lower bound must be >= {minimum}")
        if self.sample is not None and self.sample < 1:
            raise InstanceError("sample count must be >= 1")

    def is_empty(self) -> bool:
        return any(
            low > high
            for low, high in (self.q_range, self.n_range, self.c_range, self.delta_range)
        )

    def to_dict(self) -> dict:
        return {
            "q_range": list(self.q_range),
            "n_range": list(self.n_range),
            "c_range": list(self.c_range),
            "delta_range": list(self.delta_range),
            "sample": self.sample,
            "seed": self.seed,
        }

    def instances(self):
        """Yield instances in a deterministic order."""
        if self.is_empty():
            return
        if self.sample is None:
            yield from self._exhaustive()
        else:
            yield from self._sampled()

    def _exhaustive(self):
        from itertools import combinations_with_replacement

        q_lo, q_hi = self.q_range
        n_lo, n_hi = self.n_range
        c_lo, c_hi = self.c_range
        d_lo, d_hi = self.delta_range
        descending = range(c_hi, c_lo - 1, -1)
        for q in range(q_lo, q_hi + 1):
            for n in range(n_lo, n_hi + 1):
                for caps in combinations_with_replacement(descending, n):
                    for delta in range(d_lo, d_hi + 1):
                        yield Instance(
                            vehicle_capacity=q,
                            depot_capacities=caps,
                            total_demand=delta,
                        )

    def _sampled(self):
        rng = Lcg64(self.seed)
        for _ in range(self.sample):
            q = rng.randint(*self.q_range)
            n = rng.randint(*self.n_range)
            caps = tuple(rng.randint(*self.c_range) for _ in range(n))
            delta = rng.randint(*self.delta_range)
            yield Instance(
                vehicle_capacity=q, depot_capacities=caps, total_demand=delta
            )


@dataclass
class SweepReport:
    """Outcome of a grid sweep; serializable to stable JSON."""

    spec: GridSpec
    instances_checked: int
    mismatches: list[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "instances_checked": self.instances_checked,
            "mismatches": self.mismatches,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_limits(spec: GridSpec, mdf_cell_limit: int) -> None:
    _, n_hi = spec.n_range
    _, c_hi = spec.c_range
    _, d_hi = spec.delta_range
    worst = (min(c_hi, d_hi) + 1) ** n_hi
    if worst > mdf_cell_limit:
        raise LimitError(
            f"grid needs up to {worst} enumeration cells per instance, "
            f"limit is {mdf_cell_limit}"
        )
    dp_budget = int(os.environ.get(CELL_BUDGET_ENV, DEFAULT_CELL_BUDGET))
    if n_hi * d_hi > dp_budget:
        raise LimitError(
            f"grid needs dynamic-programming tables of up to {n_hi * d_hi} "
            f"cells, budget is {dp_budget}"
        )


def sweep(
    spec: GridSpec,
    *,
    bound_fn=None,
    mdf_cell_limit: int = DEFAULT_MDF_CELL_LIMIT,
    sdf_quantity_limit: int = DEFAULT_SDF_QUANTITY_LIMIT,
    sdf_capacity_limit: int = DEFAULT_SDF_CAPACITY_LIMIT,
) -> SweepReport:
    """Check closed form == dynamic program == brute force over a grid.

    Single-depot cells additionally check the single-depot closed form
    against the load-vector oracle whenever the cell is within that
    oracle's enumeration limits. Mismatches land in the report with a
    full instance dump; they are findings, not exceptions. ``bound_fn``
    replaces the closed form under test (test hook).
    """
    if bound_fn is None:
        bound_fn = multi_depot_bound
    if not spec.is_empty():
        _check_limits(spec, mdf_cell_limit)

    started = time.perf_counter()
    checked = 0
    mismatches: list[dict] = []
    for instance in spec.instances():
        checked += 1
        closed = bound_fn(instance).value
        dp = dp_solve(instance).value
        brute = brute_force_multi_depot(instance, cell_limit=mdf_cell_limit)
        entry = None
        if not (closed == dp == brute):
            entry = {
                "instance": {
                    "vehicle_capacity": instance.vehicle_capacity,
                    "depot_capacities": list(instance.depot_capacities),
                    "total_demand": instance.total_demand,
                },
                "closed_form": closed,
                "dp": dp,
                "brute_force": brute,
            }
        if (
            instance.n == 1
            and instance.vehicle_capacity <= sdf_capacity_limit
            and instance.total_demand <= sdf_quantity_limit
        ):
            single_closed = max_vehicles(
                instance.total_demand, instance.vehicle_capacity
            )
            single_brute = brute_force_single_depot(
                instance.total_demand,
                instance.vehicle_capacity,
                quantity_limit=sdf_quantity_limit,
                capacity_limit=sdf_capacity_limit,
            )
            if single_closed != single_brute:
                if entry is None:
                    entry = {
                        "instance": {
                            "vehicle_capacity": instance.vehicle_capacity,
                            "depot_capacities": list(instance.depot_capacities),
                            "total_demand": instance.total_demand,
                        },
                        "closed_form": closed,
                        "dp": dp,
                        "brute_force": brute,
                    }
                entry["single_depot"] = {
                    "closed_form": single_closed,
                    "brute_force": single_brute,
                }
        if entry is not None:
            mismatches.append(entry)

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return SweepReport(
        spec=spec,
        instances_checked=checked,
        mismatches=mismatches,
        elapsed_ms=elapsed_ms,
    )


def certify_single_depot_witness(
    witness: SingleDepotWitness, quantity: int, vehicle_capacity: int
) -> list[str]:
    """Return violation descriptions; empty means the witness is valid."""
    q = vehicle_capacity
    loads = witness.loads
    problems = []
    if sum(loads) != quantity:
        problems.append(f"loads sum to {sum(loads)}, expected {quantity}")
    for i, v in enumerate(loads):
        if not 1 <= v <= q:
            problems.append(f"load[{i}]={v} outside 1..{q}")
    if len(loads) >= 2:
        a, b = sorted(loads)[:2]
        if a + b < q + 1:
            problems.append(f"two smallest loads {a}+{b} < {q + 1}")
    expected = max_vehicles(quantity, q)
    if len(loads) != expected:
        problems.append(f"{len(loads)} loads, bound says {expected}")
    return problems


def certify_depot_allocation(
    allocation: DepotAllocation, instance: Instance
) -> list[str]:
    """Return violation descriptions; empty means the allocation is valid."""
    q = instance.vehicle_capacity
    caps = instance.depot_capacities
    alloc = allocation.allocations
    vehicles = allocation.per_depot_vehicles
    problems = []
    if len(alloc) != len(caps) or len(vehicles) != len(caps):
        problems.append("allocation length differs from depot count")
        return problems
    if sum(alloc) > instance.total_demand:
        problems.append(
            f"allocations sum to {sum(alloc)} > demand {instance.total_demand}"
        )
    for i, (x, c) in enumerate(zip(alloc, caps)):
        if x < 0:
            problems.append(f"allocation[{i}]={x} negative")
        if x > c:
            problems.append(f"allocation[{i}]={x} exceeds depot capacity {c}")
        if vehicles[i] != max_vehicles(max(x, 0), q):
            problems.append(f"per_depot_vehicles[{i}] inconsistent with allocation")
    bound = multi_depot_bound(instance).value
    if sum(vehicles) != bound:
        problems.append(f"vehicles sum to {sum(vehicles)}, bound says {bound}")
    return problems
