"""Deterministic timing harness for the multi-depot closed form.

Generates a seeded random capacity vector, times one ``multi_depot_bound``
call (sort plus pivot scan, the part claimed to be O(n log n)), and
reports the elapsed wall time together with the computed value. Identical
seeds give identical capacity vectors and therefore identical bounds.
"""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass

from .core import Instance, InstanceError, multi_depot_bound
from .oracle import Lcg64


@dataclass(frozen=True)
class BenchResult:
    n: int
    vehicle_capacity: int
    c_max: int
    total_demand: int
    seed: int
    bound: int
    elapsed_seconds: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.vehicle_capacity,
            "c_max": self.c_max,
            "delta": self.total_demand,
            "seed": self.seed,
            "bound": self.bound,
            "elapsed_seconds": self.elapsed_seconds,
        }


def generate_capacities(count: int, c_max: int, seed: int) -> list[int]:
    """Seeded capacity vector; matches Lcg64.randint(1, c_max) step for step.

    The generator recurrence is inlined because a method call per element
    is too slow at the millions-of-depots scale this harness targets.
    """
    if c_max < 1:
        raise InstanceError(f"c_max must be >= 1, got {c_max}")
    mult = Lcg64.MULTIPLIER
    inc = Lcg64.INCREMENT
    mask = Lcg64.MASK
    state = seed & mask
    caps: list[int] = []
    append = caps.append
    for _ in range(count):
        state = (state * mult + inc) & mask
        append(1 + (state >> 33) % c_max)
    return caps


def run_bench(
    n: int,
    seed: int = 0,
    vehicle_capacity: int = 100,
    c_max: int = 10**6,
    total_demand: int | None = None,
) -> BenchResult:
    """Generate, time, and report one bound computation.

    ``total_demand`` defaults to n * c_max, which saturates every depot
    and forces the pivot scan to walk the whole capacity list (the worst
    case for the closed form).
    """
    if total_demand is None:
        total_demand = n * c_max
    caps = tuple(generate_capacities(n, c_max, seed))
    instance = Instance(
        vehicle_capacity=vehicle_capacity,
        depot_capacities=caps,
        total_demand=total_demand,
    )
    # Collector disabled around the measurement, as timeit does; its pauses
    # are harness noise, not part of the computation under test.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        started = time.perf_counter()
        bound = multi_depot_bound(instance)
        elapsed = time.perf_counter() - started
    finally:
        if was_enabled:
            gc.enable()
    return BenchResult(
        n=n,
        vehicle_capacity=vehicle_capacity,
        c_max=c_max,
        total_demand=total_demand,
        seed=seed,
        bound=bound.value,
        elapsed_seconds=elapsed,
    )
