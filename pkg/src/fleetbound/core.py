"""Closed-form fleet-size bounds for split deliveries to capacitated depots.

The model: demand is moved by a homogeneous fleet, every vehicle load is an
integer between 1 and the vehicle capacity ``q``, each vehicle unloads at
exactly one depot, and any two loads bound for the same depot must together
exceed ``q`` (two lighter deliveries could always be merged into a single
vehicle, so plans that contain such a pair are never counted). Under these
rules the number of vehicles a feasible plan can use has a hard maximum,
and that maximum has a closed form.

``max_vehicles`` answers the single-depot question. ``multi_depot_bound``
maximises the per-depot answer across capacitated depots subject to the
total demand, again in closed form; ``dp_solve`` recomputes the same value
by dynamic programming and exists purely as an independent cross-check.
Witness constructors return explicit load vectors / depot allocations that
attain the bounds, certifying tightness.

Everything is exact integer arithmetic restricted to the non-negative
63-bit range; results that would leave the range raise instead of wrapping.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum

MAX_VALUE = 2**63 - 1

DEFAULT_CELL_BUDGET = 10**8
CELL_BUDGET_ENV = "FLEETBOUND_CELL_BUDGET"


class FleetBoundError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(FleetBoundError, ValueError):
    """Invalid instance data or operation argument."""


class RangeOverflowError(FleetBoundError, OverflowError):
    """A value or result does not fit the non-negative 63-bit range."""


class LimitError(FleetBoundError, RuntimeError):
    """An enumeration limit or cell budget would be exceeded."""


def _as_int(value, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InstanceError(f"{name} must be >= {minimum}, got {value}")
    if value > MAX_VALUE:
        raise RangeOverflowError(f"{name} exceeds the 63-bit range: {value}")
    return value


def _checked_result(value: int, what: str) -> int:
    if value > MAX_VALUE:
        raise RangeOverflowError(f"{what} exceeds the 63-bit range: {value}")
    return value


def _validate_values(values: tuple[int, ...], name: str, minimum: int) -> None:
    # Fast path first: plain ints within bounds, checked at C speed. The
    # per-element scan runs only to pinpoint a failure.
    if (
        all(type(v) is int for v in values)
        and min(values) >= minimum
        and max(values) <= MAX_VALUE
    ):
        return
    for i, v in enumerate(values):
        _as_int(v, f"{name}[{i}]", minimum)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class HalfCapacity:
    """Rounded halves of ``q + 1``: the split thresholds of the load rules.

    ``ceil_q`` is the smallest integer load that can pair with an equal load
    (2 * ceil_q > q), and ``floor_q`` is its complement: the two always sum
    to exactly ``q + 1``.
    """

    ceil_q: int
    floor_q: int


@dataclass(frozen=True)
class Instance:
    """A fleet-sizing instance.

    ``demands`` is optional: the bounds depend on the total demand only, the
    per-point breakdown is needed just for the per-point comparison bound.
    ``total_demand`` is derived from ``demands`` when omitted; when both are
    given they must agree.
    """

    vehicle_capacity: int
    depot_capacities: tuple[int, ...]
    demands: tuple[int, ...] | None = None
    total_demand: int | None = None

    def __post_init__(self) -> None:
        _as_int(self.vehicle_capacity, "vehicle_capacity", 1)

        caps = tuple(self.depot_capacities)
        object.__setattr__(self, "depot_capacities", caps)
        if not caps:
            raise InstanceError("depot_capacities must not be empty")
        _validate_values(caps, "depot_capacities", 1)

        demands = self.demands
        if demands is not None:
            demands = tuple(demands)
            object.__setattr__(self, "demands", demands)
            if not demands:
                raise InstanceError("demands, when given, must not be empty")
            _validate_values(demands, "demands", 0)

        total = self.total_demand
        if total is None:
            if demands is None:
                raise InstanceError("one of demands or total_demand is required")
            total = _checked_result(sum(demands), "total_demand")
            object.__setattr__(self, "total_demand", total)
        else:
            _as_int(total, "total_demand", 0)
            if demands is not None and total != sum(demands):
                raise InstanceError(
                    f"total_demand ({total}) != sum(demands) ({sum(demands)})"
                )

    @property
    def n(self) -> int:
        """Number of depots."""
        return len(self.depot_capacities)


class BoundCase(str, Enum):
    """Which regime of the closed form produced a bound value."""

    TINY_DEMAND = "TinyDemand"  # demand no larger than the depot count
    PER_DEPOT_ONE = "PerDepotOne"  # one vehicle per depot suffices and is tight
    SINGLE_BIG_DEPOT = "SingleBigDepot"  # the largest depot can absorb everything
    GENERAL = "General"  # pivot-depot formula


@dataclass(frozen=True)
class FleetBound:
    """A computed fleet-size bound plus the regime that produced it.

    For the General regime, ``pivot_depot`` is the 1-based index (in
    capacity-descending depot order) of the last depot that receives more
    than the minimum single unit, and ``pivot_budget`` is the residual
    demand budget available to it. Both are None in the other regimes.
    """

    value: int
    case: BoundCase
    pivot_depot: int | None = None
    pivot_budget: int | None = None


@dataclass(frozen=True)
class SingleDepotWitness:
    """Vehicle loads attaining a single-depot bound."""

    loads: tuple[int, ...]


@dataclass(frozen=True)
class DepotAllocation:
    """Per-depot delivered quantities attaining a multi-depot bound.

    Entries follow the original depot input order, not the internally
    sorted order.
    """

    allocations: tuple[int, ...]
    per_depot_vehicles: tuple[int, ...]


@dataclass(frozen=True)
class BoundComparison:
    """This library's bound next to the classical single-depot bounds."""

    proposed: int
    labbe: int  # ceil(2 * total / q)
    archetti: int  # 2 * ceil(total / q)
    per_point_ceiling: int | None = None  # sum of ceil(d_i / q); needs demands


def half_capacity(vehicle_capacity: int) -> HalfCapacity:
    """Return ceil((q+1)/2) and floor((q+1)/2) for capacity ``q``."""
    q = _as_int(vehicle_capacity, "vehicle_capacity", 1)
    return HalfCapacity(ceil_q=(q + 2) // 2, floor_q=(q + 1) // 2)


def max_vehicles(quantity: int, vehicle_capacity: int) -> int:
    """Maximum fleet size a delivery of ``quantity`` to one depot can use.

    Loads are integers in 1..q and any two of them must sum to at least
    q + 1. Zero quantity needs zero vehicles; up to a full vehicle needs
    exactly one; beyond that, every extra vehicle past the first costs at
    least ceil((q+1)/2) additional units, which gives the closed form
    ``ceil((quantity - q) / ceil((q+1)/2)) + 1``.
    """
    delta = _as_int(quantity, "quantity", 0)
    q = _as_int(vehicle_capacity, "vehicle_capacity", 1)
    if delta <= q:
        return _ceil_div(delta, q)
    ceil_q = (q + 2) // 2
    return _ceil_div(delta - q, ceil_q) + 1


def compress_demand(quantity: int, vehicle_capacity: int) -> int:
    """Smallest quantity whose maximum fleet size equals that of ``quantity``.

    Shrinking a depot's delivery down to this value frees demand for other
    depots without losing a single vehicle, which is exactly why it drives
    the optimal multi-depot allocation policy.
    """
    alpha = _as_int(quantity, "quantity", 0)
    q = _as_int(vehicle_capacity, "vehicle_capacity", 1)
    if alpha <= q:
        return _ceil_div(alpha, q)
    ceil_q = (q + 2) // 2
    floor_q = (q + 1) // 2
    m = _ceil_div(alpha - q, ceil_q) + 1
    return (m - 1) * ceil_q + floor_q


def _classify_single(delta: int, q: int) -> BoundCase:
    if delta <= 1:
        return BoundCase.TINY_DEMAND
    if delta <= q:
        return BoundCase.PER_DEPOT_ONE
    return BoundCase.SINGLE_BIG_DEPOT


def _classify_multi(delta: int, n: int, q: int, c_max: int) -> BoundCase:
    # First matching regime in increasing-demand order.
    if delta <= n:
        return BoundCase.TINY_DEMAND
    if delta < n + q:
        return BoundCase.PER_DEPOT_ONE
    if delta <= c_max:
        return BoundCase.SINGLE_BIG_DEPOT
    return BoundCase.GENERAL


def single_depot_bound(quantity: int, vehicle_capacity: int) -> FleetBound:
    """Tight fleet bound for one uncapacitated depot."""
    value = max_vehicles(quantity, vehicle_capacity)
    return FleetBound(value=value, case=_classify_single(quantity, vehicle_capacity))


def single_depot_witness(quantity: int, vehicle_capacity: int) -> SingleDepotWitness:
    """Explicit load vector attaining ``single_depot_bound``.

    Past one full vehicle the construction uses the minimum pairing load
    ceil((q+1)/2) everywhere except the last vehicle, which takes the
    remainder; the remainder always lands in 1..q and pairs correctly.
    """
    delta = _as_int(quantity, "quantity", 0)
    q = _as_int(vehicle_capacity, "vehicle_capacity", 1)
    if delta == 0:
        return SingleDepotWitness(loads=())
    if delta <= q:
        return SingleDepotWitness(loads=(delta,))
    ceil_q = (q + 2) // 2
    steps = _ceil_div(delta - q, ceil_q)  # number of minimum-load vehicles
    residual = delta - ceil_q * steps
    return SingleDepotWitness(loads=(ceil_q,) * steps + (residual,))


def _pivot_scan(q: int, caps: list[int], delta: int) -> tuple[int, int, int]:
    """Scan capacity-descending depots; return (value, pivot, budget).

    Requires delta > len(caps). The pivot is the last depot that receives
    more than one unit in the optimal allocation; the budget is the
    residual demand available to it. Exits early at the pivot.
    """
    n = len(caps)
    ceil_q = (q + 2) // 2
    floor_q1 = (q + 1) // 2 - 1
    ceil_q1 = ceil_q - 1

    budget = delta - n + 1  # residual budget at the depot under scan
    prefix_extra = 0  # vehicles beyond one per depot, over the scanned prefix
    pivot = n
    for i in range(n - 1):
        c = caps[i]
        if c > q:
            extra = (c - q + ceil_q1) // ceil_q  # max_vehicles(c) - 1
            compressed_cost = extra * ceil_q + floor_q1  # compress_demand(c) - 1
        else:
            extra = 0
            compressed_cost = 0
        remaining = budget - compressed_cost
        if remaining < 1:
            pivot = i + 1
            break
        budget = remaining
        prefix_extra += extra

    value = n - 1 + max_vehicles(min(budget, caps[pivot - 1]), q) + prefix_extra
    return value, pivot, budget


def multi_depot_bound(instance: Instance) -> FleetBound:
    """Tight fleet bound for any number of capacitated depots.

    Works on a capacity-descending copy of the depot list. When the demand
    does not exceed the depot count, one unit per depot is already optimal
    and the bound is the demand itself. Otherwise the optimum fills depots
    in capacity order with their compressed demand until the remaining
    budget runs out at the pivot depot; all later depots take one unit.
    The scan exits early at the pivot, so the total cost is the sort plus
    a linear pass: O(n log n).
    """
    q = instance.vehicle_capacity
    delta = instance.total_demand
    caps = sorted(instance.depot_capacities, reverse=True)
    n = len(caps)

    if delta <= n:
        return FleetBound(value=delta, case=BoundCase.TINY_DEMAND)

    value, pivot, budget = _pivot_scan(q, caps, delta)
    case = _classify_multi(delta, n, q, caps[0])
    if case is BoundCase.GENERAL:
        return FleetBound(value=value, case=case, pivot_depot=pivot, pivot_budget=budget)
    return FleetBound(value=value, case=case)


def _descending_order(caps: tuple[int, ...]) -> list[int]:
    # Stable: ties keep original input order.
    return sorted(range(len(caps)), key=lambda i: -caps[i])


def multi_depot_witness(instance: Instance) -> DepotAllocation:
    """Per-depot quantities attaining ``multi_depot_bound``.

    The allocation is computed in capacity-descending order and then
    permuted back to the original depot order.
    """
    q = instance.vehicle_capacity
    delta = instance.total_demand
    order = _descending_order(instance.depot_capacities)
    caps = [instance.depot_capacities[i] for i in order]
    n = len(caps)

    if delta <= n:
        sorted_alloc = [1] * delta + [0] * (n - delta)
    else:
        _, pivot, budget = _pivot_scan(q, caps, delta)
        sorted_alloc = [compress_demand(c, q) for c in caps[: pivot - 1]]
        sorted_alloc.append(compress_demand(min(budget, caps[pivot - 1]), q))
        sorted_alloc.extend([1] * (n - pivot))

    allocations = [0] * n
    for pos, original in enumerate(order):
        allocations[original] = sorted_alloc[pos]
    vehicles = tuple(max_vehicles(x, q) for x in allocations)
    return DepotAllocation(allocations=tuple(allocations), per_depot_vehicles=vehicles)


def dp_solve(instance: Instance, cell_budget: int | None = None) -> FleetBound:
    """Recompute the multi-depot bound by bottom-up dynamic programming.

    Independent of the closed form: it maximises the summed single-depot
    bound over all per-depot splits of the demand, one depot stage at a
    time, keeping only the previous stage's value row. Exists as a
    mid-scale oracle; ``multi_depot_bound`` must match it everywhere.

    The table is refused when ``n * total_demand`` exceeds the cell budget
    (default 10**8, overridable via the FLEETBOUND_CELL_BUDGET environment
    variable or the ``cell_budget`` argument).
    """
    if cell_budget is None:
        cell_budget = int(os.environ.get(CELL_BUDGET_ENV, DEFAULT_CELL_BUDGET))
    q = instance.vehicle_capacity
    delta = instance.total_demand
    caps = instance.depot_capacities
    n = len(caps)
    if n * delta > cell_budget:
        raise LimitError(
            f"dp_solve table of {n} x {delta} cells exceeds budget {cell_budget}"
        )

    top = min(max(caps), delta)
    vehicles_for = [max_vehicles(x, q) for x in range(top + 1)]

    first = min(caps[0], delta)
    prev = [vehicles_for[min(first, d)] for d in range(delta + 1)]
    for c in caps[1:]:
        cur = [0] * (delta + 1)
        for d in range(delta + 1):
            hi = min(c, d)
            cur[d] = max(vehicles_for[x] + prev[d - x] for x in range(hi + 1))
        prev = cur

    return FleetBound(
        value=prev[delta],
        case=_classify_multi(delta, n, q, max(caps)),
    )


def trivial_bounds(instance: Instance) -> BoundComparison:
    """The proposed bound next to the classical single-depot fleet bounds.

    ``labbe`` is ceil(2 * total / q), ``archetti`` is 2 * ceil(total / q),
    and ``per_point_ceiling`` is the per-demand-point vehicle count
    sum(ceil(d_i / q)), available only when the demand breakdown is known.
    """
    q = instance.vehicle_capacity
    delta = instance.total_demand
    labbe = _checked_result(_ceil_div(2 * delta, q), "labbe bound")
    archetti = _checked_result(2 * _ceil_div(delta, q), "archetti bound")
    per_point = None
    if instance.demands is not None:
        per_point = _checked_result(
            sum(_ceil_div(d, q) for d in instance.demands), "per-point bound"
        )
    return BoundComparison(
        proposed=multi_depot_bound(instance).value,
        labbe=labbe,
        archetti=archetti,
        per_point_ceiling=per_point,
    )


def heterogeneous_bound(subsets: list[Instance]) -> int:
    """Fleet bound for a mixed fleet, one instance per vehicle type.

    Vehicle types are independent once each is given its accessible total
    demand, so the bound is simply additive across the subsets.
    """
    total = sum(multi_depot_bound(sub).value for sub in subsets)
    return _checked_result(total, "heterogeneous bound")
