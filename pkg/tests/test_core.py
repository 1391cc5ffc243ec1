"""Core bound functions against frozen, oracle-verified values.

Every non-obvious expected value below was computed with the enumeration
oracles (see test_oracle.py) before being frozen here.
"""

import pytest
from hypothesis import given, strategies as st

from fleetbound import (
    MAX_VALUE,
    BoundCase,
    Instance,
    InstanceError,
    LimitError,
    RangeOverflowError,
    compress_demand,
    dp_solve,
    half_capacity,
    heterogeneous_bound,
    max_vehicles,
    multi_depot_bound,
    multi_depot_witness,
    single_depot_bound,
    single_depot_witness,
    trivial_bounds,
)
from fleetbound.oracle import certify_depot_allocation, certify_single_depot_witness


def inst(q, caps, delta=None, demands=None):
    return Instance(
        vehicle_capacity=q,
        depot_capacities=tuple(caps),
        demands=demands,
        total_demand=delta,
    )


class TestHalfCapacity:
    @pytest.mark.parametrize("q,ceil_q,floor_q", [(4, 3, 2), (5, 3, 3), (1, 1, 1), (2, 2, 1)])
    def test_values(self, q, ceil_q, floor_q):
        hc = half_capacity(q)
        assert (hc.ceil_q, hc.floor_q) == (ceil_q, floor_q)

    @pytest.mark.parametrize("q", [0, -3])
    def test_rejects_nonpositive(self, q):
        with pytest.raises(InstanceError):
            half_capacity(q)

    @given(st.integers(min_value=1, max_value=10**12))
    def test_halves_partition_q_plus_one(self, q):
        hc = half_capacity(q)
        assert hc.ceil_q + hc.floor_q == q + 1
        assert hc.ceil_q >= hc.floor_q >= 1


class TestMaxVehicles:
    @pytest.mark.parametrize(
        "delta,q,expected",
        [
            (0, 4, 0),
            (3, 4, 1),
            (4, 4, 1),
            (5, 4, 2),
            (10, 4, 3),
            (11, 4, 4),
            (20, 4, 7),
            (7, 1, 7),
            (9, 2, 5),
        ],
    )
    def test_frozen_values(self, delta, q, expected):
        assert max_vehicles(delta, q) == expected

    def test_rejects_bad_arguments(self):
        with pytest.raises(InstanceError):
            max_vehicles(-1, 4)
        with pytest.raises(InstanceError):
            max_vehicles(5, 0)

    def test_rejects_out_of_range(self):
        with pytest.raises(RangeOverflowError):
            max_vehicles(MAX_VALUE + 1, 4)

    def test_full_range_input_ok(self):
        assert max_vehicles(MAX_VALUE, MAX_VALUE) == 1


class TestCompressDemand:
    @pytest.mark.parametrize("alpha,q,expected", [(0, 4, 0), (3, 4, 1), (10, 4, 8)])
    def test_frozen_values(self, alpha, q, expected):
        assert compress_demand(alpha, q) == expected

    def test_keeps_bound_while_shrinking(self):
        for q in range(1, 9):
            for alpha in range(0, 60):
                t = compress_demand(alpha, q)
                assert t <= alpha
                assert max_vehicles(t, q) == max_vehicles(alpha, q)


class TestSingleDepot:
    @pytest.mark.parametrize(
        "delta,q,value,case",
        [
            (0, 4, 0, BoundCase.TINY_DEMAND),
            (1, 4, 1, BoundCase.TINY_DEMAND),
            (4, 4, 1, BoundCase.PER_DEPOT_ONE),
            (5, 4, 2, BoundCase.SINGLE_BIG_DEPOT),
            (20, 4, 7, BoundCase.SINGLE_BIG_DEPOT),
        ],
    )
    def test_bound(self, delta, q, value, case):
        result = single_depot_bound(delta, q)
        assert (result.value, result.case) == (value, case)
        assert result.pivot_depot is None and result.pivot_budget is None

    @pytest.mark.parametrize(
        "delta,q,loads",
        [(10, 4, (3, 3, 4)), (0, 4, ()), (7, 4, (3, 4)), (3, 4, (3,)), (5, 4, (3, 2))],
    )
    def test_witness_construction(self, delta, q, loads):
        assert single_depot_witness(delta, q).loads == loads

    def test_witness_certified_on_grid(self):
        for q in range(1, 9):
            for delta in range(0, 45):
                witness = single_depot_witness(delta, q)
                assert certify_single_depot_witness(witness, delta, q) == []


class TestMultiDepot:
    @pytest.mark.parametrize(
        "q,caps,delta,value,case",
        [
            (4, (10, 10), 20, 6, BoundCase.GENERAL),
            (4, (5, 5, 5), 2, 2, BoundCase.TINY_DEMAND),
            (4, (10, 6, 5), 15, 6, BoundCase.GENERAL),
            (4, (30, 7, 7), 12, 5, BoundCase.SINGLE_BIG_DEPOT),
            (4, (10, 10), 5, 2, BoundCase.PER_DEPOT_ONE),
        ],
    )
    def test_frozen_values(self, q, caps, delta, value, case):
        result = multi_depot_bound(inst(q, caps, delta))
        assert (result.value, result.case) == (value, case)

    def test_pivot_trace_in_general_case(self):
        result = multi_depot_bound(inst(4, (10, 6, 5), 15))
        assert (result.pivot_depot, result.pivot_budget) == (3, 2)
        result = multi_depot_bound(inst(4, (10, 10), 20))
        assert (result.pivot_depot, result.pivot_budget) == (2, 12)

    def test_no_trace_outside_general_case(self):
        for caps, delta in [((5, 5, 5), 2), ((10, 10), 5), ((30, 7, 7), 12)]:
            result = multi_depot_bound(inst(4, caps, delta))
            assert result.pivot_depot is None and result.pivot_budget is None

    def test_saturation_equals_per_depot_sum(self):
        for q in range(1, 7):
            for caps in [(3,), (5, 2), (9, 9, 1), (7, 4, 4, 2)]:
                saturated = inst(q, caps, sum(caps) + 13)
                expected = sum(max_vehicles(c, q) for c in caps)
                assert multi_depot_bound(saturated).value == expected

    def test_tiny_demand_equals_demand(self):
        assert multi_depot_bound(inst(9, (1, 1, 1, 1), 3)).value == 3

    @given(
        q=st.integers(1, 1000),
        caps=st.lists(st.integers(1, 10**6), min_size=1, max_size=6),
        delta=st.integers(0, 10**9),
    )
    def test_value_never_exceeds_demand_or_saturation(self, q, caps, delta):
        value = multi_depot_bound(inst(q, caps, delta)).value
        assert value <= delta
        assert value <= sum(max_vehicles(c, q) for c in caps)

    @given(
        q=st.integers(1, 50),
        caps=st.lists(st.integers(1, 200), min_size=1, max_size=6),
        delta=st.integers(0, 2000),
    )
    def test_monotone_in_demand(self, q, caps, delta):
        # A larger demand budget can only widen the feasible allocations.
        lower = multi_depot_bound(inst(q, caps, delta)).value
        upper = multi_depot_bound(inst(q, caps, delta + 1)).value
        assert lower <= upper

    @given(
        q=st.integers(1, 50),
        caps=st.lists(st.integers(1, 200), min_size=1, max_size=6),
        delta=st.integers(0, 2000),
        data=st.data(),
    )
    def test_monotone_in_capacity(self, q, caps, delta, data):
        index = data.draw(st.integers(0, len(caps) - 1))
        raised = list(caps)
        raised[index] += data.draw(st.integers(1, 100))
        base = multi_depot_bound(inst(q, caps, delta)).value
        assert base <= multi_depot_bound(inst(q, raised, delta)).value

    @given(
        q=st.integers(1, 50),
        caps=st.lists(st.integers(1, 200), min_size=1, max_size=6),
        delta=st.integers(0, 2000),
        data=st.data(),
    )
    def test_permutation_invariance(self, q, caps, delta, data):
        shuffled = data.draw(st.permutations(caps))
        base = multi_depot_bound(inst(q, caps, delta))
        other = multi_depot_bound(inst(q, shuffled, delta))
        assert base.value == other.value
        assert base.case == other.case


class TestMultiDepotWitness:
    @pytest.mark.parametrize(
        "q,caps,delta,allocations",
        [
            (4, (10, 6, 5), 15, (8, 5, 1)),
            (4, (5, 5, 5), 2, (1, 1, 0)),
            (4, (10, 10), 20, (8, 8)),
        ],
    )
    def test_frozen_allocations(self, q, caps, delta, allocations):
        witness = multi_depot_witness(inst(q, caps, delta))
        assert witness.allocations == allocations

    def test_allocations_follow_input_order(self):
        forward = multi_depot_witness(inst(4, (10, 6, 5), 15))
        backward = multi_depot_witness(inst(4, (5, 6, 10), 15))
        assert backward.allocations == tuple(reversed(forward.allocations))
        assert backward.per_depot_vehicles == tuple(reversed(forward.per_depot_vehicles))

    def test_certified_on_grid(self):
        for q in range(1, 6):
            for caps in [(1,), (4,), (6, 3), (8, 8), (9, 5, 2)]:
                for delta in range(0, 25):
                    instance = inst(q, caps, delta)
                    witness = multi_depot_witness(instance)
                    assert certify_depot_allocation(witness, instance) == []

    @given(
        q=st.integers(1, 20),
        caps=st.lists(st.integers(1, 60), min_size=1, max_size=5),
        delta=st.integers(0, 400),
    )
    def test_certified_on_random_instances(self, q, caps, delta):
        instance = inst(q, caps, delta)
        witness = multi_depot_witness(instance)
        assert certify_depot_allocation(witness, instance) == []


class TestDpSolve:
    @pytest.mark.parametrize(
        "q,caps,delta,expected",
        [(4, (10, 10), 20, 6), (4, (5,), 3, 1), (4, (10, 6, 5), 15, 6)],
    )
    def test_frozen_values(self, q, caps, delta, expected):
        assert dp_solve(inst(q, caps, delta)).value == expected

    @given(
        q=st.integers(1, 12),
        caps=st.lists(st.integers(1, 25), min_size=1, max_size=4),
        delta=st.integers(0, 60),
    )
    def test_matches_closed_form(self, q, caps, delta):
        instance = inst(q, caps, delta)
        assert dp_solve(instance).value == multi_depot_bound(instance).value

    def test_cell_budget_argument(self):
        with pytest.raises(LimitError):
            dp_solve(inst(4, (10, 10), 20), cell_budget=10)

    def test_cell_budget_env_override(self, monkeypatch):
        monkeypatch.setenv("FLEETBOUND_CELL_BUDGET", "10")
        with pytest.raises(LimitError):
            dp_solve(inst(4, (10, 10), 20))
        monkeypatch.setenv("FLEETBOUND_CELL_BUDGET", "1000")
        assert dp_solve(inst(4, (10, 10), 20)).value == 6


class TestTrivialBounds:
    def test_single_big_depot_example(self):
        comparison = trivial_bounds(inst(4, (100,), 20))
        assert (comparison.proposed, comparison.labbe, comparison.archetti) == (7, 10, 10)
        assert comparison.per_point_ceiling is None

    def test_per_point_requires_demands(self):
        comparison = trivial_bounds(inst(4, (100,), demands=(4, 4)))
        assert comparison.per_point_ceiling == 2

    def test_zero_demand(self):
        comparison = trivial_bounds(inst(4, (5,), 0))
        assert (comparison.proposed, comparison.labbe, comparison.archetti) == (0, 0, 0)

    def test_labbe_overflow_detected(self):
        with pytest.raises(RangeOverflowError):
            trivial_bounds(inst(1, (1,), MAX_VALUE))

    @given(q=st.integers(1, 10**6), delta=st.integers(0, 10**12))
    def test_labbe_archetti_within_one(self, q, delta):
        comparison = trivial_bounds(inst(q, (1,), delta))
        assert comparison.labbe <= comparison.archetti <= comparison.labbe + 1


class TestHeterogeneousBound:
    def test_additive_over_identical_subsets(self):
        subset = inst(4, (10, 10), 20)
        assert heterogeneous_bound([subset, subset]) == 12

    def test_single_subset_degenerates(self):
        subset = inst(3, (7, 2), 11)
        assert heterogeneous_bound([subset]) == multi_depot_bound(subset).value

    def test_zero_demand_subsets(self):
        subsets = [inst(4, (5,), 0), inst(9, (3, 3), 0)]
        assert heterogeneous_bound(subsets) == 0


class TestInstanceValidation:
    def test_rejects_nonpositive_capacity(self):
        with pytest.raises(InstanceError, match="vehicle_capacity"):
            inst(0, (5,), 1)

    def test_rejects_empty_depots(self):
        with pytest.raises(InstanceError, match="depot_capacities"):
            inst(4, (), 1)

    def test_rejects_zero_depot_capacity(self):
        with pytest.raises(InstanceError, match=r"depot_capacities\[1\]"):
            inst(4, (5, 0), 1)

    def test_rejects_bool_values(self):
        with pytest.raises(InstanceError):
            inst(True, (5,), 1)
        with pytest.raises(InstanceError):
            inst(4, (5, True), 1)

    def test_rejects_demand_total_mismatch(self):
        with pytest.raises(InstanceError, match="total_demand"):
            inst(4, (10,), delta=7, demands=(3, 3))

    def test_requires_some_demand_information(self):
        with pytest.raises(InstanceError):
            inst(4, (10,))

    def test_rejects_empty_demands(self):
        with pytest.raises(InstanceError, match="demands"):
            inst(4, (10,), demands=())

    def test_rejects_negative_demand(self):
        with pytest.raises(InstanceError, match=r"demands\[0\]"):
            inst(4, (10,), demands=(-1,))

    def test_rejects_values_beyond_63_bits(self):
        with pytest.raises(RangeOverflowError):
            inst(4, (MAX_VALUE + 1,), 1)
        with pytest.raises(RangeOverflowError):
            inst(4, (5,), MAX_VALUE + 1)

    def test_derives_total_from_demands(self):
        instance = inst(4, (10, 10), demands=(4, 4, 4, 4, 4))
        assert instance.total_demand == 20
        assert instance.n == 2

    def test_coerces_lists_to_tuples(self):
        instance = Instance(
            vehicle_capacity=4, depot_capacities=[10, 10], demands=[4, 4], total_demand=8
        )
        assert instance.depot_capacities == (10, 10)
        assert instance.demands == (4, 4)
        assert hash(instance) == hash(inst(4, (10, 10), delta=8, demands=(4, 4)))
