"""Tight fleet-size upper bounds for split-delivery routing problems."""

from .core import (
    MAX_VALUE,
    BoundCase,
    BoundComparison,
    DepotAllocation,
    FleetBound,
    FleetBoundError,
    HalfCapacity,
    Instance,
    InstanceError,
    LimitError,
    RangeOverflowError,
    SingleDepotWitness,
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
from .instance_io import (
    InstanceDocument,
    ParseError,
    parse_document,
    parse_instance,
    serialize_instance,
    serialize_result,
)
from .oracle import (
    GridSpec,
    SweepReport,
    brute_force_multi_depot,
    brute_force_single_depot,
    certify_depot_allocation,
    certify_single_depot_witness,
    sweep,
)

__version__ = "0.1.0"
