"""HTTP service exposing the bound computations.

Run with: uvicorn fleetbound.service:app

Every endpoint is a stateless wrapper over the core functions, so the
service can be scaled to any number of workers. Invalid instances are
rejected with 422 and the core validation message.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .bench import run_bench
from .core import (
    FleetBoundError,
    Instance,
    LimitError,
    heterogeneous_bound,
    multi_depot_bound,
    multi_depot_witness,
    trivial_bounds,
)
from .oracle import GridSpec, sweep


class InstancePayload(BaseModel):
    vehicle_capacity: int
    depot_capacities: list[int] = Field(min_length=1)
    demands: list[int] | None = None
    total_demand: int | None = None
    name: str | None = None

    def to_instance(self) -> Instance:
        try:
            return Instance(
                vehicle_capacity=self.vehicle_capacity,
                depot_capacities=tuple(self.depot_capacities),
                demands=tuple(self.demands) if self.demands is not None else None,
                total_demand=self.total_demand,
            )
        except FleetBoundError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None


class WitnessPayload(BaseModel):
    allocations: list[int]
    per_depot_vehicles: list[int]


class BoundResponse(BaseModel):
    name: str | None = None
    q: int
    n: int
    delta: int
    bound: int
    case: str
    pivot_depot: int | None = None
    pivot_budget: int | None = None
    witness: WitnessPayload | None = None


class CompareResponse(BaseModel):
    name: str | None = None
    q: int
    n: int
    delta: int
    proposed: int
    per_point_ceiling: int | None = None
    labbe: int
    archetti: int


class VerifyRequest(BaseModel):
    q_max: int = Field(default=4, ge=1)
    n_max: int = Field(default=2, ge=1)
    c_max: int = Field(default=8, ge=1)
    delta_max: int = Field(default=16, ge=0)
    sample: int | None = Field(default=None, ge=1)
    seed: int = 0


class VerifyResponse(BaseModel):
    spec: dict
    instances_checked: int
    mismatches: list[dict]
    elapsed_ms: float


class BenchRequest(BaseModel):
    n: int = Field(ge=1)
    seed: int = 0
    q: int = Field(default=100, ge=1)
    c_max: int = Field(default=10**6, ge=1)
    delta: int | None = Field(default=None, ge=0)


class BenchResponse(BaseModel):
    n: int
    q: int
    c_max: int
    delta: int
    seed: int
    bound: int
    elapsed_seconds: float


class FleetRequest(BaseModel):
    subsets: list[InstancePayload] = Field(min_length=1)


class FleetResponse(BaseModel):
    total: int
    per_subset: list[int]


app = FastAPI(
    title="fleetbound",
    version=__version__,
    description="Tight fleet-size upper bounds for split-delivery routing",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/bound", response_model=BoundResponse, response_model_exclude_none=True)
def bound(payload: InstancePayload, include_witness: bool = False) -> BoundResponse:
    instance = payload.to_instance()
    result = multi_depot_bound(instance)
    witness = None
    if include_witness:
        allocation = multi_depot_witness(instance)
        witness = WitnessPayload(
            allocations=list(allocation.allocations),
            per_depot_vehicles=list(allocation.per_depot_vehicles),
        )
    return BoundResponse(
        name=payload.name,
        q=instance.vehicle_capacity,
        n=instance.n,
        delta=instance.total_demand,
        bound=result.value,
        case=result.case.value,
        pivot_depot=result.pivot_depot,
        pivot_budget=result.pivot_budget,
        witness=witness,
    )


@app.post("/compare", response_model=CompareResponse, response_model_exclude_none=True)
def compare(payload: InstancePayload) -> CompareResponse:
    instance = payload.to_instance()
    comparison = trivial_bounds(instance)
    return CompareResponse(
        name=payload.name,
        q=instance.vehicle_capacity,
        n=instance.n,
        delta=instance.total_demand,
        proposed=comparison.proposed,
        per_point_ceiling=comparison.per_point_ceiling,
        labbe=comparison.labbe,
        archetti=comparison.archetti,
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest) -> VerifyResponse:
    spec = GridSpec(
        q_range=(1, request.q_max),
        n_range=(1, request.n_max),
        c_range=(1, request.c_max),
        delta_range=(0, request.delta_max),
        sample=request.sample,
        seed=request.seed,
    )
    try:
        report = sweep(spec)
    except LimitError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    return VerifyResponse(**report.to_dict())


@app.post("/bench", response_model=BenchResponse)
def bench(request: BenchRequest) -> BenchResponse:
    result = run_bench(
        n=request.n,
        seed=request.seed,
        vehicle_capacity=request.q,
        c_max=request.c_max,
        total_demand=request.delta,
    )
    return BenchResponse(
        n=result.n,
        q=result.vehicle_capacity,
        c_max=result.c_max,
        delta=result.total_demand,
        seed=result.seed,
        bound=result.bound,
        elapsed_seconds=result.elapsed_seconds,
    )


@app.post("/fleet", response_model=FleetResponse)
def fleet(request: FleetRequest) -> FleetResponse:
    """Bound for a heterogeneous fleet, one instance per vehicle type."""
    instances = [payload.to_instance() for payload in request.subsets]
    per_subset = [multi_depot_bound(inst).value for inst in instances]
    return FleetResponse(total=heterogeneous_bound(instances), per_subset=per_subset)
