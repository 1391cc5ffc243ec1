"""Command-line front end.

A thin client over the same operations the HTTP service exposes: compute
bounds for instance files, compare against the classical bounds, run the
verification sweep, and benchmark the closed form.

Exit codes: 0 success, 1 verification found mismatches, 2 usage or input
error. ``--instance`` accepts a single file or a directory; in a
directory every file becomes one output row and a failing file does not
abort the rest (it is reported on stderr and flips the exit code to 2).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import run_bench
from .core import (
    FleetBound,
    FleetBoundError,
    multi_depot_bound,
    multi_depot_witness,
    trivial_bounds,
)
from .instance_io import (
    comparison_row,
    parse_document,
    result_row,
    serialize_rows,
)
from .oracle import GridSpec, sweep

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2

CORRUPT_ENV = "FLEETBOUND_TEST_CORRUPT"  # test-only hook, see cmd_verify


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fleetbound",
        description="Tight fleet-size upper bounds for split-delivery routing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="compute the fleet bound for instance file(s)")
    bound.add_argument("--instance", required=True, help="instance file or directory")
    bound.add_argument("--format", choices=["json", "csv", "table"], default="table")
    bound.add_argument(
        "--witness", action="store_true", help="include the attaining depot allocation"
    )

    compare = sub.add_parser("compare", help="compare against the classical bounds")
    compare.add_argument("--instance", required=True, help="instance file or directory")
    compare.add_argument("--format", choices=["json", "csv", "table"], default="table")

    verify = sub.add_parser("verify", help="sweep a grid against the oracles")
    verify.add_argument("--q-max", type=int, default=4)
    verify.add_argument("--n-max", type=int, default=2)
    verify.add_argument("--c-max", type=int, default=8)
    verify.add_argument("--delta-max", type=int, default=16)
    verify.add_argument("--sample", type=int, default=None, help="sample instead of exhaustive")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--format", choices=["json", "text"], default="text")

    bench = sub.add_parser("bench", help="time the closed form on a random instance")
    bench.add_argument("--n", type=int, required=True, help="number of depots")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--q", type=int, default=100, help="vehicle capacity")
    bench.add_argument("--c-max", type=int, default=10**6, help="max depot capacity")
    bench.add_argument("--delta", type=int, default=None, help="total demand (default n*c_max)")
    bench.add_argument("--format", choices=["json", "text"], default="text")

    return parser


def _instance_paths(target: str) -> list[Path]:
    path = Path(target)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.is_file())
        if not files:
            raise FleetBoundError(f"directory {target!r} contains no instance files")
        return files
    return [path]


def _load_rows(args, with_witness: bool, row_builder) -> tuple[list[dict], int]:
    rows: list[dict] = []
    failures = 0
    for path in _instance_paths(args.instance):
        try:
            doc = parse_document(path.read_bytes())
            instance = doc.to_instance()
            rows.append(row_builder(instance, with_witness, doc.name or path.stem))
        except (OSError, FleetBoundError) as exc:
            failures += 1
            print(f"{path}: {exc}", file=sys.stderr)
    return rows, failures


def cmd_bound(args) -> int:
    def build(instance, with_witness, name):
        bound = multi_depot_bound(instance)
        comparison = trivial_bounds(instance)
        witness = multi_depot_witness(instance) if with_witness else None
        return result_row(instance, bound, comparison, witness, name)

    rows, failures = _load_rows(args, args.witness, build)
    if rows:
        sys.stdout.write(serialize_rows(rows, args.format))
    return EXIT_INPUT if failures else EXIT_OK


def cmd_compare(args) -> int:
    def build(instance, _with_witness, name):
        return comparison_row(instance, trivial_bounds(instance), name)

    rows, failures = _load_rows(args, False, build)
    if rows:
        columns = ["name", "q", "n", "delta", "proposed"]
        if any("per_point_ceiling" in row for row in rows):
            columns.append("per_point_ceiling")
        columns += ["labbe", "archetti"]
        sys.stdout.write(serialize_rows(rows, args.format, columns))
    return EXIT_INPUT if failures else EXIT_OK


def _corrupted_bound(instance) -> FleetBound:
    # Deliberately wrong on odd demands; lets tests drive the mismatch path.
    result = multi_depot_bound(instance)
    return FleetBound(value=result.value + instance.total_demand % 2, case=result.case)


def cmd_verify(args) -> int:
    spec = GridSpec(
        q_range=(1, args.q_max),
        n_range=(1, args.n_max),
        c_range=(1, args.c_max),
        delta_range=(0, args.delta_max),
        sample=args.sample,
        seed=args.seed,
    )
    bound_fn = _corrupted_bound if os.environ.get(CORRUPT_ENV) else None
    report = sweep(spec, bound_fn=bound_fn)
    if args.format == "json":
        print(report.to_json())
    else:
        for mismatch in report.mismatches:
            print(f"MISMATCH {json.dumps(mismatch)}")
        print(
            f"checked {report.instances_checked} instances "
            f"in {report.elapsed_ms:.0f} ms: {len(report.mismatches)} mismatches"
        )
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_bench(args) -> int:
    result = run_bench(
        n=args.n,
        seed=args.seed,
        vehicle_capacity=args.q,
        c_max=args.c_max,
        total_demand=args.delta,
    )
    if args.format == "json":
        print(json.dumps(result.to_dict()))
    else:
        print(
            f"n={result.n} q={result.vehicle_capacity} c_max={result.c_max} "
            f"delta={result.total_demand} seed={result.seed} "
            f"elapsed_s={result.elapsed_seconds:.4f} bound={result.bound}"
        )
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "bound": cmd_bound,
        "compare": cmd_compare,
        "verify": cmd_verify,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (FleetBoundError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
