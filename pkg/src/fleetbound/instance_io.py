"""Parse, validate, and serialize problem instances and result rows.

Two instance formats are supported. JSON carries a single object with the
fields ``vehicle_capacity``, ``depot_capacities``, optional ``demands``,
optional ``total_demand`` and optional ``name``. The plain format is line
oriented for hand-written fixtures:

    # comment
    q 4
    depots 10 10
    demands 4 4 4 4 4

with directives ``q``, ``depots``, and ``demands`` or ``total``, one per
line, any order, each at most once. Errors always carry the offending
line or field; no input text can crash the parser.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .core import (
    BoundComparison,
    DepotAllocation,
    FleetBound,
    FleetBoundError,
    Instance,
    InstanceError,
    RangeOverflowError,
)

RESULT_CSV_COLUMNS = ["name", "q", "n", "delta", "bound", "case", "labbe", "archetti"]


class ParseError(FleetBoundError, ValueError):
    """Input text could not be parsed into a valid instance."""


@dataclass(frozen=True)
class InstanceDocument:
    """An instance as written in a file, plus its optional name."""

    vehicle_capacity: int
    depot_capacities: tuple[int, ...]
    demands: tuple[int, ...] | None = None
    total_demand: int | None = None
    name: str | None = None

    def to_instance(self) -> Instance:
        return Instance(
            vehicle_capacity=self.vehicle_capacity,
            depot_capacities=self.depot_capacities,
            demands=self.demands,
            total_demand=self.total_demand,
        )


def _decode(text: str | bytes) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return text


def detect_format(text: str | bytes) -> str:
    """Guess 'json' or 'plain' from the first non-blank character."""
    stripped = _decode(text).lstrip()
    return "json" if stripped.startswith("{") else "plain"


def parse_document(text: str | bytes, fmt: str = "auto") -> InstanceDocument:
    """Parse instance text into a validated document.

    ``fmt`` is 'json', 'plain', or 'auto' (sniff). Raises ParseError for
    anything wrong: syntax, unknown or duplicate fields, type errors, and
    every instance-level validation failure.
    """
    decoded = _decode(text)
    if fmt == "auto":
        fmt = detect_format(decoded)
    if fmt == "json":
        doc = _parse_json(decoded)
    elif fmt == "plain":
        doc = _parse_plain(decoded)
    else:
        raise ParseError(f"unknown instance format {fmt!r}")
    try:
        doc.to_instance()
    except (InstanceError, RangeOverflowError) as exc:
        raise ParseError(str(exc)) from None
    return doc


def parse_instance(text: str | bytes, fmt: str = "auto") -> Instance:
    """Parse instance text straight into a validated Instance."""
    return parse_document(text, fmt).to_instance()


_JSON_FIELDS = {"vehicle_capacity", "depot_capacities", "demands", "total_demand", "name"}


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where} must be an integer, got {value!r}")
    return value


def _parse_json(text: str) -> InstanceDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    except RecursionError:
        raise ParseError("JSON input nested too deeply") from None
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    unknown = sorted(set(data) - _JSON_FIELDS)
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(unknown)}")
    for required in ("vehicle_capacity", "depot_capacities"):
        if required not in data:
            raise ParseError(f"missing required field '{required}'")
    if "demands" not in data and "total_demand" not in data:
        raise ParseError("one of 'demands' or 'total_demand' is required")

    q = _require_int(data["vehicle_capacity"], "vehicle_capacity")
    caps_raw = data["depot_capacities"]
    if not isinstance(caps_raw, list):
        raise ParseError("depot_capacities must be a list of integers")
    caps = tuple(
        _require_int(v, f"depot_capacities[{i}]") for i, v in enumerate(caps_raw)
    )
    demands = None
    if "demands" in data:
        demands_raw = data["demands"]
        if not isinstance(demands_raw, list):
            raise ParseError("demands must be a list of integers")
        demands = tuple(
            _require_int(v, f"demands[{i}]") for i, v in enumerate(demands_raw)
        )
    total = None
    if "total_demand" in data:
        total = _require_int(data["total_demand"], "total_demand")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string")
    return InstanceDocument(
        vehicle_capacity=q,
        depot_capacities=caps,
        demands=demands,
        total_demand=total,
        name=name,
    )


def _parse_plain(text: str) -> InstanceDocument:
    seen: dict[str, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        directive, args = tokens[0], tokens[1:]
        if directive not in ("q", "depots", "demands", "total"):
            raise ParseError(f"line {lineno}: unknown directive {directive!r}")
        if directive in seen:
            raise ParseError(f"line {lineno}: duplicate directive {directive!r}")
        if not args:
            raise ParseError(f"line {lineno}: {directive!r} expects integer(s)")
        if directive in ("q", "total") and len(args) != 1:
            raise ParseError(f"line {lineno}: {directive!r} expects a single integer")
        values = []
        for tok in args:
            try:
                values.append(int(tok))
            except ValueError:
                raise ParseError(
                    f"line {lineno}: {directive!r} expects integers, got {tok!r}"
                ) from None
        seen[directive] = values

    if "q" not in seen:
        raise ParseError("missing directive 'q'")
    if "depots" not in seen:
        raise ParseError("missing directive 'depots'")
    if "demands" not in seen and "total" not in seen:
        raise ParseError("one of 'demands' or 'total' is required")
    return InstanceDocument(
        vehicle_capacity=seen["q"][0],
        depot_capacities=tuple(seen["depots"]),
        demands=tuple(seen["demands"]) if "demands" in seen else None,
        total_demand=seen["total"][0] if "total" in seen else None,
    )


def serialize_instance(doc: InstanceDocument, fmt: str = "json") -> str:
    """Write a document back out; parse_document inverts this exactly."""
    if fmt == "json":
        payload: dict = {}
        if doc.name is not None:
            payload["name"] = doc.name
        payload["vehicle_capacity"] = doc.vehicle_capacity
        payload["depot_capacities"] = list(doc.depot_capacities)
        if doc.demands is not None:
            payload["demands"] = list(doc.demands)
        if doc.total_demand is not None:
            payload["total_demand"] = doc.total_demand
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "plain":
        # The plain format has no name directive; the name is dropped.
        lines = [f"q {doc.vehicle_capacity}"]
        lines.append("depots " + " ".join(str(c) for c in doc.depot_capacities))
        if doc.demands is not None:
            lines.append("demands " + " ".join(str(d) for d in doc.demands))
        if doc.total_demand is not None:
            lines.append(f"total {doc.total_demand}")
        return "\n".join(lines) + "\n"
    raise ParseError(f"unknown instance format {fmt!r}")


def result_row(
    instance: Instance,
    bound: FleetBound,
    comparison: BoundComparison,
    witness: DepotAllocation | None = None,
    name: str | None = None,
) -> dict:
    """Flatten one computation into an ordered row dict."""
    row: dict = {}
    if name is not None:
        row["name"] = name
    row.update(
        q=instance.vehicle_capacity,
        n=instance.n,
        delta=instance.total_demand,
        bound=bound.value,
        case=bound.case.value,
    )
    if bound.pivot_depot is not None:
        row["pivot_depot"] = bound.pivot_depot
        row["pivot_budget"] = bound.pivot_budget
    row["labbe"] = comparison.labbe
    row["archetti"] = comparison.archetti
    if comparison.per_point_ceiling is not None:
        row["per_point_ceiling"] = comparison.per_point_ceiling
    if witness is not None:
        row["witness"] = {
            "allocations": list(witness.allocations),
            "per_depot_vehicles": list(witness.per_depot_vehicles),
        }
    return row


def comparison_row(
    instance: Instance, comparison: BoundComparison, name: str | None = None
) -> dict:
    row: dict = {}
    if name is not None:
        row["name"] = name
    row.update(
        q=instance.vehicle_capacity,
        n=instance.n,
        delta=instance.total_demand,
        proposed=comparison.proposed,
    )
    if comparison.per_point_ceiling is not None:
        row["per_point_ceiling"] = comparison.per_point_ceiling
    row["labbe"] = comparison.labbe
    row["archetti"] = comparison.archetti
    return row


def _csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else row.get(c) for c in columns])
    return buf.getvalue()


def _table_text(columns: list[str], rows: list[dict]) -> str:
    def cell(row: dict, col: str) -> str:
        value = row.get(col)
        if value is None:
            return ""
        if col == "witness":
            return ",".join(str(x) for x in value["allocations"])
        return str(value)

    grid = [columns] + [[cell(r, c) for c in columns] for r in rows]
    widths = [max(len(line[i]) for line in grid) for i in range(len(columns))]
    lines = [
        "  ".join(entry.ljust(w) for entry, w in zip(line, widths)).rstrip()
        for line in grid
    ]
    return "\n".join(lines) + "\n"


def serialize_rows(rows: list[dict], fmt: str, columns: list[str] | None = None) -> str:
    """Render result/comparison rows as json, csv, or an aligned table.

    JSON renders a single object for one row and an array otherwise; key
    order is fixed by construction, so equal inputs give equal bytes.
    """
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        return json.dumps(payload) + "\n"
    if columns is None:
        columns = RESULT_CSV_COLUMNS
        if any("witness" in r for r in rows):
            columns = columns + ["witness"]
    if fmt == "csv":
        return _csv_text([c for c in columns if c != "witness"], rows)
    if fmt == "table":
        return _table_text(columns, rows)
    raise ParseError(f"unknown output format {fmt!r}")


def serialize_result(
    instance: Instance,
    bound: FleetBound,
    comparison: BoundComparison,
    witness: DepotAllocation | None = None,
    fmt: str = "table",
    name: str | None = None,
) -> str:
    """Render one computed result in the requested format."""
    return serialize_rows([result_row(instance, bound, comparison, witness, name)], fmt)
