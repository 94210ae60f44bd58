"""CSV ingestion, map binding, the interpretable-total summary and target areas.

Missing entries are represented as ``None`` throughout. A region with missing
data keeps its conventional-map area in the cartogram; regions with data share
the remaining area in proportion to their values.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DataError, InputError
from .geometry import MapDocument, region_areas
from .legend import format_value

MISSING = None

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_HEADER_UNIT = re.compile(r"^(?P<name>.*\S)\s*\((?P<unit>[^()]*)\)\s*$")


@dataclass(frozen=True)
class Dataset:
    """Per-region values for one mapping variable; None marks missing data."""

    name: str
    unit: str
    entries: Mapping[str, float | None]

    def values_present(self) -> dict[str, float]:
        return {k: v for k, v in self.entries.items() if v is not None}


@dataclass(frozen=True)
class BoundDataset:
    """A dataset completed against a map: every region has an entry."""

    dataset: Dataset
    warnings: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        return self.dataset.name

    @property
    def unit(self) -> str:
        return self.dataset.unit

    @property
    def entries(self) -> Mapping[str, float | None]:
        return self.dataset.entries

    def missing_ids(self) -> frozenset[str]:
        return frozenset(k for k, v in self.entries.items() if v is None)


@dataclass(frozen=True)
class AdditivitySummary:
    total: float
    formatted_total: str
    slice_shares: Mapping[str, float]  # missing entries excluded; sums to 1
    confirmation_prompt: str


@dataclass(frozen=True)
class TargetAreas:
    """Desired area per region; sums to the map's total region area."""

    targets: Mapping[str, float]
    total_area: float

    def __post_init__(self):
        for rid, t in self.targets.items():
            if not (t > 0 and math.isfinite(t)):
                raise DataError(f"non-positive target area for region {rid!r}")
        s = sum(self.targets.values())
        if self.total_area <= 0 or abs(s - self.total_area) > 1e-9 * self.total_area:
            raise DataError(
                f"targets sum to {s}, expected total area {self.total_area}"
            )


def _parse_cell(raw: str, dataset: str, rid: str) -> float | None:
    cell = raw.strip()
    if cell == "":
        return MISSING
    if not _NUMBER.match(cell):
        raise DataError(
            f"dataset {dataset!r}, region {rid!r}: non-numeric value {raw!r}"
            " (plain decimal numbers only, no thousands separators)"
        )
    value = float(cell)
    if value < 0:
        raise DataError(f"dataset {dataset!r}, region {rid!r}: negative value {raw!r}")
    if not math.isfinite(value):
        raise DataError(f"dataset {dataset!r}, region {rid!r}: non-finite value {raw!r}")
    return value


def parse_csv(text: str) -> list[Dataset]:
    """Parse an RFC 4180 CSV into one Dataset per value column.

    The first column holds region ids; every other column header is either
    "Name" or "Name (unit)". Empty cells become missing entries.
    """
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows:
        raise InputError("empty CSV")
    header = rows[0]
    if len(header) < 2:
        raise InputError("CSV has no value columns")

    columns: list[tuple[str, str]] = []
    for raw in header[1:]:
        m = _HEADER_UNIT.match(raw)
        if m:
            columns.append((m.group("name"), m.group("unit").strip()))
        else:
            name = raw.strip()
            if not name:
                raise InputError("CSV has an unnamed value column")
            columns.append((name, ""))
    names = [n for n, _ in columns]
    if len(set(names)) != len(names):
        raise InputError("duplicate dataset column names in CSV header")

    entries: list[dict[str, float | None]] = [{} for _ in columns]
    seen: set[str] = set()
    for rownum, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(
                f"CSV row {rownum}: {len(row)} cells, header has {len(header)}"
            )
        rid = row[0].strip()
        if not rid:
            raise InputError(f"CSV row {rownum}: empty region id")
        if rid in seen:
            raise InputError(f"duplicate region id row {rid!r}")
        seen.add(rid)
        for col, cell in enumerate(row[1:]):
            entries[col][rid] = _parse_cell(cell, names[col], rid)
    if not seen:
        raise InputError("CSV has no data rows")

    datasets = []
    for (name, unit), column in zip(columns, entries):
        if not any(v is not None and v > 0 for v in column.values()):
            raise DataError(f"dataset {name!r} has no positive values")
        datasets.append(Dataset(name=name, unit=unit, entries=column))
    return datasets


def bind(doc: MapDocument, dataset: Dataset) -> BoundDataset:
    """Complete a dataset against a map's region list.

    Ids in the dataset that are not on the map are an error; map regions
    absent from the dataset become missing entries, with a warning.
    """
    map_ids = set(doc.region_ids)
    unknown = sorted(set(dataset.entries) - map_ids)
    if unknown:
        raise InputError(
            f"dataset {dataset.name!r} has ids not on the map: {', '.join(unknown)}"
        )
    completed: dict[str, float | None] = {}
    warnings = []
    for rid in doc.region_ids:
        completed[rid] = dataset.entries.get(rid, MISSING)
        if completed[rid] is None:
            warnings.append(f"{rid}: no data - area will be preserved")
    if not any(v is not None and v > 0 for v in completed.values()):
        raise DataError(f"dataset {dataset.name!r} has no positive values")
    return BoundDataset(
        dataset=Dataset(dataset.name, dataset.unit, completed),
        warnings=tuple(warnings),
    )


def additivity_summary(bound: BoundDataset) -> AdditivitySummary:
    """The pie-chart gate: total, shares, and the confirmation prompt.

    Produced before any cartogram computation; callers must surface the
    prompt and obtain confirmation that the total is a meaningful quantity.
    """
    present = bound.dataset.values_present()
    total = sum(present.values())
    formatted = format_value(total, bound.unit)
    shares = {rid: v / total for rid, v in present.items()}
    prompt = (
        f"Your data sums to an approximate total of {formatted}. "
        "Is this a meaningful quantity?"
    )
    return AdditivitySummary(
        total=total,
        formatted_total=formatted,
        slice_shares=shares,
        confirmation_prompt=prompt,
    )


def compute_target_areas(doc: MapDocument, bound: BoundDataset) -> TargetAreas:
    """Desired cartogram area per region.

    Regions with missing data keep their current area; the remaining area is
    split among the others in proportion to their values, so the total region
    area is conserved. Zero values are rejected: a zero target area is
    geometrically degenerate for a contiguous cartogram (merge such regions
    or mark them missing instead).
    """
    areas = region_areas(doc)
    if set(bound.entries) != set(areas):
        raise InputError("dataset is not bound to this map (region ids differ)")
    present = {rid: v for rid, v in bound.entries.items() if v is not None}
    if not present:
        raise DataError("all regions are missing; nothing to map")
    zeros = sorted(rid for rid, v in present.items() if v == 0)
    if zeros:
        raise DataError(
            f"zero value for region(s) {', '.join(zeros)}: zero target areas are"
            " degenerate; merge these regions or mark them missing"
        )
    total_area = sum(areas.values())
    missing_area = sum(areas[rid] for rid in bound.entries if bound.entries[rid] is None)
    value_sum = sum(present.values())
    available = total_area - missing_area
    targets = {}
    for rid in areas:
        v = bound.entries[rid]
        targets[rid] = areas[rid] if v is None else available * v / value_sum
    return TargetAreas(targets=targets, total_area=total_area)
