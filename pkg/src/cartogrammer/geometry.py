"""Planar map geometry over a shared vertex pool.

A :class:`MapDocument` stores every vertex exactly once; region rings hold
indices into that pool. Regions with a common border therefore reference the
same pool entries, so any deformation applied to the pool moves both sides of
the border together — this is what keeps cartograms contiguous.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import InputError, UnknownRegionError

Point = tuple[float, float]
BBox = tuple[float, float, float, float]


@dataclass(frozen=True)
class Polygon:
    """One outer ring plus zero or more hole rings, as pool indices."""

    outer: tuple[int, ...]
    holes: tuple[tuple[int, ...], ...] = ()

    def rings(self) -> Iterator[tuple[int, ...]]:
        yield self.outer
        yield from self.holes


@dataclass(frozen=True)
class Region:
    id: str
    name: str
    abbr: str
    polygons: tuple[Polygon, ...]


@dataclass(frozen=True)
class MapDocument:
    """Regions over a shared vertex pool, with a tight bounding box.

    Immutable after construction; the solver derives new documents via
    :meth:`with_pool`, which preserves the ring index structure exactly.
    """

    regions: tuple[Region, ...]
    vertex_pool: np.ndarray  # (n, 2) float64, marked read-only
    bbox: BBox
    units_note: str = "planar map units"

    @cached_property
    def _by_id(self) -> dict[str, Region]:
        return {r.id: r for r in self.regions}

    @property
    def region_ids(self) -> tuple[str, ...]:
        return tuple(r.id for r in self.regions)

    def region(self, region_id: str) -> Region:
        try:
            return self._by_id[region_id]
        except KeyError:
            raise UnknownRegionError(f"unknown region id {region_id!r}") from None

    def with_pool(self, pool: np.ndarray) -> "MapDocument":
        """Same regions and ring indices over new vertex positions."""
        pool = np.ascontiguousarray(pool, dtype=np.float64)
        if pool.shape != self.vertex_pool.shape:
            raise InputError(
                f"pool shape {pool.shape} does not match {self.vertex_pool.shape}"
            )
        pool.flags.writeable = False
        return replace(self, vertex_pool=pool, bbox=_pool_bbox(pool))


@dataclass(frozen=True)
class AdjacencyGraph:
    """Region neighborhood: an edge means a shared border of positive length."""

    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]  # each pair sorted ascending

    def neighbors(self, region_id: str) -> set[str]:
        out = set()
        for a, b in self.edges:
            if a == region_id:
                out.add(b)
            elif b == region_id:
                out.add(a)
        return out


@dataclass(frozen=True)
class TopologyReport:
    structural_match: bool
    adjacency_preserved: bool
    all_rings_simple: bool
    all_areas_positive: bool
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (
            self.structural_match
            and self.adjacency_preserved
            and self.all_rings_simple
            and self.all_areas_positive
        )


def _pool_bbox(pool: np.ndarray) -> BBox:
    return (
        float(pool[:, 0].min()),
        float(pool[:, 1].min()),
        float(pool[:, 0].max()),
        float(pool[:, 1].max()),
    )


def ring_signed_area(pool: np.ndarray, ring: Sequence[int]) -> float:
    """Shoelace area; positive for counterclockwise rings."""
    idx = np.asarray(ring, dtype=np.intp)
    x = pool[idx, 0]
    y = pool[idx, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _ring_moments(pool: np.ndarray, ring: Sequence[int]) -> tuple[float, float, float]:
    """Signed area plus unnormalized first moments (for centroids)."""
    idx = np.asarray(ring, dtype=np.intp)
    x = pool[idx, 0]
    y = pool[idx, 1]
    x1 = np.roll(x, -1)
    y1 = np.roll(y, -1)
    cross = x * y1 - x1 * y
    area = 0.5 * float(cross.sum())
    mx = float(((x + x1) * cross).sum()) / 6.0
    my = float(((y + y1) * cross).sum()) / 6.0
    return area, mx, my


def region_area(doc: MapDocument, region_id: str) -> float:
    """Area of a region: outer rings minus holes, in map units squared."""
    region = doc.region(region_id)
    total = 0.0
    for poly in region.polygons:
        total += abs(ring_signed_area(doc.vertex_pool, poly.outer))
        for hole in poly.holes:
            total -= abs(ring_signed_area(doc.vertex_pool, hole))
    return total


def region_areas(doc: MapDocument) -> dict[str, float]:
    """All region areas in region order."""
    return {r.id: region_area(doc, r.id) for r in doc.regions}


def total_region_area(doc: MapDocument) -> float:
    return sum(region_areas(doc).values())


def region_centroid(doc: MapDocument, region_id: str) -> Point:
    """Area-weighted centroid across all polygons; holes subtract.

    Relies on load-time orientation normalization: outer rings carry positive
    signed area, holes negative, so plain summation weights them correctly.
    """
    region = doc.region(region_id)
    area = 0.0
    mx = 0.0
    my = 0.0
    for poly in region.polygons:
        for ring in poly.rings():
            a, rx, ry = _ring_moments(doc.vertex_pool, ring)
            area += a
            mx += rx
            my += ry
    if area <= 0:
        raise InputError(f"region {region_id!r} has non-positive area")
    return (mx / area, my / area)


def _region_signed_area(doc: MapDocument, region: Region) -> float:
    return sum(
        ring_signed_area(doc.vertex_pool, ring)
        for poly in region.polygons
        for ring in poly.rings()
    )


# ---------------------------------------------------------------------------
# Ring simplicity
# ---------------------------------------------------------------------------


def ring_is_simple(pool: np.ndarray, ring: Sequence[int]) -> bool:
    """No self-intersection: non-adjacent edges share no point, adjacent
    edges meet only at their common vertex (no spikes, no zero-length edges).
    Collinear consecutive edges are allowed — shared borders routinely insert
    vertices in the middle of straight segments.

    Vectorized over all segment pairs; the solver calls this after every pass.
    """
    n = len(ring)
    if n < 3 or len(set(ring)) != n:
        return False
    idx = np.asarray(ring, dtype=np.intp)
    a = pool[idx]  # segment starts
    b = pool[np.roll(idx, -1)]  # segment ends
    if (a == b).all(axis=1).any():
        return False  # zero-length edge

    # Adjacent pairs: reject a fold-back (collinear with the previous edge and
    # overlapping beyond the shared vertex); straight-through vertices pass.
    prev = np.roll(a, 1, axis=0)  # far end of the previous edge
    v1 = prev - a
    v2 = b - a
    collinear = v1[:, 0] * v2[:, 1] - v1[:, 1] * v2[:, 0] == 0.0
    folded = v1[:, 0] * v2[:, 0] + v1[:, 1] * v2[:, 1] > 0.0
    if (collinear & folded).any():
        return False

    # Non-adjacent pairs, all at once. Rows index segment i, columns segment j.
    dx = b[:, 0] - a[:, 0]
    dy = b[:, 1] - a[:, 1]
    ax, ay = a[:, 0], a[:, 1]
    bx, by = b[:, 0], b[:, 1]
    # side of segment j's endpoints relative to line i
    d3 = dx[:, None] * (ay[None, :] - ay[:, None]) - dy[:, None] * (ax[None, :] - ax[:, None])
    d4 = dx[:, None] * (by[None, :] - ay[:, None]) - dy[:, None] * (bx[None, :] - ax[:, None])
    # side of segment i's endpoints relative to line j
    d1 = d3.T
    d2 = dx[None, :] * (by[:, None] - ay[None, :]) - dy[None, :] * (bx[:, None] - ax[None, :])

    proper = (
        ((d1 > 0) != (d2 > 0))
        & (d1 != 0)
        & (d2 != 0)
        & ((d3 > 0) != (d4 > 0))
        & (d3 != 0)
        & (d4 != 0)
    )

    def on_segment(px, py, sx0, sy0, sx1, sy1):
        return (
            (np.minimum(sx0, sx1) <= px)
            & (px <= np.maximum(sx0, sx1))
            & (np.minimum(sy0, sy1) <= py)
            & (py <= np.maximum(sy0, sy1))
        )

    # collinear or endpoint touching: a zero side value plus bbox containment
    touch = (d1 == 0) & on_segment(
        ax[:, None], ay[:, None], ax[None, :], ay[None, :], bx[None, :], by[None, :]
    )
    touch |= (d2 == 0) & on_segment(
        bx[:, None], by[:, None], ax[None, :], ay[None, :], bx[None, :], by[None, :]
    )
    touch |= (d3 == 0) & on_segment(
        ax[None, :], ay[None, :], ax[:, None], ay[:, None], bx[:, None], by[:, None]
    )
    touch |= (d4 == 0) & on_segment(
        bx[None, :], by[None, :], ax[:, None], ay[:, None], bx[:, None], by[:, None]
    )

    bad = proper | touch
    ids = np.arange(n)
    neighbor = (ids[:, None] - ids[None, :]) % n
    nonadjacent = (neighbor != 0) & (neighbor != 1) & (neighbor != n - 1)
    return not (bad & nonadjacent).any()


# ---------------------------------------------------------------------------
# Adjacency
# ---------------------------------------------------------------------------


def build_adjacency(doc: MapDocument) -> AdjacencyGraph:
    """Edge iff two regions' rings contain the same undirected segment.

    Purely combinatorial over pool indices, so it is invariant under any
    deformation of vertex positions. Regions touching at a single vertex do
    not count as neighbors.
    """
    shared: dict[tuple[int, int], set[str]] = {}
    for region in doc.regions:
        for poly in region.polygons:
            for ring in poly.rings():
                n = len(ring)
                for k in range(n):
                    u, v = ring[k], ring[(k + 1) % n]
                    key = (u, v) if u < v else (v, u)
                    shared.setdefault(key, set()).add(region.id)
    edges: set[tuple[str, str]] = set()
    for owners in shared.values():
        if len(owners) >= 2:
            for a, b in combinations(sorted(owners), 2):
                edges.add((a, b))
    return AdjacencyGraph(nodes=tuple(r.id for r in doc.regions), edges=frozenset(edges))


# ---------------------------------------------------------------------------
# Topology verification
# ---------------------------------------------------------------------------


def _same_structure(before: MapDocument, after: MapDocument) -> list[str]:
    problems = []
    if len(before.vertex_pool) != len(after.vertex_pool):
        problems.append(
            f"pool length changed: {len(before.vertex_pool)} -> {len(after.vertex_pool)}"
        )
    if before.region_ids != after.region_ids:
        problems.append("region ids or their order changed")
        return problems
    for rb, ra in zip(before.regions, after.regions):
        if tuple(p.outer for p in rb.polygons) != tuple(p.outer for p in ra.polygons) or tuple(
            p.holes for p in rb.polygons
        ) != tuple(p.holes for p in ra.polygons):
            problems.append(f"ring indexing changed in region {rb.id!r}")
    return problems


def verify_topology(before: MapDocument, after: MapDocument) -> TopologyReport:
    """Check that `after` is a topology-preserving deformation of `before`.

    Structural mismatches (different pool length or ring indexing) are
    reported as a failed check, never raised.
    """
    problems = _same_structure(before, after)
    if problems:
        return TopologyReport(False, False, False, False, tuple(problems))

    adjacency_preserved = build_adjacency(before).edges == build_adjacency(after).edges
    if not adjacency_preserved:
        problems.append("adjacency edge set changed")

    all_simple = True
    for region in after.regions:
        for pi, poly in enumerate(region.polygons):
            for ri, ring in enumerate(poly.rings()):
                if not ring_is_simple(after.vertex_pool, ring):
                    all_simple = False
                    label = "outer" if ri == 0 else f"hole {ri - 1}"
                    problems.append(
                        f"self-intersecting ring: region {region.id!r} polygon {pi} {label}"
                    )

    all_positive = True
    for region in after.regions:
        for pi, poly in enumerate(region.polygons):
            if ring_signed_area(after.vertex_pool, poly.outer) <= 0:
                all_positive = False
                problems.append(f"inverted outer ring: region {region.id!r} polygon {pi}")
            for hi, hole in enumerate(poly.holes):
                if ring_signed_area(after.vertex_pool, hole) >= 0:
                    all_positive = False
                    problems.append(
                        f"inverted hole: region {region.id!r} polygon {pi} hole {hi}"
                    )
        if _region_signed_area(after, region) <= 0:
            all_positive = False
            problems.append(f"non-positive total area: region {region.id!r}")

    return TopologyReport(
        structural_match=True,
        adjacency_preserved=adjacency_preserved,
        all_rings_simple=all_simple,
        all_areas_positive=all_positive,
        problems=tuple(problems),
    )


# ---------------------------------------------------------------------------
# GeoJSON parsing
# ---------------------------------------------------------------------------


def _iter_position_lists(geometry: Mapping) -> list[list[list[float]]]:
    """Rings of a Polygon or MultiPolygon as nested position lists."""
    gtype = geometry.get("type")
    coords = geometry.get("coordinates")
    if gtype == "Polygon":
        polys = [coords]
    elif gtype == "MultiPolygon":
        polys = coords
    else:
        raise InputError(f"non-polygonal geometry: {gtype}")
    if not isinstance(polys, list) or not polys:
        raise InputError(f"geometry has no rings")
    return polys


def parse_geojson(
    text: str,
    id_property: str = "id",
    name_property: str = "name",
    abbr_property: str = "abbr",
    snap_tolerance: float | None = None,
) -> MapDocument:
    """Parse a GeoJSON FeatureCollection into a shared-vertex MapDocument.

    Coordinates that compare equal are merged into a single pool entry, which
    is what makes shared borders deform as one. `snap_tolerance` additionally
    merges vertices within that distance (quantization); the default is 1e-9
    of the bounding-box diagonal, and 0 disables snapping entirely. Ring
    orientation is normalized to counterclockwise outers and clockwise holes.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed GeoJSON: {exc}") from None
    if not isinstance(obj, dict) or obj.get("type") != "FeatureCollection":
        raise InputError("malformed GeoJSON: expected a FeatureCollection")
    features = obj.get("features")
    if not isinstance(features, list) or not features:
        raise InputError("malformed GeoJSON: FeatureCollection has no features")

    # First pass: validate coordinates and find the extent, which fixes the
    # default snap tolerance before any merging happens.
    lo = [math.inf, math.inf]
    hi = [-math.inf, -math.inf]
    staged: list[tuple[str, str, str, list[list[list[float]]]]] = []
    seen_ids: set[str] = set()
    for i, feature in enumerate(features):
        if not isinstance(feature, dict):
            raise InputError(f"malformed GeoJSON: feature {i} is not an object")
        props = feature.get("properties") or {}
        raw_id = props.get(id_property)
        if raw_id is None or str(raw_id) == "":
            raise InputError(f"feature {i}: missing or empty id property {id_property!r}")
        rid = str(raw_id)
        if rid in seen_ids:
            raise InputError(f"duplicate region id {rid!r}")
        seen_ids.add(rid)
        name = str(props.get(name_property, rid))
        abbr = str(props.get(abbr_property, ""))
        geometry = feature.get("geometry")
        if not isinstance(geometry, dict):
            raise InputError(f"feature {rid!r}: non-polygonal geometry: None")
        polys = _iter_position_lists(geometry)
        for rings in polys:
            for ring in rings:
                for pos in ring:
                    try:
                        x, y = float(pos[0]), float(pos[1])
                    except (TypeError, ValueError, IndexError):
                        raise InputError(f"feature {rid!r}: bad coordinate {pos!r}") from None
                    if not (math.isfinite(x) and math.isfinite(y)):
                        raise InputError(f"feature {rid!r}: non-finite coordinate")
                    lo[0] = min(lo[0], x)
                    lo[1] = min(lo[1], y)
                    hi[0] = max(hi[0], x)
                    hi[1] = max(hi[1], y)
        staged.append((rid, name, abbr, polys))

    diagonal = math.hypot(hi[0] - lo[0], hi[1] - lo[1])
    snap = snap_tolerance if snap_tolerance is not None else 1e-9 * diagonal

    coords: list[tuple[float, float]] = []
    index: dict[tuple, list[int]] = {}

    def intern(x: float, y: float) -> int:
        if snap <= 0:
            bucket = index.setdefault((x, y), [])
            if bucket:
                return bucket[0]
        else:
            # grid hash with neighborhood search: merge with the first pooled
            # vertex within the snap distance, wherever it fell on the grid
            gx, gy = round(x / snap), round(y / snap)
            for dx in (0, -1, 1):
                for dy in (0, -1, 1):
                    for i in index.get((gx + dx, gy + dy), ()):
                        px, py = coords[i]
                        if math.hypot(px - x, py - y) <= snap:
                            return i
            bucket = index.setdefault((gx, gy), [])
        found = len(coords)
        bucket.append(found)
        coords.append((x, y))
        return found

    def make_ring(ring: list[list[float]], rid: str) -> list[int]:
        idxs = [intern(float(p[0]), float(p[1])) for p in ring]
        if len(idxs) >= 2 and idxs[0] == idxs[-1]:
            idxs.pop()  # GeoJSON rings repeat the first position at the end
        idxs = [v for k, v in enumerate(idxs) if v != idxs[k - 1]] or idxs[:1]
        if len(set(idxs)) < 3:
            raise InputError(f"region {rid!r}: ring with < 3 distinct vertices")
        return idxs

    parsed: list[tuple[str, str, str, list[list[list[int]]]]] = []
    for rid, name, abbr, polys in staged:
        parsed_polys = []
        for rings in polys:
            if not rings:
                raise InputError(f"region {rid!r}: polygon with no rings")
            parsed_polys.append([make_ring(ring, rid) for ring in rings])
        parsed.append((rid, name, abbr, parsed_polys))

    raw_pool = np.array(coords, dtype=np.float64)

    # Orientation normalization: counterclockwise outers, clockwise holes.
    oriented: list[tuple[str, str, str, list[list[list[int]]]]] = []
    for rid, name, abbr, parsed_polys in parsed:
        polys = []
        for rings in parsed_polys:
            fixed = []
            for ri, ring in enumerate(rings):
                area = ring_signed_area(raw_pool, ring)
                if area == 0:
                    raise InputError(f"region {rid!r}: degenerate ring (zero area)")
                want_ccw = ri == 0
                if (area > 0) != want_ccw:
                    ring = ring[::-1]
                fixed.append(ring)
            polys.append(fixed)
        oriented.append((rid, name, abbr, polys))

    # Canonical pool order: first encounter along the normalized rings. This
    # makes parse(export(doc)) reproduce pool order and ring indices exactly.
    remap: dict[int, int] = {}
    for _, _, _, polys in oriented:
        for rings in polys:
            for ring in rings:
                for i in ring:
                    if i not in remap:
                        remap[i] = len(remap)
    pool = np.empty_like(raw_pool)
    for old, new in remap.items():
        pool[new] = raw_pool[old]
    pool.flags.writeable = False

    final_regions = []
    for rid, name, abbr, polys in oriented:
        polygons = tuple(
            Polygon(
                outer=tuple(remap[i] for i in rings[0]),
                holes=tuple(tuple(remap[i] for i in ring) for ring in rings[1:]),
            )
            for rings in polys
        )
        final_regions.append(Region(id=rid, name=name, abbr=abbr, polygons=polygons))

    doc = MapDocument(
        regions=tuple(final_regions),
        vertex_pool=pool,
        bbox=_pool_bbox(pool),
    )
    for region in doc.regions:
        if _region_signed_area(doc, region) <= 0:
            raise InputError(f"region {region.id!r} has non-positive total area")
    return doc
