"""Input validation helpers for programmatically built documents."""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError
from .geometry import (
    MapDocument,
    region_area,
    ring_is_simple,
    ring_signed_area,
)


def check_map_document(doc: MapDocument) -> MapDocument:
    """Validate MapDocument invariants; returns the document for chaining.

    parse_geojson output always satisfies these; use this on documents
    assembled by hand before feeding them to the solver.
    """
    pool = doc.vertex_pool
    if pool.ndim != 2 or pool.shape[1] != 2:
        raise InputError(f"vertex pool must be (n, 2), got {pool.shape}")
    if not np.isfinite(pool).all():
        raise InputError("vertex pool contains non-finite coordinates")
    n = len(pool)

    ids = [r.id for r in doc.regions]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate region ids")
    if any(not isinstance(rid, str) or not rid for rid in ids):
        raise InputError("region ids must be non-empty strings")

    for region in doc.regions:
        if not region.polygons:
            raise InputError(f"region {region.id!r} has no polygons")
        for pi, poly in enumerate(region.polygons):
            for ring in poly.rings():
                if any(not (0 <= i < n) for i in ring):
                    raise InputError(f"region {region.id!r}: ring index out of pool range")
                if len(set(ring)) < 3:
                    raise InputError(f"region {region.id!r}: ring with < 3 distinct vertices")
                if not ring_is_simple(pool, ring):
                    raise InputError(
                        f"region {region.id!r} polygon {pi}: self-intersecting ring"
                    )
            if ring_signed_area(pool, poly.outer) <= 0:
                raise InputError(f"region {region.id!r}: outer ring not counterclockwise")
            for hole in poly.holes:
                if ring_signed_area(pool, hole) >= 0:
                    raise InputError(f"region {region.id!r}: hole ring not clockwise")
        if region_area(doc, region.id) <= 0:
            raise InputError(f"region {region.id!r} has non-positive area")

    xmin, ymin, xmax, ymax = doc.bbox
    tight = (
        math.isclose(xmin, float(pool[:, 0].min()))
        and math.isclose(ymin, float(pool[:, 1].min()))
        and math.isclose(xmax, float(pool[:, 0].max()))
        and math.isclose(ymax, float(pool[:, 1].max()))
    )
    if not tight:
        raise InputError("bbox does not tightly enclose the vertex pool")
    return doc
