"""Cylindrical equal-area projection for longitude/latitude boundary files.

Cartogram inputs must live in a planar frame where region areas are
meaningful; this module turns degree coordinates into such a frame. The
standard parallel defaults to the latitude of the bounding-box center, which
keeps shape distortion low over the mapped extent while preserving area
ratios exactly.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import InputError

EARTH_RADIUS_KM = 6371.0072  # authalic radius: preserves total surface area


def _walk_positions(coords: Any, fn) -> Any:
    if (
        isinstance(coords, (list, tuple))
        and len(coords) >= 2
        and all(isinstance(c, (int, float)) for c in coords[:2])
    ):
        return fn(float(coords[0]), float(coords[1]))
    if isinstance(coords, (list, tuple)):
        return [_walk_positions(c, fn) for c in coords]
    raise InputError(f"bad coordinate structure: {coords!r}")


def project_cea(
    lonlat_text: str,
    standard_parallel: float | None = None,
    radius_km: float = EARTH_RADIUS_KM,
) -> str:
    """Project a lon/lat FeatureCollection to planar kilometers.

    Longitudes must lie in [-180, 180] and latitudes strictly inside
    (-90, 90). Output coordinates are x = R*cos(p0)*lon, y = R*sin(lat)/cos(p0)
    with p0 the standard parallel, so areas are proportional to true spherical
    areas for every choice of p0.
    """
    try:
        obj = json.loads(lonlat_text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed GeoJSON: {exc}") from None
    if not isinstance(obj, dict) or obj.get("type") != "FeatureCollection":
        raise InputError("malformed GeoJSON: expected a FeatureCollection")

    lat_min, lat_max = math.inf, -math.inf

    def check(lon: float, lat: float):
        nonlocal lat_min, lat_max
        if not (-180.0 <= lon <= 180.0):
            raise InputError(f"longitude out of range: {lon}")
        if not (-90.0 < lat < 90.0):
            raise InputError(f"latitude out of range: {lat}")
        lat_min = min(lat_min, lat)
        lat_max = max(lat_max, lat)
        return [lon, lat]

    for feature in obj.get("features", []):
        geometry = (feature or {}).get("geometry") or {}
        if "coordinates" in geometry:
            _walk_positions(geometry["coordinates"], check)
    if not math.isfinite(lat_min):
        raise InputError("no coordinates to project")

    phi0 = math.radians(
        standard_parallel if standard_parallel is not None else (lat_min + lat_max) / 2.0
    )
    cos0 = math.cos(phi0)

    def project(lon: float, lat: float):
        x = radius_km * cos0 * math.radians(lon)
        y = radius_km * math.sin(math.radians(lat)) / cos0
        return [x, y]

    for feature in obj["features"]:
        geometry = (feature or {}).get("geometry") or {}
        if "coordinates" in geometry:
            geometry["coordinates"] = _walk_positions(geometry["coordinates"], project)
    return json.dumps(obj)
