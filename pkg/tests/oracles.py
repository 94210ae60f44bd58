"""Independent reference implementations used to derive expected values.

Everything here is written against the definitions, not against the package's
code paths: Monte-Carlo point sampling for areas and centroids, parametric
segment intersection for ring simplicity, l'Huilier spherical excess for
projected areas, a scalar transcription of the force-relaxation pass, and
plain-loop shoelace measurement for converged outputs.
"""

from __future__ import annotations

import math

import numpy as np


def shoelace(points) -> float:
    """Signed polygon area, plain loops."""
    total = 0.0
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return 0.5 * total


def region_ring_points(doc, rid):
    """All rings of a region as coordinate lists (outer first per polygon)."""
    region = doc.region(rid)
    out = []
    for poly in region.polygons:
        for ring in poly.rings():
            out.append([tuple(doc.vertex_pool[i]) for i in ring])
    return out


def measured_region_area(doc, rid) -> float:
    """|outer| - |holes| via the plain-loop shoelace."""
    region = doc.region(rid)
    total = 0.0
    for poly in region.polygons:
        rings = [[tuple(doc.vertex_pool[i]) for i in r] for r in poly.rings()]
        total += abs(shoelace(rings[0]))
        for hole in rings[1:]:
            total -= abs(shoelace(hole))
    return total


def _crossings(points, ring_pts) -> np.ndarray:
    """Ray-cast crossing counts for an array of query points against one ring."""
    px = points[:, 0]
    py = points[:, 1]
    hits = np.zeros(len(points), dtype=np.int64)
    n = len(ring_pts)
    for i in range(n):
        x0, y0 = ring_pts[i]
        x1, y1 = ring_pts[(i + 1) % n]
        straddles = (y0 > py) != (y1 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xs = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
        hits += (straddles & (px < xs)).astype(np.int64)
    return hits


def points_in_region(doc, rid, points: np.ndarray) -> np.ndarray:
    """Even-odd membership over all of the region's rings."""
    total = np.zeros(len(points), dtype=np.int64)
    for ring_pts in region_ring_points(doc, rid):
        total += _crossings(points, ring_pts)
    return total % 2 == 1


def mc_region_area(doc, rid, n=1_000_000, seed=7) -> float:
    rng = np.random.default_rng(seed)
    xmin, ymin, xmax, ymax = doc.bbox
    pts = rng.uniform((xmin, ymin), (xmax, ymax), size=(n, 2))
    inside = points_in_region(doc, rid, pts)
    return float(inside.mean()) * (xmax - xmin) * (ymax - ymin)


def mc_region_centroid(doc, rid, n=1_000_000, seed=7):
    rng = np.random.default_rng(seed)
    xmin, ymin, xmax, ymax = doc.bbox
    pts = rng.uniform((xmin, ymin), (xmax, ymax), size=(n, 2))
    inside = points_in_region(doc, rid, pts)
    chosen = pts[inside]
    return float(chosen[:, 0].mean()), float(chosen[:, 1].mean())


# ---------------------------------------------------------------------------
# Segment intersection / ring simplicity (parametric formulation)
# ---------------------------------------------------------------------------


def segments_share_point(p, q, a, b) -> bool:
    rx, ry = q[0] - p[0], q[1] - p[1]
    sx, sy = b[0] - a[0], b[1] - a[1]
    denom = rx * sy - ry * sx
    qpx, qpy = a[0] - p[0], a[1] - p[1]
    if denom != 0:
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * ry - qpy * rx) / denom
        return 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0
    if qpx * ry - qpy * rx != 0:
        return False  # parallel, not collinear
    # collinear: overlap iff parameter intervals intersect
    rr = rx * rx + ry * ry
    if rr == 0:
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
            a[1], b[1]
        )
    t0 = (qpx * rx + qpy * ry) / rr
    t1 = t0 + (sx * rx + sy * ry) / rr
    return max(min(t0, t1), 0.0) <= min(max(t0, t1), 1.0)


def ring_simple_oracle(points) -> bool:
    n = len(points)
    if n < 3 or len(set(points)) != n:
        return False
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        if a == b:
            return False
        for j in range(i + 1, n):
            c, d = points[j], points[(j + 1) % n]
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                shared = b if j == i + 1 else a
                p = a if j == i + 1 else b
                q = d if j == i + 1 else c
                vx1, vy1 = p[0] - shared[0], p[1] - shared[1]
                vx2, vy2 = q[0] - shared[0], q[1] - shared[1]
                if vx1 * vy2 - vy1 * vx2 == 0 and vx1 * vx2 + vy1 * vy2 > 0:
                    return False
            elif segments_share_point(a, b, c, d):
                return False
    return True


# ---------------------------------------------------------------------------
# Spherical areas (l'Huilier excess) for the projection check
# ---------------------------------------------------------------------------


def _central_angle(p1, p2) -> float:
    lon1, lat1 = map(math.radians, p1)
    lon2, lat2 = map(math.radians, p2)
    s = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(
        (lon2 - lon1) / 2
    ) ** 2
    return 2 * math.asin(math.sqrt(s))


def _triangle_excess(p1, p2, p3) -> float:
    a = _central_angle(p2, p3)
    b = _central_angle(p1, p3)
    c = _central_angle(p1, p2)
    s = (a + b + c) / 2
    inner = (
        math.tan(s / 2)
        * math.tan((s - a) / 2)
        * math.tan((s - b) / 2)
        * math.tan((s - c) / 2)
    )
    return 4 * math.atan(math.sqrt(max(inner, 0.0)))


def spherical_quad_area(lon0, lat0, lon1, lat1, radius=1.0) -> float:
    """Area of the lon/lat rectangle via two spherical triangles."""
    p00, p10, p11, p01 = (lon0, lat0), (lon1, lat0), (lon1, lat1), (lon0, lat1)
    excess = _triangle_excess(p00, p10, p11) + _triangle_excess(p00, p11, p01)
    return radius * radius * excess


# ---------------------------------------------------------------------------
# One force-relaxation pass, transcribed with scalar arithmetic
# ---------------------------------------------------------------------------


def centroid_of_rings(rings) -> tuple[float, float]:
    area = 0.0
    mx = 0.0
    my = 0.0
    for pts in rings:
        n = len(pts)
        for i in range(n):
            x0, y0 = pts[i]
            x1, y1 = pts[(i + 1) % n]
            cross = x0 * y1 - x1 * y0
            area += cross / 2
            mx += (x0 + x1) * cross / 6
            my += (y0 + y1) * cross / 6
    return mx / area, my / area


def dcn_pass_oracle(doc, targets) -> np.ndarray:
    """Expected vertex positions after one pass, computed independently."""
    areas = {}
    centroids = {}
    for region in doc.regions:
        rings = region_ring_points(doc, region.id)
        areas[region.id] = measured_region_area(doc, region.id)
        centroids[region.id] = centroid_of_rings(rings)
    ratios = [
        max(areas[r.id], targets.targets[r.id]) / min(areas[r.id], targets.targets[r.id])
        for r in doc.regions
    ]
    f = 1.0 / (1.0 + sum(ratios) / len(ratios))

    new_points = []
    for px, py in doc.vertex_pool:
        dx_total, dy_total = 0.0, 0.0
        for region in doc.regions:
            rid = region.id
            radius = math.sqrt(areas[rid] / math.pi)
            mass = math.sqrt(targets.targets[rid] / math.pi) - radius
            cx, cy = centroids[rid]
            d = math.hypot(px - cx, py - cy)
            if d == 0:
                continue
            if d > radius:
                force = mass * radius / d
            else:
                force = mass * (d / radius) ** 2 * (4 - 3 * d / radius)
            dx_total += force * (px - cx) / d
            dy_total += force * (py - cy) / d
        new_points.append((px + f * dx_total, py + f * dy_total))
    return np.array(new_points)


# ---------------------------------------------------------------------------
# Exact minimal coloring for small graphs
# ---------------------------------------------------------------------------


def chromatic_number(nodes, edges) -> int:
    nodes = list(nodes)
    neighbors = {v: set() for v in nodes}
    for a, b in edges:
        neighbors[a].add(b)
        neighbors[b].add(a)

    def feasible(k: int) -> bool:
        coloring: dict[str, int] = {}

        def place(i: int) -> bool:
            if i == len(nodes):
                return True
            v = nodes[i]
            for color in range(k):
                if all(coloring.get(nbr) != color for nbr in neighbors[v]):
                    coloring[v] = color
                    if place(i + 1):
                        return True
                    del coloring[v]
            return False

        return place(0)

    for k in range(1, len(nodes) + 1):
        if feasible(k):
            return k
    return len(nodes)
