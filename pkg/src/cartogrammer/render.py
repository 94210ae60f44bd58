"""Exports: SVG maps, the confirmation pie chart, GeoJSON, and the viewer bundle.

All outputs are deterministic functions of their inputs: element order follows
region order and numbers are formatted with fixed rules, so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from .colors import DEFAULT_PALETTE, ColorAssignment, Palette
from .datasets import AdditivitySummary, BoundDataset, additivity_summary
from .errors import InputError
from .geometry import MapDocument, _same_structure, total_region_area
from .legend import LegendSpec, format_value

Canvas = tuple[int, int]

ANIMATION_MS = 1000  # dataset-switching morph duration in the viewer

_QUOTE = {'"': "&quot;"}


def fit_scale(bbox, canvas: Canvas) -> float:
    """Uniform world -> pixel scale that fits the bbox into the canvas."""
    w = bbox[2] - bbox[0]
    h = bbox[3] - bbox[1]
    cw, ch = canvas
    if cw <= 0 or ch <= 0:
        raise InputError("canvas must have positive size")
    if w <= 0 or h <= 0:
        raise InputError("degenerate bounding box")
    return min(cw / w, ch / h)


def _fit_params(bbox, canvas: Canvas) -> tuple[float, float, float]:
    """Scale plus pixel offsets; y is flipped (SVG grows downward)."""
    s = fit_scale(bbox, canvas)
    cw, ch = canvas
    ox = (cw - s * (bbox[2] - bbox[0])) / 2.0 - s * bbox[0]
    oy = (ch - s * (bbox[3] - bbox[1])) / 2.0 + s * bbox[3]
    return s, ox, oy


def pool_to_pixels(doc: MapDocument, canvas: Canvas):
    """The vertex pool mapped into canvas pixel coordinates, y-down."""
    s, ox, oy = _fit_params(doc.bbox, canvas)
    pool = doc.vertex_pool
    out = pool.copy()
    out[:, 0] = ox + s * pool[:, 0]
    out[:, 1] = oy - s * pool[:, 1]
    return out


def rendered_region_area_px(doc: MapDocument, canvas: Canvas) -> float:
    """Total region area in square pixels when fitted to the canvas."""
    s = fit_scale(doc.bbox, canvas)
    return total_region_area(doc) * s * s


def _px(v: float) -> str:
    return f"{v:.2f}"


def _region_path(doc: MapDocument, px_pool, region) -> str:
    parts = []
    for poly in region.polygons:
        for ring in poly.rings():
            pts = " L ".join(f"{_px(px_pool[i, 0])},{_px(px_pool[i, 1])}" for i in ring)
            parts.append(f"M {pts} Z")
    return " ".join(parts)


def export_svg(
    doc: MapDocument,
    colors: ColorAssignment,
    legend: LegendSpec | None = None,
    missing: frozenset[str] | set[str] = frozenset(),
    canvas: Canvas = (640, 480),
    palette: Palette = DEFAULT_PALETTE,
) -> str:
    """Render the map as SVG, with the legend (when given) below the map.

    Regions are filled with their assigned colors; ids in `missing` get the
    reserved gray. The map is scaled to fit the canvas preserving aspect
    ratio.
    """
    cw, ch = canvas
    if cw <= 0 or ch <= 0:
        raise InputError("canvas must have positive size")
    px_pool = pool_to_pixels(doc, canvas)

    legend_strip = 0.0
    if legend is not None:
        legend_strip = legend.side_px + 24.0
    height = ch + legend_strip

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{cw}" height="{_px(height)}" '
        f'viewBox="0 0 {cw} {_px(height)}">',
    ]
    for region in doc.regions:
        fill = colors.fill_for(region.id, missing=region.id in missing, palette=palette)
        d = _region_path(doc, px_pool, region)
        lines.append(
            f'<path d="{d}" fill="{fill}" fill-rule="evenodd" stroke="#FFFFFF" '
            f'stroke-width="1" stroke-linejoin="round" data-id="{escape(region.id, _QUOTE)}"/>'
        )
    if legend is not None:
        side = legend.side_px
        lx, ly = 16.0, ch + 12.0
        lines.append(
            f'<rect x="{_px(lx)}" y="{_px(ly)}" width="{_px(side)}" height="{_px(side)}" '
            f'fill="{legend.color}"/>'
        )
        tx = lx + side + 10.0
        ty = ly + side / 2.0 + 5.0
        lines.append(
            f'<text x="{_px(tx)}" y="{_px(ty)}" fill="{legend.color}" '
            f'font-family="sans-serif" font-size="14">{escape(legend.label)}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _wrap_text(text: str, width: int = 56) -> list[str]:
    words = text.split()
    out: list[str] = []
    line = ""
    for word in words:
        if line and len(line) + 1 + len(word) > width:
            out.append(line)
            line = word
        else:
            line = f"{line} {word}".strip()
    if line:
        out.append(line)
    return out


def render_pie_svg(
    summary: AdditivitySummary,
    colors: ColorAssignment,
    palette: Palette = DEFAULT_PALETTE,
) -> str:
    """The interpretable-total gate as a picture: prompt text above a pie.

    Slices run clockwise from 12 o'clock in region order; regions with
    missing data are not part of the shares and do not appear.
    """
    width = 440
    r = 150.0
    cx = width / 2.0
    text_lines = _wrap_text(summary.confirmation_prompt)
    top = 24.0
    line_h = 20.0
    cy = top + line_h * len(text_lines) + 16.0 + r

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{_px(cy + r + 24.0)}" viewBox="0 0 {width} {_px(cy + r + 24.0)}">'
    ]
    for i, text in enumerate(text_lines):
        lines.append(
            f'<text x="{_px(cx)}" y="{_px(top + line_h * i)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{escape(text)}</text>'
        )

    def rim(fraction: float) -> tuple[float, float]:
        theta = 2.0 * math.pi * fraction  # from 12 o'clock, clockwise
        return cx + r * math.sin(theta), cy - r * math.cos(theta)

    shares = list(summary.slice_shares.items())
    cumulative = 0.0
    for rid, share in shares:
        if share <= 0:
            continue
        fill = colors.fill_for(rid, palette=palette)
        if share >= 1.0 - 1e-12:
            lines.append(
                f'<circle cx="{_px(cx)}" cy="{_px(cy)}" r="{_px(r)}" fill="{fill}"/>'
            )
            continue
        x0, y0 = rim(cumulative)
        cumulative += share
        x1, y1 = rim(cumulative)
        large = 1 if share > 0.5 else 0
        lines.append(
            f'<path d="M {_px(cx)},{_px(cy)} L {_px(x0)},{_px(y0)} '
            f'A {_px(r)},{_px(r)} 0 {large} 1 {_px(x1)},{_px(y1)} Z" fill="{fill}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_geojson(
    doc: MapDocument,
    datasets: Sequence[BoundDataset] = (),
    id_property: str = "id",
    name_property: str = "name",
    abbr_property: str = "abbr",
) -> str:
    """Write the document back to GeoJSON; inverse of parse_geojson.

    Re-parsing the output reproduces the vertex pool and ring indices
    exactly. Attached datasets land in feature properties under their names.
    """
    pool = doc.vertex_pool
    features = []
    for region in doc.regions:
        properties = {
            id_property: region.id,
            name_property: region.name,
            abbr_property: region.abbr,
        }
        for bound in datasets:
            properties[bound.name] = bound.entries.get(region.id)

        def ring_coords(ring):
            coords = [[float(pool[i, 0]), float(pool[i, 1])] for i in ring]
            coords.append(coords[0])  # GeoJSON rings are closed
            return coords

        polys = [
            [ring_coords(poly.outer)] + [ring_coords(h) for h in poly.holes]
            for poly in region.polygons
        ]
        if len(polys) == 1:
            geometry = {"type": "Polygon", "coordinates": polys[0]}
        else:
            geometry = {"type": "MultiPolygon", "coordinates": polys}
        features.append(
            {"type": "Feature", "properties": properties, "geometry": geometry}
        )
    return json.dumps({"type": "FeatureCollection", "features": features})


def build_viewer_bundle(
    conventional: MapDocument,
    cartograms: Mapping,  # dataset name -> MapDocument or CartogramResult
    datasets: Sequence[BoundDataset],
    colors: ColorAssignment,
    legends: Mapping[str, LegendSpec],
    canvas: Canvas = (640, 480),
    palette: Palette = DEFAULT_PALETTE,
) -> str:
    """Self-contained JSON for the interactive viewer.

    One pixel-space vertex pool per view ("conventional" plus one per
    dataset) over a single shared ring topology; colors, formatted values and
    legends are precomputed so the viewer does no geometry or formatting work
    beyond interpolation.
    """
    names = [b.name for b in datasets]
    if not names:
        raise InputError("bundle needs at least one dataset")
    if len(set(names)) != len(names):
        raise InputError("duplicate dataset names")
    if "conventional" in names:
        raise InputError('"conventional" is a reserved view name')
    if set(names) != set(cartograms):
        raise InputError("cartogram views do not match the dataset list")
    # accept either bare MapDocuments or solver results
    views = {
        name: getattr(cartograms[name], "cartogram", cartograms[name]) for name in names
    }
    for name in names:
        problems = _same_structure(conventional, views[name])
        if problems:
            raise InputError(
                f"cartogram {name!r} is not structurally identical to the "
                f"conventional map: {'; '.join(problems)}"
            )

    rings: list[list[int]] = []
    regions_meta = []
    for region in conventional.regions:
        ring_ids: list[int] = []
        hole_ids: list[int] = []
        for poly in region.polygons:
            ring_ids.append(len(rings))
            rings.append([int(i) for i in poly.outer])
            for hole in poly.holes:
                hole_ids.append(len(rings))
                rings.append([int(i) for i in hole])
        regions_meta.append(
            {
                "id": region.id,
                "name": region.name,
                "abbr": region.abbr,
                "colorIndex": colors.assignment[region.id],
                "ringIds": ring_ids,
                "holeIds": hole_ids,
            }
        )

    def px_pool(doc: MapDocument) -> list[list[float]]:
        arr = pool_to_pixels(doc, canvas)
        return [[float(x), float(y)] for x, y in arr]

    pools = {"conventional": px_pool(conventional)}
    for name in names:
        pools[name] = px_pool(views[name])

    dataset_blocks = []
    for bound in datasets:
        legend = legends[bound.name]
        summary = additivity_summary(bound)
        values = {rid: bound.entries[rid] for rid in conventional.region_ids}
        display = {
            rid: "no data" if v is None else format_value(v, bound.unit)
            for rid, v in values.items()
        }
        dataset_blocks.append(
            {
                "name": bound.name,
                "unit": bound.unit,
                "totalLabel": summary.formatted_total,
                "legend": {
                    "value": legend.value,
                    "sidePx": legend.side_px,
                    "label": legend.label,
                },
                "values": values,
                "display": display,
            }
        )

    bundle = {
        "version": 1,
        "canvas": {"width": canvas[0], "height": canvas[1]},
        "animationMs": ANIMATION_MS,
        "palette": {
            "base": list(palette.base),
            "highlight": list(palette.highlight),
            "missing": palette.missing,
            "legend": palette.legend,
        },
        "topology": {"rings": rings, "regions": regions_meta},
        "pools": pools,
        "datasets": dataset_blocks,
    }
    return json.dumps(bundle)
