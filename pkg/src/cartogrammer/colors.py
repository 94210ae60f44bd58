"""Color scheme shared by the conventional map and every cartogram of it.

Six-class Dark2 palette; adjacent regions never share a palette index, the
same assignment is reused across all views of a map, and light gray is
reserved for regions with missing data.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError
from .geometry import AdjacencyGraph
from .legend import LEGEND_GRAY

DARK2 = ("#1B9E77", "#D95F02", "#7570B3", "#E7298A", "#66A61E", "#E6AB02")
MISSING_GRAY = "#CCCCCC"

# #FF5CBD is the canonical hover partner of Dark2's pink; the other highlight
# shades are derived by lightening.
_FIXED_HIGHLIGHT = {"#E7298A": "#FF5CBD"}


def _rgb(hex_color: str) -> tuple[float, float, float]:
    h = hex_color.lstrip("#")
    if len(h) != 6:
        raise InputError(f"bad hex color {hex_color!r}")
    try:
        return tuple(int(h[i : i + 2], 16) / 255.0 for i in (0, 2, 4))
    except ValueError:
        raise InputError(f"bad hex color {hex_color!r}") from None


def _hex(r: float, g: float, b: float) -> str:
    return "#%02X%02X%02X" % tuple(round(c * 255) for c in (r, g, b))


def lighten(hex_color: str, amount: float = 0.15, max_lightness: float = 0.95) -> str:
    """Raise HSL lightness by `amount`, clamped."""
    h, l, s = colorsys.rgb_to_hls(*_rgb(hex_color))
    return _hex(*colorsys.hls_to_rgb(h, min(l + amount, max_lightness), s))


def _default_highlights(base: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(_FIXED_HIGHLIGHT.get(c, lighten(c)) for c in base)


@dataclass(frozen=True)
class Palette:
    base: tuple[str, ...] = DARK2
    highlight: tuple[str, ...] = field(default=None)  # derived when omitted
    missing: str = MISSING_GRAY
    legend: str = LEGEND_GRAY

    def __post_init__(self):
        if self.highlight is None:
            object.__setattr__(self, "highlight", _default_highlights(self.base))
        if len(self.base) != 6 or len(set(self.base)) != 6:
            raise InputError("palette needs exactly 6 distinct base colors")
        if len(self.highlight) != len(self.base):
            raise InputError("palette highlight list must match base length")
        reserved = {self.missing.upper(), self.legend.upper()}
        if any(c.upper() in reserved for c in self.base):
            raise InputError("base colors collide with the reserved grays")


DEFAULT_PALETTE = Palette()


@dataclass(frozen=True)
class ColorAssignment:
    """Region id -> palette index, plus user override colors.

    The same assignment is used for the conventional map and every cartogram
    of the same document. A region that is missing in one dataset renders
    gray there but keeps its index for datasets where it has data.
    """

    assignment: Mapping[str, int]
    overrides: Mapping[str, str] = field(default_factory=dict)

    def fill_for(
        self, region_id: str, *, missing: bool = False, palette: Palette = DEFAULT_PALETTE
    ) -> str:
        if missing:
            return palette.missing
        if region_id in self.overrides:
            return self.overrides[region_id]
        return palette.base[self.assignment[region_id]]

    def conflicts(self, adjacency: AdjacencyGraph) -> list[tuple[str, str]]:
        return [
            (a, b)
            for a, b in sorted(adjacency.edges)
            if self.assignment[a] == self.assignment[b]
        ]


def nearest_palette_index(hex_color: str, base: tuple[str, ...] = DARK2) -> int:
    """Index of the palette color closest in RGB; ties take the lower index."""
    r, g, b = _rgb(hex_color)

    def dist(i: int) -> float:
        br, bg, bb = _rgb(base[i])
        return (r - br) ** 2 + (g - bg) ** 2 + (b - bb) ** 2

    return min(range(len(base)), key=lambda i: (dist(i), i))


def _smallest_last_order(adjacency: AdjacencyGraph) -> list[str]:
    """Degeneracy ordering: repeatedly remove the min-degree vertex (ties by
    id ascending); color in reverse removal order. Planar subdivisions are
    5-degenerate, so greedy coloring in this order never needs a 7th color.
    """
    neighbors: dict[str, set[str]] = {rid: set() for rid in adjacency.nodes}
    for a, b in adjacency.edges:
        neighbors[a].add(b)
        neighbors[b].add(a)
    degree = {rid: len(ns) for rid, ns in neighbors.items()}
    removed: list[str] = []
    remaining = set(adjacency.nodes)
    while remaining:
        v = min(remaining, key=lambda rid: (degree[rid], rid))
        removed.append(v)
        remaining.remove(v)
        for nbr in neighbors[v]:
            if nbr in remaining:
                degree[nbr] -= 1
    return removed[::-1]


def assign_colors(
    adjacency: AdjacencyGraph,
    overrides: Mapping[str, str] | None = None,
    palette: Palette = DEFAULT_PALETTE,
) -> ColorAssignment:
    """Greedy smallest-last coloring; deterministic for a given graph.

    Overridden regions render with their override color but are pinned to
    the nearest palette index for conflict checking, so their neighbors
    still avoid it.
    """
    overrides = dict(overrides or {})
    node_set = set(adjacency.nodes)
    for rid, hex_color in overrides.items():
        if rid not in node_set:
            raise InputError(f"override for unknown region {rid!r}")
        if hex_color.upper() == palette.missing.upper():
            raise InputError(
                f"override {hex_color!r} equals the gray reserved for missing data"
            )

    neighbors: dict[str, set[str]] = {rid: set() for rid in adjacency.nodes}
    for a, b in adjacency.edges:
        neighbors[a].add(b)
        neighbors[b].add(a)

    assignment: dict[str, int] = {
        rid: nearest_palette_index(hex_color, palette.base)
        for rid, hex_color in overrides.items()
    }
    for rid in _smallest_last_order(adjacency):
        if rid in assignment:
            continue
        used = {assignment[nbr] for nbr in neighbors[rid] if nbr in assignment}
        for index in range(len(palette.base)):
            if index not in used:
                assignment[rid] = index
                break
        else:
            raise InputError(
                f"region {rid!r} needs a 7th color; the adjacency graph is not planar"
            )
    return ColorAssignment(
        assignment={rid: assignment[rid] for rid in adjacency.nodes},
        overrides=overrides,
    )
