"""Contiguous cartograms from boundary files and per-region numeric data.

The pipeline: parse a GeoJSON boundary file into a shared-vertex map, bind a
CSV of per-region values, confirm the total is a meaningful quantity, compute
target areas (missing regions keep their size), deform the map by iterative
force relaxation until areas are proportional to the values, and export SVG,
GeoJSON or an interactive viewer bundle with matched colors and a
value-to-area legend.
"""

from .colors import (
    DARK2,
    DEFAULT_PALETTE,
    MISSING_GRAY,
    ColorAssignment,
    Palette,
    assign_colors,
    nearest_palette_index,
)
from .datasets import (
    MISSING,
    AdditivitySummary,
    BoundDataset,
    Dataset,
    TargetAreas,
    additivity_summary,
    bind,
    compute_target_areas,
    parse_csv,
)
from .errors import (
    CartogrammerError,
    DataError,
    InputError,
    TopologyFailureError,
    UnknownRegionError,
)
from .geometry import (
    AdjacencyGraph,
    MapDocument,
    Polygon,
    Region,
    TopologyReport,
    build_adjacency,
    parse_geojson,
    region_area,
    region_areas,
    region_centroid,
    total_region_area,
    verify_topology,
)
from .legend import LEGEND_GRAY, LegendSpec, compute_legend, format_value, nice_number
from .projection import project_cea
from .render import (
    build_viewer_bundle,
    export_geojson,
    export_svg,
    pool_to_pixels,
    render_pie_svg,
    rendered_region_area_px,
)
from .solver import (
    CartogramResult,
    DcnCartogram,
    IterationRecord,
    SolverParams,
    dcn_iterate,
    run_dcn,
    size_error,
)
from .validation import check_map_document

__version__ = "0.1.0"

__all__ = [
    "AdditivitySummary",
    "AdjacencyGraph",
    "BoundDataset",
    "CartogramResult",
    "CartogrammerError",
    "ColorAssignment",
    "DARK2",
    "DEFAULT_PALETTE",
    "DataError",
    "Dataset",
    "DcnCartogram",
    "InputError",
    "IterationRecord",
    "LEGEND_GRAY",
    "LegendSpec",
    "MISSING",
    "MISSING_GRAY",
    "MapDocument",
    "Palette",
    "Polygon",
    "Region",
    "SolverParams",
    "TargetAreas",
    "TopologyFailureError",
    "TopologyReport",
    "UnknownRegionError",
    "additivity_summary",
    "assign_colors",
    "bind",
    "build_adjacency",
    "build_viewer_bundle",
    "check_map_document",
    "compute_legend",
    "compute_target_areas",
    "dcn_iterate",
    "export_geojson",
    "export_svg",
    "format_value",
    "nearest_palette_index",
    "nice_number",
    "parse_csv",
    "parse_geojson",
    "pool_to_pixels",
    "project_cea",
    "region_area",
    "region_areas",
    "region_centroid",
    "render_pie_svg",
    "rendered_region_area_px",
    "run_dcn",
    "size_error",
    "total_region_area",
    "verify_topology",
]
