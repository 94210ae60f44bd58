import json
import math
import re

import jsonschema
import numpy as np
import pytest

import fixture_maps as fm

from cartogrammer import (
    Dataset,
    InputError,
    additivity_summary,
    assign_colors,
    bind,
    build_adjacency,
    build_viewer_bundle,
    compute_legend,
    compute_target_areas,
    export_geojson,
    export_svg,
    parse_csv,
    parse_geojson,
    render_pie_svg,
    rendered_region_area_px,
    run_dcn,
)


@pytest.fixture(scope="module")
def austria_colors(austria):
    return assign_colors(build_adjacency(austria))


class TestExportSvg:
    def test_single_region_first_palette_color(self, unit_square):
        colors = assign_colors(build_adjacency(unit_square))
        svg = export_svg(unit_square, colors)
        paths = [l for l in svg.splitlines() if l.startswith("<path")]
        assert len(paths) == 1
        assert 'fill="#1B9E77"' in paths[0]

    def test_missing_region_filled_gray(self, austria, austria_colors):
        svg = export_svg(austria, austria_colors, missing={"WI"})
        wi_path = next(l for l in svg.splitlines() if 'data-id="WI"' in l)
        assert 'fill="#CCCCCC"' in wi_path

    def test_deterministic_bytes(self, austria, austria_colors):
        a = export_svg(austria, austria_colors)
        b = export_svg(austria, austria_colors)
        assert a == b

    def test_legend_rendered_below_map(self, austria, austria_colors):
        legend = compute_legend(1000.0, "u", rendered_region_area_px(austria, (640, 480)))
        svg = export_svg(austria, austria_colors, legend=legend, canvas=(640, 480))
        rect = next(l for l in svg.splitlines() if l.startswith("<rect"))
        y = float(re.search(r'y="([\d.]+)"', rect).group(1))
        assert y >= 480  # strictly below the map canvas
        assert 'fill="#707070"' in rect
        assert "represents" in svg

    def test_zero_canvas_rejected(self, unit_square):
        colors = assign_colors(build_adjacency(unit_square))
        with pytest.raises(InputError):
            export_svg(unit_square, colors, canvas=(0, 100))

    def test_aspect_ratio_preserved(self, austria, austria_colors):
        # map is wider than tall: fitted width fills the canvas
        svg = export_svg(austria, austria_colors, canvas=(800, 600))
        xs = [float(m) for m in re.findall(r"M ([\d.]+),", svg)]
        assert min(xs) == pytest.approx(0.0, abs=1.0)


def slice_angles_from_pie(svg: str):
    """Recover each slice's central angle (degrees) from the arc endpoints."""
    angles = []
    for m in re.finditer(
        r'M ([\d.]+),([\d.]+) L ([\d.-]+),([\d.-]+) A [\d.,]+ 0 (\d) 1 ([\d.-]+),([\d.-]+)',
        svg,
    ):
        cx, cy, x0, y0, large, x1, y1 = (float(g) for g in m.groups())

        def theta(x, y):
            return math.atan2(x - cx, cy - y) % (2 * math.pi)

        sweep = (theta(x1, y1) - theta(x0, y0)) % (2 * math.pi)
        angles.append(math.degrees(sweep))
    return angles


class TestRenderPieSvg:
    def test_single_region_full_circle(self, unit_square):
        colors = assign_colors(build_adjacency(unit_square))
        bound = bind(unit_square, Dataset("X", "", {"A": 5.0}))
        svg = render_pie_svg(additivity_summary(bound), colors)
        assert "<circle" in svg
        assert 'fill="#1B9E77"' in svg

    def test_two_slices_proportional_angles(self, two_squares):
        colors = assign_colors(build_adjacency(two_squares))
        bound = bind(two_squares, Dataset("X", "", {"A": 3.0, "B": 1.0}))
        svg = render_pie_svg(additivity_summary(bound), colors)
        angles = slice_angles_from_pie(svg)
        assert angles == pytest.approx([270.0, 90.0], abs=0.1)

    def test_austria_gdp_vienna_slice(self, austria, austria_colors, austria_gdp):
        svg = render_pie_svg(additivity_summary(austria_gdp), colors=austria_colors)
        angles = slice_angles_from_pie(svg)
        assert sum(angles) == pytest.approx(360.0, abs=1e-6)
        share = fm.AUSTRIA_GDP_EUR["WI"] / sum(fm.AUSTRIA_GDP_EUR.values())
        assert share == pytest.approx(0.256, abs=5e-4)
        # slices follow region order VO..WI, so Vienna's is the last one
        assert angles[-1] == pytest.approx(360.0 * share, abs=0.1)

    def test_prompt_text_present(self, austria, austria_colors, austria_gdp):
        svg = render_pie_svg(additivity_summary(austria_gdp), colors=austria_colors)
        text = " ".join(re.findall(r">([^<]+)</text>", svg))
        assert "375.4 billion" in text
        assert "Is this a meaningful quantity?" in text


class TestExportGeojson:
    def test_round_trip_identical_pool(self, austria):
        text = export_geojson(austria)
        again = parse_geojson(text)
        assert np.array_equal(again.vertex_pool, austria.vertex_pool)
        assert again.regions == austria.regions

    def test_round_trip_with_holes(self):
        doc = parse_geojson(fm.square_with_hole_text())
        again = parse_geojson(export_geojson(doc))
        assert np.array_equal(again.vertex_pool, doc.vertex_pool)
        assert again.regions == doc.regions

    def test_feature_count_preserved_through_solver(self, two_squares):
        bound = bind(two_squares, Dataset("X", "", {"A": 3.0, "B": 1.0}))
        result = run_dcn(two_squares, compute_target_areas(two_squares, bound))
        out = json.loads(export_geojson(result.cartogram))
        assert len(out["features"]) == 2

    def test_dataset_values_in_properties(self, austria, austria_gdp):
        out = json.loads(export_geojson(austria, datasets=[austria_gdp]))
        by_id = {f["properties"]["id"]: f["properties"] for f in out["features"]}
        assert by_id["WI"]["GDP"] == 96.1e9
        assert by_id["WI"]["name"] == "Vienna"

    def test_missing_value_is_null(self, austria, austria_nursery):
        out = json.loads(export_geojson(austria, datasets=[austria_nursery]))
        by_id = {f["properties"]["id"]: f["properties"] for f in out["features"]}
        assert by_id["WI"]["Day Nursery Workers"] is None


BUNDLE_SCHEMA = {
    "type": "object",
    "required": [
        "version", "canvas", "animationMs", "palette", "topology", "pools", "datasets",
    ],
    "properties": {
        "version": {"const": 1},
        "canvas": {
            "type": "object",
            "required": ["width", "height"],
            "properties": {"width": {"type": "number"}, "height": {"type": "number"}},
        },
        "animationMs": {"const": 1000},
        "palette": {
            "type": "object",
            "required": ["base", "highlight", "missing", "legend"],
            "properties": {
                "base": {"type": "array", "minItems": 6, "maxItems": 6},
                "highlight": {"type": "array", "minItems": 6, "maxItems": 6},
                "missing": {"type": "string"},
                "legend": {"type": "string"},
            },
        },
        "topology": {
            "type": "object",
            "required": ["rings", "regions"],
            "properties": {
                "rings": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer"}},
                },
                "regions": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["id", "name", "abbr", "colorIndex", "ringIds", "holeIds"],
                    },
                },
            },
        },
        "pools": {
            "type": "object",
            "required": ["conventional"],
            "additionalProperties": {
                "type": "array",
                "items": {"type": "array", "minItems": 2, "maxItems": 2},
            },
        },
        "datasets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "unit", "totalLabel", "legend", "values", "display"],
                "properties": {
                    "legend": {
                        "type": "object",
                        "required": ["value", "sidePx", "label"],
                    }
                },
            },
        },
    },
}


def build_austria_bundle(austria, colors, bounds, canvas=(640, 480)):
    cartograms = {}
    legends = {}
    for bound in bounds:
        result = run_dcn(austria, compute_target_areas(austria, bound))
        assert result.converged
        cartograms[bound.name] = result
        total = sum(v for v in bound.entries.values() if v is not None)
        legends[bound.name] = compute_legend(
            total, bound.unit, rendered_region_area_px(result.cartogram, canvas)
        )
    return build_viewer_bundle(austria, cartograms, bounds, colors, legends, canvas)


class TestViewerBundle:
    def test_schema_and_pools(self, austria, austria_colors, austria_population):
        text = build_austria_bundle(austria, austria_colors, [austria_population])
        bundle = json.loads(text)
        jsonschema.validate(bundle, BUNDLE_SCHEMA)
        assert set(bundle["pools"]) == {"conventional", "Population"}
        lengths = {len(p) for p in bundle["pools"].values()}
        assert lengths == {len(austria.vertex_pool)}

    def test_two_datasets_three_pools(self, austria, austria_colors):
        bounds = [bind(austria, ds) for ds in parse_csv(fm.austria_two_dataset_csv())]
        bundle = json.loads(build_austria_bundle(austria, austria_colors, bounds))
        assert set(bundle["pools"]) == {"conventional", "Population", "GDP"}
        assert [d["name"] for d in bundle["datasets"]] == ["Population", "GDP"]
        assert bundle["datasets"][1]["totalLabel"] == "375.4 billion €"

    def test_missing_value_display(self, austria, austria_colors, austria_nursery):
        bundle = json.loads(build_austria_bundle(austria, austria_colors, [austria_nursery]))
        block = bundle["datasets"][0]
        assert block["values"]["WI"] is None
        assert block["display"]["WI"] == "no data"
        assert block["display"]["KA"] == "1,100 persons"

    def test_structural_mismatch_rejected(self, austria, austria_colors, austria_population, two_squares):
        legend = compute_legend(1.0, "", 1.0)
        with pytest.raises(InputError, match="structurally identical"):
            build_viewer_bundle(
                austria,
                {"Population": two_squares},
                [austria_population],
                austria_colors,
                {"Population": legend},
            )

    def test_empty_dataset_list_rejected(self, austria, austria_colors):
        with pytest.raises(InputError, match="at least one dataset"):
            build_viewer_bundle(austria, {}, [], austria_colors, {})

    def test_color_indices_valid_and_animation_fixed(self, austria, austria_colors, austria_population):
        bundle = json.loads(build_austria_bundle(austria, austria_colors, [austria_population]))
        assert bundle["animationMs"] == 1000
        for region in bundle["topology"]["regions"]:
            assert 0 <= region["colorIndex"] <= 5
