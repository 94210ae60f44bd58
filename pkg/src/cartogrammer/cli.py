"""Command-line workflow: validate data, generate cartograms, build bundles.

The interpretable-total gate is enforced here: no cartogram artifact is
written for a dataset whose total was not confirmed on a terminal or waved
through with --assume-additive.

Exit codes: 0 success, 1 input/parse/bind errors, 2 non-convergence,
3 topology failure, 4 unconfirmed total / user abort.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .colors import assign_colors
from .datasets import BoundDataset, additivity_summary, bind, compute_target_areas, parse_csv
from .errors import CartogrammerError
from .geometry import MapDocument, build_adjacency, parse_geojson
from .legend import compute_legend
from .projection import project_cea
from .render import (
    build_viewer_bundle,
    export_geojson,
    export_svg,
    render_pie_svg,
    rendered_region_area_px,
)
from .solver import (
    STATUS_CONVERGED,
    STATUS_NOT_CONVERGED,
    STATUS_TOPOLOGY_FAILURE,
    SolverParams,
    run_dcn,
)
from .validation import check_map_document

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_TOPOLOGY = 3
EXIT_UNCONFIRMED = 4


@dataclass(frozen=True)
class RunConfig:
    map_path: Path
    csv_path: Path
    out_dir: Path
    id_property: str
    canvas: tuple[int, int]
    solver: SolverParams
    assume_additive: bool
    project: str  # "none" | "cea"

    def __post_init__(self):
        if self.canvas[0] <= 0 or self.canvas[1] <= 0:
            raise click.ClickException("canvas must be positive, e.g. 640x480")


def _color_flag():
    # None lets click auto-detect a TTY; the env var forces plain output
    return False if os.environ.get("CARTOGRAMMER_NO_COLOR") else None


def _say(message: str, fg: str | None = None):
    click.secho(message, fg=fg, color=_color_flag())


def _parse_canvas(value: str) -> tuple[int, int]:
    try:
        w, h = value.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise click.ClickException(f"bad canvas {value!r}, expected WxH like 640x480")


def _common_options(fn):
    options = [
        click.option("--map", "map_path", required=True, type=click.Path(path_type=Path)),
        click.option("--csv", "csv_path", required=True, type=click.Path(path_type=Path)),
        click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path)),
        click.option("--id-property", default="id", show_default=True),
        click.option("--canvas", default="640x480", show_default=True, help="canvas WxH in px"),
        click.option(
            "--assume-additive",
            is_flag=True,
            help="skip the interpretable-total confirmation prompt",
        ),
        click.option(
            "--project",
            type=click.Choice(["none", "cea"]),
            default="none",
            show_default=True,
            help="project lon/lat input with a cylindrical equal-area projection",
        ),
        click.option("--max-iter", default=512, show_default=True),
        click.option("--tolerance", default=0.01, show_default=True),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _config(map_path, csv_path, out_dir, id_property, canvas, assume_additive, project,
            max_iter, tolerance) -> RunConfig:
    try:
        solver = SolverParams(max_iterations=max_iter, area_tolerance=tolerance)
    except CartogrammerError as exc:
        raise click.ClickException(str(exc))
    return RunConfig(
        map_path=map_path,
        csv_path=csv_path,
        out_dir=out_dir,
        id_property=id_property,
        canvas=_parse_canvas(canvas),
        solver=solver,
        assume_additive=assume_additive,
        project=project,
    )


def _load(config: RunConfig) -> tuple[MapDocument, list[BoundDataset]]:
    try:
        map_text = config.map_path.read_text(encoding="utf-8")
        csv_text = config.csv_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise click.ClickException(str(exc))
    try:
        if config.project == "cea":
            map_text = project_cea(map_text)
        doc = check_map_document(parse_geojson(map_text, id_property=config.id_property))
        bound = [bind(doc, ds) for ds in parse_csv(csv_text)]
    except CartogrammerError as exc:
        raise click.ClickException(str(exc))
    for b in bound:
        for warning in b.warnings:
            _say(f"warning [{b.name}]: {warning}", fg="yellow")
    return doc, bound


def _stdin_is_tty() -> bool:
    return sys.stdin.isatty()


def _confirm_total(bound: BoundDataset, assume: bool, ctx: click.Context) -> bool:
    """The interpretable-total gate. Returns True when the dataset may proceed."""
    summary = additivity_summary(bound)
    if assume:
        return True
    if not _stdin_is_tty():
        _say(
            f"{bound.name}: cannot confirm the total ({summary.formatted_total}) on a "
            "non-interactive run; re-run with --assume-additive if the values sum to a "
            "meaningful quantity",
            fg="red",
        )
        ctx.exit(EXIT_UNCONFIRMED)
    _say(summary.confirmation_prompt)
    answer = click.prompt("Proceed? [y/N]", default="", show_default=False)
    return answer.strip().lower() in ("y", "yes")


@click.group()
def main():
    """Contiguous cartograms with matched colors, legends and viewer bundles."""


@main.command()
@_common_options
def validate(**kwargs):
    """Parse the map and CSV, print each dataset's total, write pie charts."""
    config = _config(**kwargs)
    doc, bound = _load(config)
    colors = assign_colors(build_adjacency(doc))
    config.out_dir.mkdir(parents=True, exist_ok=True)
    for b in bound:
        summary = additivity_summary(b)
        _say(f"dataset {b.name!r}: {len(b.missing_ids())} region(s) missing")
        _say(summary.confirmation_prompt, fg="cyan")
        pie = render_pie_svg(summary, colors)
        path = config.out_dir / f"{b.name}.pie.svg"
        path.write_text(pie, encoding="utf-8")
        _say(f"wrote {path}")


def _solve_one(doc, b, config):
    targets = compute_target_areas(doc, b)
    return run_dcn(doc, targets, config.solver)


_FAILURE_EXIT = {
    STATUS_NOT_CONVERGED: EXIT_NO_CONVERGENCE,
    STATUS_TOPOLOGY_FAILURE: EXIT_TOPOLOGY,
}


def _diagnostics_json(result) -> str:
    return json.dumps(
        {
            "status": result.status,
            "iterations": result.iterations,
            "finalMaxRelError": result.final_max_rel_error,
            "finalSizeError": result.final_size_error,
            "achievedAreas": dict(result.achieved_areas),
            "failureDetail": result.failure_detail,
            "perIterationErrors": [
                {
                    "iteration": rec.iteration,
                    "maxRelError": rec.max_rel_error,
                    "sizeError": rec.size_error,
                }
                for rec in result.per_iteration_errors
            ],
        }
    )


@main.command()
@click.pass_context
@_common_options
def generate(ctx, **kwargs):
    """Compute cartograms and write GeoJSON + SVG artifacts per dataset."""
    config = _config(**kwargs)
    doc, bound = _load(config)
    colors = assign_colors(build_adjacency(doc))
    config.out_dir.mkdir(parents=True, exist_ok=True)

    exit_code = EXIT_OK
    wrote_conventional = False
    for b in bound:
        if not _confirm_total(b, config.assume_additive, ctx):
            _say(f"{b.name}: total not confirmed; skipping", fg="yellow")
            if exit_code == EXIT_OK:
                exit_code = EXIT_UNCONFIRMED
            continue
        result = _solve_one(doc, b, config)
        (config.out_dir / f"{b.name}.diagnostics.json").write_text(
            _diagnostics_json(result), encoding="utf-8"
        )
        if not result.converged:
            _say(f"{b.name}: {result.status}: {result.failure_detail}", fg="red")
            if exit_code == EXIT_OK:
                exit_code = _FAILURE_EXIT[result.status]
            continue
        if not wrote_conventional:
            svg = export_svg(doc, colors, legend=None, canvas=config.canvas)
            (config.out_dir / "conventional.svg").write_text(svg, encoding="utf-8")
            wrote_conventional = True
        cartogram = result.cartogram
        geojson = export_geojson(cartogram, datasets=[b], id_property=config.id_property)
        (config.out_dir / f"{b.name}.cartogram.geojson").write_text(
            geojson, encoding="utf-8"
        )
        legend = compute_legend(
            sum(v for v in b.entries.values() if v is not None),
            b.unit,
            rendered_region_area_px(cartogram, config.canvas),
        )
        svg = export_svg(
            cartogram,
            colors,
            legend=legend,
            missing=b.missing_ids(),
            canvas=config.canvas,
        )
        (config.out_dir / f"{b.name}.cartogram.svg").write_text(svg, encoding="utf-8")
        _say(
            f"{b.name}: converged in {result.iterations} iterations "
            f"(max relative error {result.final_max_rel_error:.4f})",
            fg="green",
        )
    ctx.exit(exit_code)


@main.command()
@click.pass_context
@_common_options
def bundle(ctx, **kwargs):
    """Solve every dataset and write a single viewer bundle (bundle.json)."""
    config = _config(**kwargs)
    doc, bound = _load(config)
    colors = assign_colors(build_adjacency(doc))

    for b in bound:  # all totals must be confirmed before any solving
        if not _confirm_total(b, config.assume_additive, ctx):
            _say(f"{b.name}: total not confirmed; no bundle written", fg="red")
            ctx.exit(EXIT_UNCONFIRMED)

    cartograms = {}
    legends = {}
    for b in bound:
        result = _solve_one(doc, b, config)
        if not result.converged:
            _say(f"{b.name}: {result.status}: {result.failure_detail}", fg="red")
            ctx.exit(_FAILURE_EXIT[result.status])
        cartograms[b.name] = result
        legends[b.name] = compute_legend(
            sum(v for v in b.entries.values() if v is not None),
            b.unit,
            rendered_region_area_px(result.cartogram, config.canvas),
        )

    text = build_viewer_bundle(doc, cartograms, bound, colors, legends, config.canvas)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    path = config.out_dir / "bundle.json"
    path.write_text(text, encoding="utf-8")
    _say(f"wrote {path}")


if __name__ == "__main__":
    main()
