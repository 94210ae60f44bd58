// Pure scene construction: per-region SVG path data and fills for one panel,
// plus legend and infotip content. The DOM layer only applies attributes, so
// the whole rendering contract is testable without a browser.

import { Pool, RegionMeta, ViewerBundle, datasetByName } from "./bundle.js";

export interface RegionShape {
  id: string;
  d: string;
  fill: string;
}

export interface PanelScene {
  shapes: RegionShape[];
}

export interface LegendScene {
  sidePx: number;
  label: string;
  color: string;
}

function ringPath(bundle: ViewerBundle, ringId: number, pool: Pool): string {
  const pts = bundle.topology.rings[ringId].map((i) => `${pool[i][0]},${pool[i][1]}`);
  return `M ${pts.join(" L ")} Z`;
}

export function regionPath(bundle: ViewerBundle, region: RegionMeta, pool: Pool): string {
  const parts = region.ringIds.map((rid) => ringPath(bundle, rid, pool));
  parts.push(...region.holeIds.map((rid) => ringPath(bundle, rid, pool)));
  return parts.join(" ");
}

/** Fill for one region given the active dataset and the hovered region.
 * Missing data wins over hover: the gray marker is a data statement, the
 * highlight only decoration. */
export function regionFill(
  bundle: ViewerBundle,
  region: RegionMeta,
  activeDataset: string,
  hoveredRegion: string | null,
): string {
  const dataset = datasetByName(bundle, activeDataset);
  const missing = dataset !== undefined && dataset.values[region.id] === null;
  if (missing) {
    return bundle.palette.missing;
  }
  if (region.id === hoveredRegion) {
    return bundle.palette.highlight[region.colorIndex];
  }
  return bundle.palette.base[region.colorIndex];
}

/** One panel: `pool` decides the geometry (conventional pool for the left
 * panel, possibly interpolated positions for the right), fills always follow
 * the active dataset so missing regions are gray on both maps. */
export function renderPanel(
  bundle: ViewerBundle,
  pool: Pool,
  activeDataset: string,
  hoveredRegion: string | null,
): PanelScene {
  return {
    shapes: bundle.topology.regions.map((region) => ({
      id: region.id,
      d: regionPath(bundle, region, pool),
      fill: regionFill(bundle, region, activeDataset, hoveredRegion),
    })),
  };
}

export function renderLegend(bundle: ViewerBundle, activeDataset: string): LegendScene | null {
  const dataset = datasetByName(bundle, activeDataset);
  if (!dataset) {
    return null;
  }
  return {
    sidePx: dataset.legend.sidePx,
    label: dataset.legend.label,
    color: bundle.palette.legend,
  };
}

/** Infotip content: region name plus every dataset's display string, as in
 * the side-by-side population + GDP popup. */
export function infotipLines(bundle: ViewerBundle, regionId: string): string[] {
  const region = bundle.topology.regions.find((r) => r.id === regionId);
  if (!region) {
    return [];
  }
  return [
    region.name,
    ...bundle.datasets.map((ds) => `${ds.name}: ${ds.display[regionId]}`),
  ];
}
