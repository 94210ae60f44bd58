// Bundle schema produced by the generator; the viewer trusts these fields and
// computes nothing but interpolation and panel layout from them.

export type Vec2 = [number, number];
export type Pool = Vec2[];

export interface RegionMeta {
  id: string;
  name: string;
  abbr: string;
  colorIndex: number;
  ringIds: number[];
  holeIds: number[];
}

export interface LegendBlock {
  value: number;
  sidePx: number;
  label: string;
}

export interface DatasetBlock {
  name: string;
  unit: string;
  totalLabel: string;
  legend: LegendBlock;
  values: Record<string, number | null>;
  display: Record<string, string>;
}

export interface ViewerBundle {
  version: number;
  canvas: { width: number; height: number };
  animationMs: number;
  palette: { base: string[]; highlight: string[]; missing: string; legend: string };
  topology: { rings: number[][]; regions: RegionMeta[] };
  pools: Record<string, Pool>;
  datasets: DatasetBlock[];
}

export class BundleError extends Error {}

function fail(message: string): never {
  throw new BundleError(`bad bundle: ${message}`);
}

/** Validate the parsed JSON; throws BundleError so the app can show an error
 * screen instead of a partial render. */
export function validateBundle(raw: unknown): ViewerBundle {
  const b = raw as ViewerBundle;
  if (typeof b !== "object" || b === null) fail("not an object");
  if (b.version !== 1) fail(`unsupported version ${b.version}`);
  if (!b.canvas || !(b.canvas.width > 0) || !(b.canvas.height > 0)) fail("canvas");
  if (!(b.animationMs > 0)) fail("animationMs");
  const palette = b.palette;
  if (
    !palette ||
    !Array.isArray(palette.base) ||
    palette.base.length !== 6 ||
    !Array.isArray(palette.highlight) ||
    palette.highlight.length !== 6 ||
    typeof palette.missing !== "string" ||
    typeof palette.legend !== "string"
  ) {
    fail("palette");
  }
  if (!b.topology || !Array.isArray(b.topology.rings) || !Array.isArray(b.topology.regions)) {
    fail("topology");
  }
  if (typeof b.pools !== "object" || b.pools === null || !b.pools.conventional) {
    fail("pools must include \"conventional\"");
  }
  const poolSize = b.pools.conventional.length;
  for (const [name, pool] of Object.entries(b.pools)) {
    if (!Array.isArray(pool) || pool.length !== poolSize) {
      fail(`pool ${name} length ${pool?.length} != ${poolSize}`);
    }
  }
  for (const ring of b.topology.rings) {
    for (const i of ring) {
      if (!Number.isInteger(i) || i < 0 || i >= poolSize) fail(`ring index ${i} out of range`);
    }
  }
  if (!Array.isArray(b.datasets) || b.datasets.length === 0) fail("no datasets");
  for (const ds of b.datasets) {
    if (!(ds.name in b.pools)) fail(`dataset ${ds.name} has no pool`);
    if (!ds.legend || typeof ds.legend.label !== "string") fail(`dataset ${ds.name} legend`);
    if (typeof ds.values !== "object" || typeof ds.display !== "object") {
      fail(`dataset ${ds.name} values/display`);
    }
  }
  for (const region of b.topology.regions) {
    if (region.colorIndex < 0 || region.colorIndex >= 6) {
      fail(`region ${region.id} colorIndex ${region.colorIndex}`);
    }
    for (const rid of [...region.ringIds, ...region.holeIds]) {
      if (!Number.isInteger(rid) || rid < 0 || rid >= b.topology.rings.length) {
        fail(`region ${region.id} ring reference ${rid}`);
      }
    }
  }
  return b;
}

export function datasetByName(bundle: ViewerBundle, name: string): DatasetBlock | undefined {
  return bundle.datasets.find((d) => d.name === name);
}
