// Thin DOM layer: builds the two SVG panels once and applies scene output.

import { ViewerBundle } from "./bundle.js";
import { LegendScene, PanelScene } from "./scene.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface Panel {
  svg: SVGSVGElement;
  paths: Map<string, SVGPathElement>;
  legendRect: SVGRectElement | null;
  legendText: SVGTextElement | null;
}

export function buildPanel(
  container: HTMLElement,
  bundle: ViewerBundle,
  withLegend: boolean,
  onHover: (regionId: string | null) => void,
): Panel {
  const { width, height } = bundle.canvas;
  const legendStrip = withLegend ? 56 : 0;
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height + legendStrip}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height + legendStrip));

  const paths = new Map<string, SVGPathElement>();
  for (const region of bundle.topology.regions) {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute("data-id", region.id);
    path.setAttribute("fill-rule", "evenodd");
    path.setAttribute("stroke", "#FFFFFF");
    path.setAttribute("stroke-width", "1");
    path.setAttribute("stroke-linejoin", "round");
    path.addEventListener("mouseenter", () => onHover(region.id));
    path.addEventListener("mouseleave", () => onHover(null));
    svg.appendChild(path);
    paths.set(region.id, path);
  }

  let legendRect: SVGRectElement | null = null;
  let legendText: SVGTextElement | null = null;
  if (withLegend) {
    legendRect = document.createElementNS(SVG_NS, "rect");
    legendText = document.createElementNS(SVG_NS, "text");
    legendText.setAttribute("font-family", "sans-serif");
    legendText.setAttribute("font-size", "14");
    svg.appendChild(legendRect);
    svg.appendChild(legendText);
  }

  container.appendChild(svg);
  return { svg, paths, legendRect, legendText };
}

export function applyScene(panel: Panel, scene: PanelScene): void {
  for (const shape of scene.shapes) {
    const path = panel.paths.get(shape.id);
    if (path) {
      path.setAttribute("d", shape.d);
      path.setAttribute("fill", shape.fill);
    }
  }
}

export function applyLegend(panel: Panel, bundle: ViewerBundle, legend: LegendScene | null): void {
  if (!panel.legendRect || !panel.legendText || !legend) {
    return;
  }
  const y = bundle.canvas.height + 8;
  panel.legendRect.setAttribute("x", "16");
  panel.legendRect.setAttribute("y", String(y));
  panel.legendRect.setAttribute("width", String(legend.sidePx));
  panel.legendRect.setAttribute("height", String(legend.sidePx));
  panel.legendRect.setAttribute("fill", legend.color);
  panel.legendText.setAttribute("x", String(16 + legend.sidePx + 10));
  panel.legendText.setAttribute("y", String(y + legend.sidePx / 2 + 5));
  panel.legendText.setAttribute("fill", legend.color);
  panel.legendText.textContent = legend.label;
}

export function showInfotip(
  tip: HTMLElement,
  lines: string[],
  clientX: number,
  clientY: number,
): void {
  tip.replaceChildren(
    ...lines.map((line, i) => {
      const div = document.createElement("div");
      div.textContent = line;
      if (i === 0) {
        div.style.fontWeight = "bold";
      }
      return div;
    }),
  );
  tip.style.display = "block";
  tip.style.left = `${clientX + 14}px`;
  tip.style.top = `${clientY + 14}px`;
}

export function hideInfotip(tip: HTMLElement): void {
  tip.style.display = "none";
}
