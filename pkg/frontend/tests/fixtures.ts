import { ViewerBundle } from "../src/bundle.js";

/** Two unit squares sharing an edge; region A sits on the palette slot whose
 * base color is #E7298A and has no Population value. */
export function makeBundle(): ViewerBundle {
  return {
    version: 1,
    canvas: { width: 200, height: 100 },
    animationMs: 1000,
    palette: {
      base: ["#1B9E77", "#D95F02", "#7570B3", "#E7298A", "#66A61E", "#E6AB02"],
      highlight: ["#2BDBA6", "#FD862A", "#A5A2CE", "#FF5CBD", "#8DDB36", "#FDCA37"],
      missing: "#CCCCCC",
      legend: "#707070",
    },
    topology: {
      rings: [
        [0, 1, 2, 3],
        [1, 4, 5, 2],
      ],
      regions: [
        { id: "A", name: "Alpha", abbr: "AL", colorIndex: 3, ringIds: [0], holeIds: [] },
        { id: "B", name: "Beta", abbr: "BE", colorIndex: 0, ringIds: [1], holeIds: [] },
      ],
    },
    pools: {
      conventional: [
        [0, 0],
        [100, 0],
        [100, 100],
        [0, 100],
        [200, 0],
        [200, 100],
      ],
      Population: [
        [0, 10],
        [120, 0],
        [120, 100],
        [0, 90],
        [200, 20],
        [200, 80],
      ],
      GDP: [
        [10, 0],
        [80, 0],
        [80, 100],
        [10, 100],
        [200, 0],
        [200, 100],
      ],
    },
    datasets: [
      {
        name: "Population",
        unit: "persons",
        totalLabel: "42 persons",
        legend: { value: 5, sidePx: 30, label: "represents 5 persons" },
        values: { A: null, B: 42 },
        display: { A: "no data", B: "42 persons" },
      },
      {
        name: "GDP",
        unit: "€",
        totalLabel: "10 €",
        legend: { value: 2, sidePx: 28, label: "represents 2 €" },
        values: { A: 4, B: 6 },
        display: { A: "4 €", B: "6 €" },
      },
    ],
  };
}
