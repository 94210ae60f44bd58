// App bootstrap: load a bundle (?bundle= URL or file picker), build the two
// panels and drive them from ViewState.

import { BundleError, ViewerBundle, validateBundle } from "./bundle.js";
import {
  animationDone,
  brush,
  initialState,
  rightPanelPositions,
  switchDataset,
  ViewState,
} from "./state.js";
import { infotipLines, renderLegend, renderPanel } from "./scene.js";
import {
  applyLegend,
  applyScene,
  buildPanel,
  hideInfotip,
  Panel,
  showInfotip,
} from "./dom.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function showError(message: string): void {
  const screen = el<HTMLDivElement>("error-screen");
  screen.textContent = message;
  screen.style.display = "block";
  el<HTMLDivElement>("app").style.display = "none";
}

function start(bundle: ViewerBundle): void {
  el<HTMLDivElement>("picker").style.display = "none";
  el<HTMLDivElement>("app").style.display = "block";

  let state: ViewState = initialState(bundle);
  let mouse: [number, number] = [0, 0];

  const onHover = (regionId: string | null) => {
    state = brush(state, regionId);
    render();
    const tip = el<HTMLDivElement>("infotip");
    if (regionId === null) {
      hideInfotip(tip);
    } else {
      showInfotip(tip, infotipLines(bundle, regionId), mouse[0], mouse[1]);
    }
  };

  document.addEventListener("mousemove", (event) => {
    mouse = [event.clientX, event.clientY];
    if (state.hoveredRegion !== null) {
      showInfotip(
        el<HTMLDivElement>("infotip"),
        infotipLines(bundle, state.hoveredRegion),
        mouse[0],
        mouse[1],
      );
    }
  });

  const left: Panel = buildPanel(el("left-panel"), bundle, false, onHover);
  const right: Panel = buildPanel(el("right-panel"), bundle, true, onHover);

  const dropdown = el<HTMLSelectElement>("dataset-select");
  for (const dataset of bundle.datasets) {
    const option = document.createElement("option");
    option.value = dataset.name;
    option.textContent = dataset.name;
    dropdown.appendChild(option);
  }
  dropdown.value = state.activeDataset;
  dropdown.addEventListener("change", () => {
    state = switchDataset(bundle, state, dropdown.value, performance.now());
    animate();
  });

  function render(): void {
    const now = performance.now();
    applyScene(
      left,
      renderPanel(bundle, bundle.pools.conventional, state.activeDataset, state.hoveredRegion),
    );
    applyScene(
      right,
      renderPanel(
        bundle,
        rightPanelPositions(bundle, state, now),
        state.activeDataset,
        state.hoveredRegion,
      ),
    );
    applyLegend(right, bundle, renderLegend(bundle, state.activeDataset));
    el<HTMLSpanElement>("total-label").textContent =
      bundle.datasets.find((d) => d.name === state.activeDataset)?.totalLabel ?? "";
  }

  function animate(): void {
    render();
    if (state.animation && !animationDone(bundle, state, performance.now())) {
      requestAnimationFrame(animate);
    } else if (state.animation) {
      state = { ...state, animation: null };
      render();
    }
  }

  render();
}

function boot(): void {
  const params = new URLSearchParams(window.location.search);
  const url = params.get("bundle");
  if (url) {
    fetch(url)
      .then((response) => {
        if (!response.ok) {
          throw new Error(`${response.status} ${response.statusText}`);
        }
        return response.json();
      })
      .then((raw) => start(validateBundle(raw)))
      .catch((error) => showError(`Could not load bundle: ${error.message ?? error}`));
    return;
  }
  const input = el<HTMLInputElement>("bundle-file");
  input.addEventListener("change", () => {
    const file = input.files?.[0];
    if (!file) {
      return;
    }
    file
      .text()
      .then((text) => start(validateBundle(JSON.parse(text))))
      .catch((error) => {
        if (error instanceof BundleError || error instanceof SyntaxError) {
          showError(error.message);
        } else {
          showError(`Could not read bundle: ${error}`);
        }
      });
  });
}

boot();
