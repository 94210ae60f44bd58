// View state and the dataset-switching animation. All pure: the DOM layer
// feeds in timestamps and re-renders from the returned state.

import { Pool, ViewerBundle } from "./bundle.js";

export interface Animation {
  fromPool: Pool;
  toPool: Pool;
  startTime: number;
}

export interface ViewState {
  activeDataset: string;
  hoveredRegion: string | null;
  animation: Animation | null;
}

export function initialState(bundle: ViewerBundle): ViewState {
  return {
    activeDataset: bundle.datasets[0].name,
    hoveredRegion: null,
    animation: null,
  };
}

export function easeInOutCubic(t: number): number {
  return t < 0.5 ? 4 * t * t * t : 1 - Math.pow(-2 * t + 2, 3) / 2;
}

/** (1-alpha)*from + alpha*to, exact at both endpoints. */
export function lerpPool(from: Pool, to: Pool, alpha: number): Pool {
  return from.map((p, i) => [
    (1 - alpha) * p[0] + alpha * to[i][0],
    (1 - alpha) * p[1] + alpha * to[i][1],
  ]);
}

/** Vertex positions the right panel shows at `now`. Returns the target pool
 * object itself once the animation has finished. */
export function rightPanelPositions(bundle: ViewerBundle, state: ViewState, now: number): Pool {
  if (!state.animation) {
    return bundle.pools[state.activeDataset];
  }
  const elapsed = now - state.animation.startTime;
  if (elapsed <= 0) {
    return state.animation.fromPool;
  }
  if (elapsed >= bundle.animationMs) {
    return state.animation.toPool;
  }
  const alpha = easeInOutCubic(elapsed / bundle.animationMs);
  return lerpPool(state.animation.fromPool, state.animation.toPool, alpha);
}

export function animationDone(bundle: ViewerBundle, state: ViewState, now: number): boolean {
  return state.animation !== null && now - state.animation.startTime >= bundle.animationMs;
}

/** Start morphing toward `name`'s pool from whatever is on screen right now,
 * so interrupting an animation never jumps. Unknown and already-active names
 * are ignored. */
export function switchDataset(
  bundle: ViewerBundle,
  state: ViewState,
  name: string,
  now: number,
): ViewState {
  if (!(name in bundle.pools) || name === "conventional" || name === state.activeDataset) {
    return state;
  }
  const fromPool = rightPanelPositions(bundle, state, now);
  return {
    ...state,
    activeDataset: name,
    animation: { fromPool, toPool: bundle.pools[name], startTime: now },
  };
}

export function brush(state: ViewState, regionId: string | null): ViewState {
  if (regionId === state.hoveredRegion) {
    return state;
  }
  return { ...state, hoveredRegion: regionId };
}
