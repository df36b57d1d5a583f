/**
 * Pure viewer state and its transitions.
 *
 * Angles are radians throughout (the service consumes radians on the wire).
 * Dragging pans the view direction: dragging right by N pixels increases yaw
 * by N * (fov / viewportWidth); dragging down tilts the view downward by the
 * same per-pixel angular scale. Zoom moves in multiplicative steps so that
 * matched zoom-ins and zoom-outs cancel exactly.
 */

export const ZOOM_STEP = 1.25;
export const ZOOM_MIN = 0.25;
export const ZOOM_MAX = 8;
export const PITCH_LIMIT = (89 * Math.PI) / 180;

export const INTERPOLATORS = ["slerp", "bicubic", "nearest"] as const;
export type Interpolator = (typeof INTERPOLATORS)[number];

export interface ViewerState {
  readonly yaw: number;
  readonly pitch: number;
  readonly fov: number;
  readonly zoom: number;
  readonly interp: Interpolator;
}

export function initialState(fov: number = Math.PI / 2): ViewerState {
  return { yaw: 0, pitch: 0, fov, zoom: 1, interp: "slerp" };
}

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}

export function wrapYaw(yaw: number): number {
  const wrapped = (((yaw + Math.PI) % (2 * Math.PI)) + 2 * Math.PI) % (2 * Math.PI);
  return wrapped - Math.PI;
}

export function applyDrag(
  state: ViewerState,
  dxPx: number,
  dyPx: number,
  viewportWidth: number,
): ViewerState {
  const scale = state.fov / viewportWidth;
  return {
    ...state,
    yaw: wrapYaw(state.yaw + dxPx * scale),
    pitch: clamp(state.pitch - dyPx * scale, -PITCH_LIMIT, PITCH_LIMIT),
  };
}

export function zoomIn(state: ViewerState): ViewerState {
  return { ...state, zoom: clamp(state.zoom * ZOOM_STEP, ZOOM_MIN, ZOOM_MAX) };
}

export function zoomOut(state: ViewerState): ViewerState {
  return { ...state, zoom: clamp(state.zoom / ZOOM_STEP, ZOOM_MIN, ZOOM_MAX) };
}

export function setInterpolator(state: ViewerState, interp: Interpolator): ViewerState {
  return { ...state, interp };
}

export function describe(state: ViewerState, latencyMs: number | null): string {
  const deg = (r: number) => ((r * 180) / Math.PI).toFixed(1);
  const latency = latencyMs === null ? "-" : `${latencyMs.toFixed(0)} ms`;
  return (
    `yaw ${deg(state.yaw)}°  pitch ${deg(state.pitch)}°  ` +
    `fov ${deg(state.fov)}°  zoom ${state.zoom.toFixed(3)}  ` +
    `${state.interp}  latency ${latency}`
  );
}
