import { describe, expect, it } from "vitest";

import {
  PITCH_LIMIT,
  ZOOM_MAX,
  ZOOM_MIN,
  applyDrag,
  initialState,
  setInterpolator,
  wrapYaw,
  zoomIn,
  zoomOut,
} from "../src/state.js";

describe("initial state", () => {
  it("starts at yaw 0, pitch 0, fov 90 deg, zoom 1, slerp", () => {
    const s = initialState();
    expect(s.yaw).toBe(0);
    expect(s.pitch).toBe(0);
    expect(s.fov).toBeCloseTo(Math.PI / 2, 12);
    expect(s.zoom).toBe(1);
    expect(s.interp).toBe("slerp");
  });
});

describe("drag mapping", () => {
  it("drag right by N px increases yaw by N * fov / viewportWidth", () => {
    const s = initialState();
    const out = applyDrag(s, 200, 0, 800);
    expect(out.yaw).toBeCloseTo(200 * (s.fov / 800), 12);
    expect(out.pitch).toBe(0);
  });

  it("drag down tilts the view downward", () => {
    const out = applyDrag(initialState(), 0, 120, 800);
    expect(out.pitch).toBeLessThan(0);
  });

  it("pitch clamps to +/-89 degrees", () => {
    let s = initialState();
    for (let i = 0; i < 50; i++) {
      s = applyDrag(s, 0, -10_000, 800);
    }
    expect(s.pitch).toBe(PITCH_LIMIT);
    for (let i = 0; i < 100; i++) {
      s = applyDrag(s, 0, 10_000, 800);
    }
    expect(s.pitch).toBe(-PITCH_LIMIT);
  });

  it("yaw wraps to [-pi, pi)", () => {
    let s = initialState();
    for (let i = 0; i < 40; i++) {
      s = applyDrag(s, 500, 0, 800);
    }
    expect(s.yaw).toBeGreaterThanOrEqual(-Math.PI);
    expect(s.yaw).toBeLessThan(Math.PI);
    expect(wrapYaw(3 * Math.PI)).toBeCloseTo(-Math.PI, 12);
  });
});

describe("zoom steps", () => {
  it("two zoom-ins then two zoom-outs return exactly 1", () => {
    let s = initialState();
    s = zoomIn(s);
    s = zoomIn(s);
    expect(s.zoom).toBeCloseTo(1.5625, 15);
    s = zoomOut(s);
    s = zoomOut(s);
    expect(s.zoom).toBe(1); // exact, not approximate
  });

  it("clamps to [0.25, 8]", () => {
    let s = initialState();
    for (let i = 0; i < 30; i++) s = zoomIn(s);
    expect(s.zoom).toBe(ZOOM_MAX);
    for (let i = 0; i < 60; i++) s = zoomOut(s);
    expect(s.zoom).toBe(ZOOM_MIN);
  });
});

describe("interpolator", () => {
  it("switches without touching the pose", () => {
    const s = setInterpolator(applyDrag(initialState(), 50, 20, 800), "nearest");
    expect(s.interp).toBe("nearest");
    expect(s.yaw).not.toBe(0);
  });
});
