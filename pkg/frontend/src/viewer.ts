/**
 * Viewer controller: owns the view state, turns input events into state
 * transitions, and keeps exactly one rendered frame request moving through
 * the coalescing client. The DOM is reached only through the narrow hook and
 * element interfaces below, so the whole loop is drivable from tests.
 */

import { ViewClient } from "./client.js";
import {
  Interpolator,
  ViewerState,
  applyDrag,
  describe,
  initialState,
  setInterpolator,
  zoomIn,
  zoomOut,
} from "./state.js";

export interface ViewerHooks {
  present(bytes: ArrayBuffer): void;
  setHud(text: string): void;
  /** `null` hides the banner; a string shows it. */
  setBanner(message: string | null): void;
}

export interface ViewerOptions {
  viewportWidth: number;
  viewportHeight: number;
  fov?: number;
  requestWidth?: number;
  requestHeight?: number;
}

export class ViewerController {
  state: ViewerState;
  private dragging = false;
  private lastX = 0;
  private lastY = 0;
  private latencyMs: number | null = null;
  private readonly reqW: number;
  private readonly reqH: number;

  constructor(
    private readonly client: ViewClient,
    private readonly hooks: ViewerHooks,
    private readonly opts: ViewerOptions,
  ) {
    this.state = initialState(opts.fov);
    this.reqW = opts.requestWidth ?? opts.viewportWidth;
    this.reqH = opts.requestHeight ?? opts.viewportHeight;
  }

  /** Issue the initial frame request. */
  start(): void {
    this.refresh();
  }

  onFrame(bytes: ArrayBuffer, latencyMs: number): void {
    this.latencyMs = latencyMs;
    this.hooks.setBanner(null);
    this.hooks.present(bytes);
    this.updateHud();
  }

  onError(message: string): void {
    this.hooks.setBanner(`view service unreachable: ${message}`);
  }

  pointerDown(x: number, y: number): void {
    this.dragging = true;
    this.lastX = x;
    this.lastY = y;
  }

  pointerMove(x: number, y: number): void {
    if (!this.dragging) {
      return;
    }
    const dx = x - this.lastX;
    const dy = y - this.lastY;
    this.lastX = x;
    this.lastY = y;
    this.state = applyDrag(this.state, dx, dy, this.opts.viewportWidth);
    this.refresh();
  }

  pointerUp(): void {
    this.dragging = false;
  }

  zoomIn(): void {
    this.state = zoomIn(this.state);
    this.refresh();
  }

  zoomOut(): void {
    this.state = zoomOut(this.state);
    this.refresh();
  }

  wheel(deltaY: number): void {
    if (deltaY < 0) {
      this.zoomIn();
    } else if (deltaY > 0) {
      this.zoomOut();
    }
  }

  setInterpolator(interp: Interpolator): void {
    this.state = setInterpolator(this.state, interp);
    this.refresh();
  }

  /** Keyboard fallback: arrows pan by a tenth of the viewport, +/- zoom. */
  key(name: string): void {
    const panPx = this.opts.viewportWidth / 10;
    switch (name) {
      case "ArrowLeft":
        this.state = applyDrag(this.state, -panPx, 0, this.opts.viewportWidth);
        break;
      case "ArrowRight":
        this.state = applyDrag(this.state, panPx, 0, this.opts.viewportWidth);
        break;
      case "ArrowUp":
        this.state = applyDrag(this.state, 0, -panPx, this.opts.viewportWidth);
        break;
      case "ArrowDown":
        this.state = applyDrag(this.state, 0, panPx, this.opts.viewportWidth);
        break;
      case "+":
      case "=":
        this.state = zoomIn(this.state);
        break;
      case "-":
        this.state = zoomOut(this.state);
        break;
      default:
        return;
    }
    this.refresh();
  }

  private refresh(): void {
    this.updateHud();
    this.client.request({
      yaw: this.state.yaw,
      pitch: this.state.pitch,
      fov: this.state.fov,
      zoom: this.state.zoom,
      w: this.reqW,
      h: this.reqH,
      interp: this.state.interp,
    });
  }

  private updateHud(): void {
    this.hooks.setHud(describe(this.state, this.latencyMs));
  }
}

// ---------------------------------------------------------------------------
// Event wiring against element-shaped objects (real DOM nodes in the app,
// hand-rolled fakes in tests)

export interface EventSourceLike {
  addEventListener(type: string, handler: (ev: any) => void): void;
}

export interface ViewerElements {
  surface: EventSourceLike;
  zoomInButton: EventSourceLike;
  zoomOutButton: EventSourceLike;
  interpSelect: EventSourceLike & { value: string };
  keySource: EventSourceLike;
}

export function bindViewer(elements: ViewerElements, controller: ViewerController): void {
  elements.surface.addEventListener("pointerdown", (ev) => {
    controller.pointerDown(ev.clientX, ev.clientY);
    ev.preventDefault?.();
  });
  elements.surface.addEventListener("pointermove", (ev) => {
    controller.pointerMove(ev.clientX, ev.clientY);
  });
  elements.surface.addEventListener("pointerup", () => controller.pointerUp());
  elements.surface.addEventListener("pointerleave", () => controller.pointerUp());
  elements.surface.addEventListener("wheel", (ev) => {
    controller.wheel(ev.deltaY);
    ev.preventDefault?.();
  });
  elements.zoomInButton.addEventListener("click", () => controller.zoomIn());
  elements.zoomOutButton.addEventListener("click", () => controller.zoomOut());
  elements.interpSelect.addEventListener("change", () => {
    controller.setInterpolator(elements.interpSelect.value as Interpolator);
  });
  elements.keySource.addEventListener("keydown", (ev) => {
    controller.key(ev.key);
  });
}
