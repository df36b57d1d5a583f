/**
 * Coalescing client for the view endpoint.
 *
 * At most one request is in flight; user state changes while a frame is
 * rendering collapse into a single pending request, and the newest state
 * wins. Responses are tagged with a sequence number: a frame that comes back
 * after a newer request has been queued is superseded and never displayed.
 */

export interface ViewRequest {
  yaw: number;
  pitch: number;
  fov: number;
  zoom: number;
  w: number;
  h: number;
  interp: string;
}

export interface FetchResponseLike {
  ok: boolean;
  status: number;
  arrayBuffer(): Promise<ArrayBuffer>;
}

export type FetchLike = (url: string) => Promise<FetchResponseLike>;

export interface ViewClientHooks {
  onFrame(bytes: ArrayBuffer, latencyMs: number): void;
  onError(message: string): void;
  /** Called when a completed response is dropped because a newer request superseded it. */
  onDiscard?(seq: number): void;
}

export function viewUrl(base: string, req: ViewRequest): string {
  const params = new URLSearchParams({
    yaw: String(req.yaw),
    pitch: String(req.pitch),
    fov: String(req.fov),
    zoom: String(req.zoom),
    w: String(req.w),
    h: String(req.h),
    interp: req.interp,
  });
  return `${base}/api/view?${params.toString()}`;
}

export class ViewClient {
  private seq = 0;
  private inFlight = false;
  private pending: ViewRequest | null = null;

  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike,
    private readonly hooks: ViewClientHooks,
    private readonly now: () => number = () => Date.now(),
  ) {}

  /** Latest state wins; issues a fetch immediately unless one is in flight. */
  request(req: ViewRequest): void {
    this.pending = req;
    void this.pump();
  }

  get inFlightCount(): number {
    return this.inFlight ? 1 : 0;
  }

  private async pump(): Promise<void> {
    if (this.inFlight || this.pending === null) {
      return;
    }
    const req = this.pending;
    this.pending = null;
    const seq = ++this.seq;
    this.inFlight = true;
    const started = this.now();
    try {
      const response = await this.fetchFn(viewUrl(this.base, req));
      if (!response.ok) {
        throw new Error(`view service responded ${response.status}`);
      }
      const bytes = await response.arrayBuffer();
      if (this.pending === null && seq === this.seq) {
        this.hooks.onFrame(bytes, this.now() - started);
      } else {
        this.hooks.onDiscard?.(seq);
      }
    } catch (err) {
      this.hooks.onError(err instanceof Error ? err.message : String(err));
    } finally {
      this.inFlight = false;
    }
    if (this.pending !== null) {
      void this.pump();
    }
  }
}
