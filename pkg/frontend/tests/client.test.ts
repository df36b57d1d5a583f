import { describe, expect, it } from "vitest";

import { FetchResponseLike, ViewClient, ViewRequest, viewUrl } from "../src/client.js";

function req(partial: Partial<ViewRequest> = {}): ViewRequest {
  return {
    yaw: 0,
    pitch: 0,
    fov: Math.PI / 2,
    zoom: 1,
    w: 64,
    h: 64,
    interp: "slerp",
    ...partial,
  };
}

interface Deferred {
  url: string;
  resolve(body?: ArrayBuffer): void;
  reject(err: Error): void;
}

/** fetch stub whose responses complete only when the test says so */
function manualFetch() {
  const queue: Deferred[] = [];
  const fetchFn = (url: string) =>
    new Promise<FetchResponseLike>((resolve, reject) => {
      queue.push({
        url,
        resolve: (body = new ArrayBuffer(4)) =>
          resolve({ ok: true, status: 200, arrayBuffer: () => Promise.resolve(body) }),
        reject,
      });
    });
  return { queue, fetchFn };
}

const flush = () => new Promise<void>((r) => setTimeout(r, 0));

describe("viewUrl", () => {
  it("hits /api/view with every parameter", () => {
    const url = viewUrl("", req({ yaw: 0.25, zoom: 2, interp: "nearest" }));
    expect(url).toContain("/api/view?");
    expect(url).toContain("yaw=0.25");
    expect(url).toContain("zoom=2");
    expect(url).toContain("interp=nearest");
    expect(url).toContain("w=64");
  });
});

describe("ViewClient coalescing", () => {
  it("keeps at most one request in flight and the newest state wins", async () => {
    const { queue, fetchFn } = manualFetch();
    const frames: number[] = [];
    const discards: number[] = [];
    const client = new ViewClient("", fetchFn, {
      onFrame: () => frames.push(1),
      onError: () => {
        throw new Error("unexpected");
      },
      onDiscard: (seq) => discards.push(seq),
    });

    client.request(req({ yaw: 0.1 }));
    client.request(req({ yaw: 0.2 }));
    client.request(req({ yaw: 0.3 }));
    await flush();
    expect(queue.length).toBe(1); // one in flight, intermediate states collapsed
    expect(client.inFlightCount).toBe(1);

    queue[0].resolve();
    await flush();
    expect(queue.length).toBe(2); // the pending newest state went out next
    expect(queue[1].url).toContain("yaw=0.3");
    expect(discards).toEqual([1]); // superseded frame was dropped
    expect(frames.length).toBe(0);

    queue[1].resolve();
    await flush();
    expect(frames.length).toBe(1);
  });

  it("reports latency for displayed frames", async () => {
    const { queue, fetchFn } = manualFetch();
    let t = 1000;
    const latencies: number[] = [];
    const client = new ViewClient(
      "",
      fetchFn,
      {
        onFrame: (_bytes, latency) => latencies.push(latency),
        onError: () => {},
      },
      () => t,
    );
    client.request(req());
    await flush();
    t = 1037;
    queue[0].resolve();
    await flush();
    expect(latencies).toEqual([37]);
  });

  it("surfaces fetch failures and keeps working afterwards", async () => {
    const { queue, fetchFn } = manualFetch();
    const errors: string[] = [];
    const frames: number[] = [];
    const client = new ViewClient("", fetchFn, {
      onFrame: () => frames.push(1),
      onError: (message) => errors.push(message),
    });
    client.request(req());
    await flush();
    queue[0].reject(new Error("connection refused"));
    await flush();
    expect(errors).toEqual(["connection refused"]);

    client.request(req({ yaw: 1 }));
    await flush();
    queue[1].resolve();
    await flush();
    expect(frames.length).toBe(1);
  });

  it("treats non-2xx responses as errors", async () => {
    const errors: string[] = [];
    const client = new ViewClient(
      "",
      () =>
        Promise.resolve({
          ok: false,
          status: 422,
          arrayBuffer: () => Promise.resolve(new ArrayBuffer(0)),
        }),
      { onFrame: () => {}, onError: (m) => errors.push(m) },
    );
    client.request(req({ zoom: -1 }));
    await flush();
    expect(errors[0]).toContain("422");
  });
});
