import { ViewClient } from "./client.js";
import { ViewerController, bindViewer } from "./viewer.js";

function requireElement<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function boot(): void {
  const frame = requireElement<HTMLImageElement>("frame");
  const hud = requireElement<HTMLDivElement>("hud");
  const banner = requireElement<HTMLDivElement>("banner");
  const surface = requireElement<HTMLDivElement>("surface");

  const viewportWidth = surface.clientWidth || 768;
  const viewportHeight = surface.clientHeight || 512;
  let objectUrl: string | null = null;

  const controller = new ViewerController(
    new ViewClient("", (url) => fetch(url), {
      onFrame: (bytes, latency) => controller.onFrame(bytes, latency),
      onError: (message) => controller.onError(message),
    }),
    {
      present: (bytes) => {
        const next = URL.createObjectURL(new Blob([bytes], { type: "image/png" }));
        frame.src = next;
        if (objectUrl) {
          URL.revokeObjectURL(objectUrl);
        }
        objectUrl = next;
      },
      setHud: (text) => {
        hud.textContent = text;
      },
      setBanner: (message) => {
        banner.textContent = message ?? "";
        banner.style.display = message ? "block" : "none";
      },
    },
    { viewportWidth, viewportHeight },
  );

  bindViewer(
    {
      surface,
      zoomInButton: requireElement<HTMLButtonElement>("zoom-in"),
      zoomOutButton: requireElement<HTMLButtonElement>("zoom-out"),
      interpSelect: requireElement<HTMLSelectElement>("interp"),
      keySource: window,
    },
    controller,
  );
  controller.start();
}

boot();
