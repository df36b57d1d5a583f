"""HTTP view service backing the interactive browser viewer.

API (all angles are radians written as decimal strings; zoom is a positive
decimal; PNG is the only image codec):

* ``GET /api/meta`` -> ``{"width", "height", "name"}``
* ``GET /api/view?yaw&pitch&fov&zoom&w&h&interp`` -> ``image/png``
* ``POST /api/image`` (PNG body) -> 201 + new meta

Errors: 400 malformed or out-of-range query, 413 oversized requested raster
(area above 4096^2), 422 zoom <= 0.

The loaded panorama is immutable shared state, swapped atomically by the
upload endpoint; requests are otherwise stateless, so identical concurrent
requests return identical bytes. Handlers are synchronous and run on the
server's worker thread pool, whose size the ``OMNIVR_THREADS`` environment
variable caps.
"""

from __future__ import annotations

import math
import os
import threading
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .errors import ConfigurationError, InvalidCommandError
from .imgio import decode_png, encode_png
from .projection import PerspectiveCamera, render_view
from .resample import ErpImage, INTERPOLATORS

MAX_VIEW_AREA = 4096 * 4096

__all__ = ["create_app", "MAX_VIEW_AREA"]


class _ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _parse_float(raw: str, name: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise _ApiError(400, f"query parameter {name!r} is not a number: {raw!r}")
    if not math.isfinite(value):
        raise _ApiError(400, f"query parameter {name!r} must be finite")
    return value


def _parse_int(raw: str, name: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise _ApiError(400, f"query parameter {name!r} is not an integer: {raw!r}")


def create_app(image: ErpImage, name: str = "panorama", frontend_dir: str | None = None) -> FastAPI:
    if not image.is_erp():
        raise ConfigurationError(
            f"panorama must satisfy W = 2H, got {image.height}x{image.width}"
        )
    @asynccontextmanager
    async def _lifespan(_app: FastAPI):
        threads = os.environ.get("OMNIVR_THREADS")
        if threads:
            from anyio import to_thread

            to_thread.current_default_thread_limiter().total_tokens = max(1, int(threads))
        yield

    app = FastAPI(
        title="omnivr view service", docs_url=None, redoc_url=None, lifespan=_lifespan
    )
    app.state.panorama = (image, name)
    app.state.upload_lock = threading.Lock()

    @app.exception_handler(_ApiError)
    async def _api_error(_request: Request, exc: _ApiError):
        return JSONResponse(status_code=exc.status, content={"detail": exc.message})

    @app.get("/api/meta")
    def meta():
        pano, pano_name = app.state.panorama
        return {"width": pano.width, "height": pano.height, "name": pano_name}

    @app.get("/api/view")
    def view(
        yaw: str = "0",
        pitch: str = "0",
        fov: str = "1.5707963267948966",
        zoom: str = "1",
        w: str = "512",
        h: str = "512",
        interp: str = "slerp",
    ):
        yaw_v = _parse_float(yaw, "yaw")
        pitch_v = _parse_float(pitch, "pitch")
        fov_v = _parse_float(fov, "fov")
        zoom_v = _parse_float(zoom, "zoom")
        w_v = _parse_int(w, "w")
        h_v = _parse_int(h, "h")
        if w_v < 1 or h_v < 1:
            raise _ApiError(400, f"requested raster {w_v}x{h_v} is empty")
        if w_v * h_v > MAX_VIEW_AREA:
            raise _ApiError(413, f"requested raster {w_v}x{h_v} exceeds {MAX_VIEW_AREA} pixels")
        if zoom_v <= 0.0:
            raise _ApiError(422, f"zoom must satisfy s > 0, got {zoom_v}")
        if interp not in INTERPOLATORS:
            raise _ApiError(400, f"unknown interpolator {interp!r}")
        try:
            cam = PerspectiveCamera(
                yaw=yaw_v, pitch=pitch_v, fov_h=fov_v, out_w=w_v, out_h=h_v
            )
        except ConfigurationError as exc:
            raise _ApiError(400, str(exc))
        pano, _ = app.state.panorama
        try:
            rendered = render_view(pano, cam, zoom=zoom_v, interp=interp)
        except InvalidCommandError as exc:
            raise _ApiError(422, str(exc))
        return Response(content=encode_png(rendered), media_type="image/png")

    @app.post("/api/image", status_code=201)
    async def upload(request: Request):
        body = await request.body()
        try:
            uploaded = decode_png(body)
        except Exception:
            raise _ApiError(400, "body is not a decodable PNG")
        if not uploaded.is_erp():
            raise _ApiError(
                400, f"panorama must satisfy W = 2H, got {uploaded.height}x{uploaded.width}"
            )
        with app.state.upload_lock:
            app.state.panorama = (uploaded, "uploaded")
        pano, pano_name = app.state.panorama
        return {"width": pano.width, "height": pano.height, "name": pano_name}

    if frontend_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app
