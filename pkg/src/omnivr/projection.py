"""Rectilinear (pinhole) views extracted from ERP panoramas.

The camera is described by a view direction (yaw = longitude, pitch =
latitude), a horizontal field of view, and the output raster size. Rays are
built in the camera frame (+x forward, +y image-right, +z image-up), pitched
about the camera's right axis, then yawed about the world vertical; roll is
fixed at zero. The focal length in pixels is (out_w / 2) / tan(fov_h / 2),
so the implied vertical field of view is
2 * arctan((out_h / out_w) * tan(fov_h / 2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InvalidCommandError
from .geometry import IndexMap, SphericalCoord, angles_from_sphere
from .mobius import from_zoom_at, transform_index_map
from .resample import ErpImage, resample

__all__ = [
    "PerspectiveCamera",
    "view_ray_angles",
    "build_view_index_map",
    "render_perspective",
    "render_view",
]

_MIN_FOV = 0.01
_MAX_FOV = math.pi - 0.01


@dataclass(frozen=True, slots=True)
class PerspectiveCamera:
    """Pinhole camera aimed at (yaw, pitch) with horizontal FoV ``fov_h``."""

    yaw: float
    pitch: float
    fov_h: float
    out_w: int
    out_h: int

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.yaw, self.pitch, self.fov_h)):
            raise ConfigurationError("camera angles must be finite")
        if abs(self.pitch) > 0.5 * math.pi - 1e-6:
            raise ConfigurationError(
                f"camera pitch must satisfy |pitch| <= pi/2 - 1e-6, got {self.pitch}"
            )
        if not (_MIN_FOV < self.fov_h < _MAX_FOV):
            raise ConfigurationError(
                f"horizontal FoV must lie in ({_MIN_FOV}, {_MAX_FOV}), got {self.fov_h}"
            )
        if self.out_w < 1 or self.out_h < 1:
            raise ConfigurationError(
                f"output raster must be at least 1x1, got {self.out_h}x{self.out_w}"
            )

    @property
    def focal_px(self) -> float:
        return (self.out_w / 2.0) / math.tan(0.5 * self.fov_h)


def view_ray_angles(cam: PerspectiveCamera, rows, cols):
    """Spherical coordinates of the rays through continuous raster positions.

    ``rows``/``cols`` are continuous pixel coordinates (pixel centers at
    integers, raster edges at -0.5); boundary rays are reachable by passing
    fractional positions, which the FoV tests rely on.
    """
    f = cam.focal_px
    u = np.asarray(cols, dtype=np.float64) + 0.5 - cam.out_w / 2.0
    v = np.asarray(rows, dtype=np.float64) + 0.5 - cam.out_h / 2.0
    norm = np.sqrt(f * f + u * u + v * v)
    dx = f / norm
    dy = u / norm
    dz = -v / norm
    cp, sp_ = math.cos(cam.pitch), math.sin(cam.pitch)
    cy, sy = math.cos(cam.yaw), math.sin(cam.yaw)
    # pitch about the camera right axis, then yaw about the world vertical
    x1 = cp * dx - sp_ * dz
    z1 = sp_ * dx + cp * dz
    x2 = cy * x1 - sy * dy
    y2 = sy * x1 + cy * dy
    return angles_from_sphere(x2, y2, z1)


def build_view_index_map(cam: PerspectiveCamera) -> IndexMap:
    """Per-pixel spherical lookup table realizing the camera's view."""
    rows, cols = np.meshgrid(
        np.arange(cam.out_h, dtype=np.float64),
        np.arange(cam.out_w, dtype=np.float64),
        indexing="ij",
    )
    theta, phi = view_ray_angles(cam, rows, cols)
    return IndexMap(np.stack([theta, phi], axis=-1))


def render_perspective(
    img: ErpImage, cam: PerspectiveCamera, interp: str = "slerp"
) -> ErpImage:
    """Rectilinear view of an ERP panorama (output raster is out_h x out_w)."""
    return resample(img, build_view_index_map(cam), interp)


def render_view(
    img: ErpImage, cam: PerspectiveCamera, zoom: float = 1.0, interp: str = "slerp"
) -> ErpImage:
    """Perspective view with a conformal zoom about the view center.

    The zoom and the perspective lookup compose into a single resampling
    pass: the zoom map is applied to the camera's per-pixel directions, then
    the panorama is sampled once. Applying the map directly (rather than
    pulling the grid through its inverse as the image pipeline does) is what
    makes ``zoom > 1`` magnify the object under the view center: sampling
    directions contract toward the center, so the content there spreads over
    more output pixels.
    """
    if not (math.isfinite(zoom) and zoom > 0.0):
        raise InvalidCommandError(f"zoom level must satisfy s > 0, got {zoom}")
    view = build_view_index_map(cam)
    if zoom != 1.0:
        matrix = from_zoom_at(SphericalCoord(cam.yaw, cam.pitch), zoom)
        view = transform_index_map(view, matrix)
    return resample(img, view, interp)
