"""Coordinate spaces on the sphere and the projections that chain them together.

Three coordinate systems are used throughout this package:

* spherical coordinates ``(theta, phi)``: longitude ``theta`` in ``[-pi, pi)``
  increasing left to right across an ERP raster, latitude ``phi`` in
  ``[-pi/2, pi/2]`` increasing toward the north pole;
* the unit sphere embedded in R^3, with the north pole at ``(0, 0, 1)``;
* the complex plane reached by stereographic projection from the north pole.

An equirectangular (ERP) raster of height ``H`` and width ``W = 2H`` covers
the full sphere. Pixel centers sit half a pixel inside the raster edges, so
row ``i`` (from the top), column ``j`` (from the left) maps to
``theta = 2*pi*(j + 0.5)/W - pi`` and ``phi = pi/2 - pi*(i + 0.5)/H``.

Scalar operations work on the small value types below; grid-sized work goes
through the ``*_from_*`` array kernels, which follow identical conventions.
All geometry is double precision: the chained projections amplify
single-precision error near the poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

TWO_PI = 2.0 * math.pi

__all__ = [
    "SphericalCoord",
    "SpherePoint",
    "ComplexPoint",
    "IndexMap",
    "wrap_longitude",
    "sp",
    "sp_inv",
    "stp",
    "stp_inv",
    "erp_grid",
    "spherical_to_pixel",
    "sphere_from_angles",
    "angles_from_sphere",
    "pixel_from_angles",
    "angles_from_pixel",
]


def wrap_longitude(theta):
    """Wrap longitude(s) into [-pi, pi). Accepts scalars or arrays."""
    return (theta + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True, slots=True)
class SphericalCoord:
    """Longitude/latitude pair in radians.

    Normalized values satisfy ``theta in [-pi, pi)`` and
    ``phi in [-pi/2, pi/2]``.
    """

    theta: float
    phi: float

    def normalized(self) -> "SphericalCoord":
        phi = min(max(self.phi, -0.5 * math.pi), 0.5 * math.pi)
        return SphericalCoord(float(wrap_longitude(self.theta)), phi)


@dataclass(frozen=True, slots=True)
class SpherePoint:
    """Point on the unit sphere: x**2 + y**2 + z**2 == 1 within 1e-9."""

    x: float
    y: float
    z: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)


@dataclass(frozen=True, slots=True)
class ComplexPoint:
    """Point ``x' + i*y'`` on the extended complex plane.

    When ``at_infinity`` is set, ``re`` and ``im`` carry no meaning and are
    ignored by every consumer.
    """

    re: float
    im: float
    at_infinity: bool = False

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class IndexMap:
    """H x W grid of spherical coordinates (channel 0 = theta, channel 1 = phi)."""

    grid: np.ndarray

    def __post_init__(self):
        grid = np.ascontiguousarray(np.asarray(self.grid, dtype=np.float64))
        if grid.ndim != 3 or grid.shape[2] != 2:
            raise DimensionError(
                f"index map must have shape (H, W, 2), got {grid.shape}"
            )
        if not np.all(np.isfinite(grid)):
            raise ValueError("index map entries must be finite")
        object.__setattr__(self, "grid", grid)

    @property
    def height(self) -> int:
        return self.grid.shape[0]

    @property
    def width(self) -> int:
        return self.grid.shape[1]

    @property
    def theta(self) -> np.ndarray:
        return self.grid[:, :, 0]

    @property
    def phi(self) -> np.ndarray:
        return self.grid[:, :, 1]

    def entry(self, i: int, j: int) -> SphericalCoord:
        return SphericalCoord(float(self.grid[i, j, 0]), float(self.grid[i, j, 1]))


# ---------------------------------------------------------------------------
# Scalar projection chain


def sp(c: SphericalCoord) -> SpherePoint:
    """Project a spherical coordinate onto the unit sphere."""
    cp = math.cos(c.phi)
    return SpherePoint(cp * math.cos(c.theta), cp * math.sin(c.theta), math.sin(c.phi))


def sp_inv(p: SpherePoint) -> SphericalCoord:
    """Recover the spherical coordinate of a unit-sphere point.

    Longitude is recovered with the full-quadrant arctangent so the whole
    sphere round-trips; at the poles (where longitude is undefined) the
    convention is ``theta = 0``, which atan2 yields naturally.
    """
    if abs(p.x * p.x + p.y * p.y + p.z * p.z - 1.0) > 2.0e-6:
        raise ValueError(
            f"point ({p.x}, {p.y}, {p.z}) is not on the unit sphere "
            f"(norm {p.norm:.9f})"
        )
    theta = math.atan2(p.y, p.x)
    if theta == math.pi:
        theta = -math.pi
    z = min(max(p.z, -1.0), 1.0)
    return SphericalCoord(theta, math.asin(z))


def stp(p: SpherePoint) -> ComplexPoint:
    """Stereographic projection from the north pole onto the complex plane.

    ``x' = x / (1 - z)``, ``y' = y / (1 - z)``; the pole itself maps to the
    point at infinity.
    """
    if p.z >= 1.0:
        return ComplexPoint(0.0, 0.0, True)
    d = 1.0 - p.z
    return ComplexPoint(p.x / d, p.y / d)


def stp_inv(c: ComplexPoint) -> SpherePoint:
    """Inverse stereographic projection back onto the unit sphere."""
    if c.at_infinity:
        return SpherePoint(0.0, 0.0, 1.0)
    r2 = c.re * c.re + c.im * c.im
    d = 1.0 + r2
    if not math.isfinite(d):
        # magnitude overflow: indistinguishable from the pole in doubles
        return SpherePoint(0.0, 0.0, 1.0)
    return SpherePoint(2.0 * c.re / d, 2.0 * c.im / d, (r2 - 1.0) / d)


# ---------------------------------------------------------------------------
# ERP raster <-> spherical coordinates


def erp_grid(height: int, width: int) -> IndexMap:
    """Spherical coordinates of every pixel center of an H x W ERP raster.

    Requires ``width == 2 * height`` and ``height >= 2``.
    """
    if width != 2 * height:
        raise DimensionError(f"ERP raster requires W = 2H, got H={height}, W={width}")
    if height < 2:
        raise DimensionError(f"ERP raster requires H >= 2, got H={height}")
    theta = TWO_PI * (np.arange(width) + 0.5) / width - math.pi
    phi = 0.5 * math.pi - math.pi * (np.arange(height) + 0.5) / height
    grid = np.empty((height, width, 2), dtype=np.float64)
    grid[:, :, 0] = theta[np.newaxis, :]
    grid[:, :, 1] = phi[:, np.newaxis]
    return IndexMap(grid)


def spherical_to_pixel(c: SphericalCoord, height: int, width: int) -> tuple[float, float]:
    """Continuous (row, col) position of a spherical coordinate on an ERP raster.

    Exact inverse of the :func:`erp_grid` affine map. The column is not
    wrapped: it may be fractional and fall outside ``[0, W)``.
    """
    row = (0.5 * math.pi - c.phi) * (height / math.pi) - 0.5
    col = (c.theta + math.pi) * (width / TWO_PI) - 0.5
    return row, col


# ---------------------------------------------------------------------------
# Array kernels (same conventions as the scalar chain, vectorized)


def sphere_from_angles(theta, phi):
    """(theta, phi) arrays -> unit-sphere component arrays (x, y, z)."""
    cp = np.cos(phi)
    return cp * np.cos(theta), cp * np.sin(theta), np.sin(phi)


def angles_from_sphere(x, y, z):
    """Unit-sphere component arrays -> (theta, phi), normalized.

    atan2(0, 0) = 0 supplies the pole convention; latitudes are clipped
    against roundoff drift past +-1 before arcsin.
    """
    theta = wrap_longitude(np.arctan2(y, x))
    phi = np.arcsin(np.clip(z, -1.0, 1.0))
    return theta, phi


def pixel_from_angles(theta, phi, height: int, width: int):
    """(theta, phi) arrays -> continuous (row, col) arrays on an ERP raster."""
    row = (0.5 * math.pi - np.asarray(phi)) * (height / math.pi) - 0.5
    col = (np.asarray(theta) + math.pi) * (width / TWO_PI) - 0.5
    return row, col


def angles_from_pixel(row, col, height: int, width: int):
    """Continuous (row, col) arrays -> (theta, phi) arrays (not wrapped).

    Rows/columns outside the raster yield coordinates beyond the normalized
    ranges; callers relying on the pole-crossing continuation want exactly
    that behavior.
    """
    theta = TWO_PI * (np.asarray(col) + 0.5) / width - math.pi
    phi = 0.5 * math.pi - math.pi * (np.asarray(row) + 0.5) / height
    return theta, phi
