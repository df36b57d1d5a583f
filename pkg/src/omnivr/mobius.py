"""Moebius-matrix algebra and its action on spherical index maps.

A 2x2 complex matrix ``[[a, b], [c, d]]`` with ``ad - bc != 0`` acts on the
extended complex plane as ``f(z) = (a z + b) / (c z + d)``. Conjugated with
stereographic projection, this family realizes every conformal bijection of
the sphere, which is what makes it the right tool for rotating and zooming
panoramas without shape distortion.

Matrices are kept unnormalized throughout: scaling all four entries by a
nonzero complex number does not change the induced map, so equality is only
ever meaningful "up to complex scale".

Navigation commands are the triple ``(beta, gamma, s)``: horizontal rotation,
vertical rotation, and zoom level. Each maps to a primitive matrix and
arbitrary commands compose by matrix multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCommandError
from .geometry import (
    ComplexPoint,
    IndexMap,
    SphericalCoord,
    angles_from_sphere,
    sphere_from_angles,
)

_DET_EPS = 1e-12
_DENOM_EPS = 1e-12

__all__ = [
    "MobiusMatrix",
    "UserCommand",
    "IDENTITY",
    "from_horizontal_rotation",
    "from_vertical_rotation",
    "from_zoom",
    "from_zoom_at",
    "from_command",
    "compose",
    "inverse",
    "apply",
    "apply_complex",
    "transform_index_map",
    "matrices_equivalent",
]


@dataclass(frozen=True, slots=True)
class MobiusMatrix:
    """Complex 2x2 matrix defining f(z) = (a z + b) / (c z + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "d", complex(self.d))
        if abs(self.det) <= _DET_EPS:
            raise ValueError(
                f"Moebius matrix is singular: |ad - bc| = {abs(self.det):.3e}"
            )

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)


IDENTITY = MobiusMatrix(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class UserCommand:
    """Navigation command: horizontal/vertical rotation (radians) and zoom level."""

    beta: float
    gamma: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and math.isfinite(self.gamma)):
            raise InvalidCommandError("rotation angles must be finite")
        if not (math.isfinite(self.s) and self.s > 0.0):
            raise InvalidCommandError(f"zoom level must satisfy s > 0, got {self.s}")


def from_horizontal_rotation(beta: float) -> MobiusMatrix:
    """Rotation about the polar axis by ``beta``: f(z) = e^(i beta) z."""
    return MobiusMatrix(complex(math.cos(beta), math.sin(beta)), 0.0, 0.0, 1.0)


def from_vertical_rotation(gamma: float) -> MobiusMatrix:
    """Rotation tilting the front of the sphere upward by ``gamma``.

    Fixes the points at longitude +-pi/2 on the equator and carries the
    forward point (theta=0, phi=0) to (0, gamma).
    """
    half = 0.5 * gamma
    ch, sh = math.cos(half), math.sin(half)
    return MobiusMatrix(ch, sh, -sh, ch)


def from_zoom(s: float) -> MobiusMatrix:
    """Zoom toward the north pole by level ``s``: f(z) = s z."""
    if not (math.isfinite(s) and s > 0.0):
        raise InvalidCommandError(f"zoom level must satisfy s > 0, got {s}")
    return MobiusMatrix(s, 0.0, 0.0, 1.0)


def compose(m1: MobiusMatrix, m2: MobiusMatrix) -> MobiusMatrix:
    """Matrix product m1 . m2, i.e. apply(m2, .) first, then apply(m1, .)."""
    return MobiusMatrix(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def inverse(m: MobiusMatrix) -> MobiusMatrix:
    """Inverse up to complex scale: (d, -b, -c, a); no determinant division."""
    return MobiusMatrix(m.d, -m.b, -m.c, m.a)


def from_command(cmd: UserCommand) -> MobiusMatrix:
    """Matrix for a full navigation command.

    Rotation is applied first (horizontal, then vertical), zoom last, so the
    natural reading is "navigate to a target, then magnify it".
    """
    rot = compose(from_vertical_rotation(cmd.gamma), from_horizontal_rotation(cmd.beta))
    return compose(from_zoom(cmd.s), rot)


def from_zoom_at(center: SphericalCoord, s: float) -> MobiusMatrix:
    """Zoom by ``s`` about an arbitrary viewing direction.

    Conjugates the polar zoom with the rotation R carrying ``center`` to the
    north pole: R^-1 . zoom(s) . R. ``center`` is a fixed point of the
    resulting sphere map.
    """
    if not (math.isfinite(s) and s > 0.0):
        raise InvalidCommandError(f"zoom level must satisfy s > 0, got {s}")
    r = compose(
        from_vertical_rotation(0.5 * math.pi - center.phi),
        from_horizontal_rotation(-center.theta),
    )
    return compose(compose(inverse(r), from_zoom(s)), r)


def apply(m: MobiusMatrix, z: ComplexPoint) -> ComplexPoint:
    """Evaluate f(z) = (a z + b) / (c z + d) on the extended complex plane.

    ``z`` at infinity maps to ``a / c`` (or stays at infinity when c = 0);
    a vanishing denominator maps to infinity. Denominators smaller than
    1e-12 in magnitude are treated as the infinity case, the continuous
    limit of the formula.
    """
    if z.at_infinity:
        if abs(m.c) <= _DENOM_EPS:
            return ComplexPoint(0.0, 0.0, True)
        w = m.a / m.c
        return ComplexPoint(w.real, w.imag)
    den = m.c * z.z + m.d
    if abs(den) < _DENOM_EPS:
        return ComplexPoint(0.0, 0.0, True)
    w = (m.a * z.z + m.b) / den
    return ComplexPoint(w.real, w.imag)


def transform_index_map(x: IndexMap, m: MobiusMatrix) -> IndexMap:
    """Push every entry of an index map through the full sphere chain.

    Each (theta, phi) goes sphere -> complex plane -> f(z) -> sphere ->
    (theta', phi'), with outputs normalized to the standard ranges.

    The complex-plane leg is computed in homogeneous coordinates (z1, z2)
    with z = z1 / z2: the two-chart split below keeps both components finite
    and well scaled at the poles, where the plain quotient x/(1 - z)
    overflows, and it removes every infinity special case (the pole is just
    z2 = 0). The induced map is identical to the scalar chain.
    """
    sx, sy, sz = sphere_from_angles(x.theta, x.phi)
    south = sz < 0.0
    # (x + iy)/(1 - z) == (1 + z)/(x - iy) on the unit sphere; pick per point
    # the representation whose components stay O(1).
    z1 = np.where(south, sx + 1j * sy, 1.0 + sz)
    z2 = np.where(south, 1.0 - sz, sx - 1j * sy)
    w1 = m.a * z1 + m.b * z2
    w2 = m.c * z1 + m.d * z2
    n1 = w1.real * w1.real + w1.imag * w1.imag
    n2 = w2.real * w2.real + w2.imag * w2.imag
    total = n1 + n2
    cross = w1 * np.conj(w2)
    tx = 2.0 * cross.real / total
    ty = 2.0 * cross.imag / total
    tz = (n1 - n2) / total
    theta, phi = angles_from_sphere(tx, ty, tz)
    return IndexMap(np.stack([theta, phi], axis=-1))


def _proportional(m1: MobiusMatrix, m2: MobiusMatrix, tol: float = 1e-9) -> bool:
    """True when m1 == lambda * m2 for some nonzero complex lambda."""
    v1 = np.array([m1.a, m1.b, m1.c, m1.d])
    v2 = np.array([m2.a, m2.b, m2.c, m2.d])
    k = int(np.argmax(np.abs(v2)))
    if abs(v2[k]) == 0.0:
        return False
    lam = v1[k] / v2[k]
    if abs(lam) == 0.0:
        return False
    scale = max(np.max(np.abs(v1)), abs(lam) * np.max(np.abs(v2)))
    return bool(np.max(np.abs(v1 - lam * v2)) <= tol * max(scale, 1.0))


def matrices_equivalent(m1: MobiusMatrix, m2: MobiusMatrix, tol: float = 1e-9) -> bool:
    """True when the two matrices induce the same map (equal up to scale)."""
    return _proportional(m1, m2, tol)


def apply_complex(m: MobiusMatrix, z: complex) -> complex:
    """Plain-complex convenience wrapper around :func:`apply` (finite points)."""
    out = apply(m, ComplexPoint(z.real, z.imag))
    if out.at_infinity:
        return complex(math.inf, math.inf)
    return complex(out.re, out.im)
