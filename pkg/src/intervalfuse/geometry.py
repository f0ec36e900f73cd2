"""Homeomorphism between the triangle of intervals and the upper half plane.

Valid intervals form the triangle {0 <= lower <= upper <= 1}.  Each
interval maps to a vector (u, v) with v >= 0:

* the direction doubles the angle of the point (lower, 1 - upper), so
  sign(u) equals the sign of the interval's discrimination, and
* the radius is (1 - w) / w for width w, so narrow (confident) evidence
  lands far from the origin and [0, 1] lands exactly on it.

In closed form, with a = lower, b = upper, w = b - a, d = a + b - 1:

    u = (1 - w)/w * d (a + (1-b)) / (a^2 + (1-b)^2)
    v = (1 - w)/w * 2 a (1-b)     / (a^2 + (1-b)^2)

The inverse recovers the interval from the polar form of (u, v): with
r = |z|, t = r / (1 + r) and T = tan(theta/2) computed stably as
sin(theta) / (1 + cos(theta)),

    lower = t / (1 + T),   upper = 1 - t T / (1 + T)

so the recovered width is exactly 1 / (1 + r).  Near theta = pi the
half-angle tangent blows up; there the conversion runs on the mirrored
vector (-u, v) and complements the result, which is exact by the
reflection symmetry of the map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .evidence import EvidenceInterval

__all__ = [
    "HalfPlaneVector",
    "PolarForm",
    "WIDTH_FLOOR",
    "ORIGIN_EPS",
    "to_half_plane",
    "from_half_plane",
    "polar_of_interval",
    "polar_of_vector",
]

#: Point intervals would sit at infinite radius; widths below this floor are
#: widened to it before mapping, which keeps the map total while letting
#: near-certain evidence dominate any sum it takes part in.
WIDTH_FLOOR = 1e-9

#: Vectors shorter than this are indistinguishable from the origin; their
#: angle is numerically meaningless and they invert to the vacuous interval.
ORIGIN_EPS = 1e-12

# Below this direction cosine the half-angle tangent loses precision, so the
# inverse map switches to the mirrored evaluation.
_REFLECT_COS = -0.9


@dataclass(frozen=True, slots=True)
class HalfPlaneVector:
    """Image of an interval in the upper half plane (v >= 0)."""

    u: float
    v: float

    def __post_init__(self) -> None:
        u, v = float(self.u), float(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if not (math.isfinite(u) and math.isfinite(v)):
            raise ValueError(f"half-plane vector must be finite, got ({u!r}, {v!r})")
        if v < 0.0:
            raise ValueError(f"half-plane vector must have v >= 0, got v = {v!r}")

    def __add__(self, other: "HalfPlaneVector") -> "HalfPlaneVector":
        return HalfPlaneVector(self.u + other.u, self.v + other.v)

    @property
    def norm(self) -> float:
        return math.hypot(self.u, self.v)


@dataclass(frozen=True, slots=True)
class PolarForm:
    """Polar coordinates of a half-plane vector: radius and angle in [0, pi]."""

    r: float
    theta: float


def _check_floor(width_floor: float) -> None:
    if not (0.0 < width_floor < 1.0):
        raise ValueError(f"width floor must lie in (0, 1), got {width_floor!r}")


def _forward(a: float, b: float, width_floor: float) -> tuple[float, float]:
    """Map interval endpoints to (u, v).  Pure float kernel."""
    w = b - a
    if w >= 1.0:  # only [0, 1]; its image is the origin exactly
        return (0.0, 0.0)
    if w < width_floor:
        w = width_floor
    r = (1.0 - w) / w
    x = a
    y = 1.0 - b
    n = x * x + y * y
    d = a + b - 1.0
    return (r * ((d * (x + y)) / n), r * ((2.0 * x * y) / n))


def _inverse_direct(u: float, v: float, r: float) -> tuple[float, float]:
    c = u / r
    s = v / r
    t = r / (1.0 + r)
    half_tan = s / (1.0 + c)
    lo = t / (1.0 + half_tan)
    hi = 1.0 - t * half_tan / (1.0 + half_tan)
    return (lo, hi)


def _inverse(u: float, v: float) -> tuple[float, float]:
    """Map (u, v) back to interval endpoints.  Pure float kernel."""
    r = math.hypot(u, v)
    if r < ORIGIN_EPS:
        return (0.0, 1.0)
    if u / r < _REFLECT_COS:
        lo, hi = _inverse_direct(-u, v, r)
        return (1.0 - hi, 1.0 - lo)
    lo, hi = _inverse_direct(u, v, r)
    if hi < lo:  # guard against half-ulp inversion at extreme radii
        hi = lo
    return (lo, hi)


def to_half_plane(
    e: EvidenceInterval, *, width_floor: float = WIDTH_FLOOR
) -> HalfPlaneVector:
    """Image of an interval in the upper half plane.

    Total on the whole triangle: [0, 1] maps to the origin and point
    intervals are first widened to ``width_floor``.
    """
    _check_floor(width_floor)
    u, v = _forward(e.lower, e.upper, width_floor)
    return HalfPlaneVector(u, v)


def from_half_plane(z: HalfPlaneVector | tuple[float, float]) -> EvidenceInterval:
    """Interval whose image is ``z``; rejects v < 0 and non-finite input.

    Vectors within ORIGIN_EPS of the origin return the vacuous interval.
    """
    if isinstance(z, HalfPlaneVector):
        u, v = z.u, z.v
    else:
        u, v = float(z[0]), float(z[1])
        if not (math.isfinite(u) and math.isfinite(v)):
            raise ValueError(f"half-plane vector must be finite, got ({u!r}, {v!r})")
        if v < 0.0:
            raise ValueError(f"half-plane vector must have v >= 0, got v = {v!r}")
    lo, hi = _inverse(u, v)
    return EvidenceInterval(lo, hi)


def polar_of_interval(
    e: EvidenceInterval, *, width_floor: float = WIDTH_FLOOR
) -> PolarForm:
    """Polar form of an interval's image: r = (1 - w)/w and the doubled
    angle of (lower, 1 - upper).  The vacuous interval has r = 0 and its
    angle is fixed at 0 by convention."""
    w = e.upper - e.lower
    if w >= 1.0:
        return PolarForm(0.0, 0.0)
    if w < width_floor:
        w = width_floor
    return PolarForm((1.0 - w) / w, 2.0 * math.atan2(1.0 - e.upper, e.lower))


def polar_of_vector(z: HalfPlaneVector) -> PolarForm:
    """Polar form of a half-plane vector; theta in [0, pi] since v >= 0."""
    return PolarForm(math.hypot(z.u, z.v), math.atan2(z.v, z.u))
