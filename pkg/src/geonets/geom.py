"""Planar geometric primitives.

Points, unit vectors, angles (degrees, unsigned), exact quarter-turn
rotation, and robust segment-intersection classification. Everything is
an immutable value; everything else in the package builds on this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

# Two points closer than this coincide. Net coordinates are O(1)-O(5),
# so this sits far above double-precision noise and far below the
# smallest feature separation we care about.
COINCIDENCE_EPS = 1e-9

# Parametric band around t=0 and t=1 inside which a hit on a segment
# counts as endpoint contact rather than an interior point.
PARAM_EPS = 1e-9

# Relative cross-product threshold below which two directions are parallel.
_PARALLEL_EPS = 1e-12

Vec = Tuple[float, float]


class DegenerateSegment(ValueError):
    """Two supposedly distinct points coincide within the degeneracy epsilon."""


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")


ORIGIN = Point(0.0, 0.0)


def distance(p: Point, q: Point) -> float:
    return math.hypot(q.x - p.x, q.y - p.y)


@dataclass(frozen=True)
class UnitVec:
    dx: float
    dy: float

    def __post_init__(self) -> None:
        if abs(math.hypot(self.dx, self.dy) - 1.0) > 1e-12:
            raise ValueError(f"({self.dx}, {self.dy}) is not a unit vector")


def unit_vector(p: Point, q: Point) -> UnitVec:
    """Unit direction from p toward q."""
    d = distance(p, q)
    if d <= COINCIDENCE_EPS:
        raise DegenerateSegment(f"points coincide: ({p.x}, {p.y}) and ({q.x}, {q.y})")
    return UnitVec((q.x - p.x) / d, (q.y - p.y) / d)


def angle_at(b: Point, a: Point, c: Point) -> float:
    """Unsigned angle at b from a to c, in degrees, in [0, 180].

    Computed from atan2(|cross|, dot) of the two unit directions, which
    stays accurate near 0 and 180 degrees where arccos loses precision.
    """
    u = unit_vector(b, a)
    v = unit_vector(b, c)
    cross = u.dx * v.dy - u.dy * v.dx
    dot = u.dx * v.dx + u.dy * v.dy
    return math.degrees(math.atan2(abs(cross), dot))


def rotate(p: Point, quarter_turns: int) -> Point:
    """Rotate p about the origin by quarter_turns * 90 degrees.

    Pure coordinate swap/negation, no trigonometry, so four turns are the
    identity bit for bit.
    """
    k = quarter_turns % 4
    if k == 0:
        return p
    if k == 1:
        return Point(-p.y, p.x)
    if k == 2:
        return Point(-p.x, -p.y)
    return Point(p.y, -p.x)


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self) -> None:
        if distance(self.p, self.q) <= COINCIDENCE_EPS:
            raise DegenerateSegment(
                f"degenerate segment at ({self.p.x}, {self.p.y})"
            )

    def length(self) -> float:
        return distance(self.p, self.q)


# --- intersection classification -------------------------------------------
#
# Exactly one variant applies to any pair of non-degenerate segments and the
# classification is symmetric in the argument order.

@dataclass(frozen=True)
class Disjoint:
    pass


@dataclass(frozen=True)
class AtSharedEndpoint:
    point: Point


@dataclass(frozen=True)
class ProperCrossing:
    point: Point


@dataclass(frozen=True)
class EndpointOnInterior:
    point: Point


@dataclass(frozen=True)
class CollinearOverlap:
    overlap: Segment


IntersectionKind = Union[
    Disjoint, AtSharedEndpoint, ProperCrossing, EndpointOnInterior, CollinearOverlap
]


def _point_on(seg: Segment, t: float) -> Point:
    return Point(
        seg.p.x + t * (seg.q.x - seg.p.x),
        seg.p.y + t * (seg.q.y - seg.p.y),
    )


def _snap_endpoint(seg: Segment, t: float) -> Point:
    return seg.p if t <= 0.5 else seg.q


def _in_endpoint_band(t: float) -> bool:
    return t <= PARAM_EPS or t >= 1.0 - PARAM_EPS


def intersect(s1: Segment, s2: Segment) -> IntersectionKind:
    """Classify how two segments meet.

    Returns one of Disjoint, AtSharedEndpoint, ProperCrossing,
    EndpointOnInterior, or CollinearOverlap. A ProperCrossing point lies
    strictly inside both segments (parametric coordinate in
    [PARAM_EPS, 1 - PARAM_EPS]); contact inside the band is reported as
    endpoint contact instead, so planarization cannot fabricate
    near-endpoint crossings.
    """
    p, q = s1.p, s1.q
    r, s = s2.p, s2.q
    d1x, d1y = q.x - p.x, q.y - p.y
    d2x, d2y = s.x - r.x, s.y - r.y
    len1 = math.hypot(d1x, d1y)
    len2 = math.hypot(d2x, d2y)
    den = d1x * d2y - d1y * d2x

    if abs(den) <= _PARALLEL_EPS * len1 * len2:
        # Parallel. Collinear only if both endpoints of s2 sit on line(s1).
        off_r = abs(d1x * (r.y - p.y) - d1y * (r.x - p.x)) / len1
        off_s = abs(d1x * (s.y - p.y) - d1y * (s.x - p.x)) / len1
        if off_r > COINCIDENCE_EPS or off_s > COINCIDENCE_EPS:
            return Disjoint()
        inv = 1.0 / (len1 * len1)
        t_r = (d1x * (r.x - p.x) + d1y * (r.y - p.y)) * inv
        t_s = (d1x * (s.x - p.x) + d1y * (s.y - p.y)) * inv
        lo, hi = (t_r, t_s) if t_r <= t_s else (t_s, t_r)
        lo = max(lo, 0.0)
        hi = min(hi, 1.0)
        if (hi - lo) * len1 > COINCIDENCE_EPS:
            return CollinearOverlap(Segment(_point_on(s1, lo), _point_on(s1, hi)))
        if hi - lo >= -PARAM_EPS:
            # Single-point contact; for collinear segments that can only
            # happen endpoint to endpoint.
            return AtSharedEndpoint(_snap_endpoint(s1, 0.5 * (lo + hi)))
        return Disjoint()

    # Solve p + t*d1 = r + u*d2.
    ex, ey = r.x - p.x, r.y - p.y
    t = (ex * d2y - ey * d2x) / den
    u = (ex * d1y - ey * d1x) / den
    if t < -PARAM_EPS or t > 1.0 + PARAM_EPS or u < -PARAM_EPS or u > 1.0 + PARAM_EPS:
        return Disjoint()
    t_end = _in_endpoint_band(t)
    u_end = _in_endpoint_band(u)
    if t_end and u_end:
        return AtSharedEndpoint(_snap_endpoint(s1, t))
    if t_end:
        return EndpointOnInterior(_snap_endpoint(s1, t))
    if u_end:
        return EndpointOnInterior(_snap_endpoint(s2, u))
    return ProperCrossing(_point_on(s1, t))
