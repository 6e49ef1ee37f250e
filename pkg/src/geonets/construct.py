"""Constructions of specific balanced nets.

Provides Fermat points of triangles, single- and double-tripod Steiner
trees, a reducible overlay net assembled from seven trees on four shared
terminals, and a square-symmetric net with 16 balanced vertices that is
irreducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .geom import Point, angle_at, distance, rotate
from .net import Net, Vertex, VertexKind, planarize, relabeled

# Square-symmetric 16-vertex construction. The inner square of balanced
# vertices a1..a4 sits on the unit circle; the octagon vertices b1..b4 on
# the diagonals make 150 degree angles at a_i and 120 degree angles at
# b_i. Boundary pins c1..c4 sit on the axes at the unique radius where
# the five unit vectors at each a_i cancel: arccos(1/2 - cos 75deg).
INNER_RADIUS = 1.0
OCTAGON_ANGLE_AT_A_DEG = 150.0
OCTAGON_ANGLE_AT_B_DEG = 120.0
_B_DIAG = math.cos(math.radians(15.0)) / (
    math.cos(math.radians(15.0)) + math.sin(math.radians(15.0))
)
BOUNDARY_ANGLE_RAD = math.acos(0.5 - math.cos(math.radians(75.0)))
BOUNDARY_ANGLE_DEG = math.degrees(BOUNDARY_ANGLE_RAD)
BOUNDARY_RADIUS = math.tan(BOUNDARY_ANGLE_RAD)

_AREA_EPS = 1e-12
_WIDE_ANGLE_MARGIN_DEG = 1e-9
_WEISZFELD_STEPS = 50
_DOUBLE_TRIPOD_TOL = 1e-14
_DOUBLE_TRIPOD_MAX_SWEEPS = 1000


class DegenerateTriangle(ValueError):
    """Triangle with (near-)collinear corners."""


class WideAngleTriangle(ValueError):
    """Triangle with an angle of 120 degrees or more has no interior
    Fermat point."""


@dataclass(frozen=True)
class Triangle:
    p1: Point
    p2: Point
    p3: Point

    def __post_init__(self) -> None:
        ax, ay = self.p2.x - self.p1.x, self.p2.y - self.p1.y
        bx, by = self.p3.x - self.p1.x, self.p3.y - self.p1.y
        if abs(ax * by - ay * bx) / 2.0 <= _AREA_EPS:
            raise DegenerateTriangle("corner points are (near-)collinear")

    def corners(self) -> Tuple[Point, Point, Point]:
        return (self.p1, self.p2, self.p3)

    def angles(self) -> Tuple[float, float, float]:
        """Interior angles in degrees at p1, p2, p3."""
        a, b, c = self.p1, self.p2, self.p3
        return (angle_at(a, b, c), angle_at(b, a, c), angle_at(c, a, b))


def _equilateral_apex(p: Point, q: Point, away_from: Point) -> Point:
    """Third corner of the equilateral triangle on pq lying on the
    opposite side of pq from away_from."""
    dx, dy = q.x - p.x, q.y - p.y
    side = dx * (away_from.y - p.y) - dy * (away_from.x - p.x)
    s = 1.0 if side > 0.0 else -1.0
    sin_t = -s * (math.sqrt(3.0) / 2.0)
    return Point(p.x + dx * 0.5 - dy * sin_t, p.y + dx * sin_t + dy * 0.5)


def _line_cross(p1: Point, d1: Tuple[float, float], p2: Point, d2: Tuple[float, float]) -> Point:
    den = d1[0] * d2[1] - d1[1] * d2[0]
    t = ((p2.x - p1.x) * d2[1] - (p2.y - p1.y) * d2[0]) / den
    return Point(p1.x + t * d1[0], p1.y + t * d1[1])


def fermat_point(tri: Triangle) -> Point:
    """Point minimizing the sum of distances to the triangle corners.

    Requires every angle below 120 degrees, so the minimizer is the
    interior point seeing all three sides under 120 degrees. Computed in
    closed form by intersecting two corner-to-opposite-apex lines, then
    polished with a few fixed point iterations of the distance-weighted
    average.
    """
    for ang in tri.angles():
        if ang >= OCTAGON_ANGLE_AT_B_DEG - _WIDE_ANGLE_MARGIN_DEG:
            raise WideAngleTriangle(f"angle of {ang:.6f} degrees >= 120")
    a, b, c = tri.corners()
    apex_bc = _equilateral_apex(b, c, a)
    apex_ca = _equilateral_apex(c, a, b)
    f = _line_cross(
        a, (apex_bc.x - a.x, apex_bc.y - a.y), b, (apex_ca.x - b.x, apex_ca.y - b.y)
    )
    scale = max(distance(a, b), distance(b, c), distance(c, a))
    fx, fy = f.x, f.y
    for _ in range(_WEISZFELD_STEPS):
        wsum = nx = ny = 0.0
        stop = False
        for p in (a, b, c):
            d = math.hypot(fx - p.x, fy - p.y)
            if d <= 1e-15 * scale:
                stop = True
                break
            w = 1.0 / d
            wsum += w
            nx += w * p.x
            ny += w * p.y
        if stop:
            break
        gx, gy = nx / wsum, ny / wsum
        moved = math.hypot(gx - fx, gy - fy)
        fx, fy = gx, gy
        if moved <= 1e-15 * scale:
            break
    return Point(fx, fy)


def build_fermat_tripod(tri: Triangle) -> Net:
    """Net with the three corners pinned and one balanced vertex at the
    Fermat point."""
    f = fermat_point(tri)
    corners = tri.corners()
    verts = [Vertex(f"t{i + 1}", p, VertexKind.UNBALANCED) for i, p in enumerate(corners)]
    verts.append(Vertex("f", f, VertexKind.BALANCED))
    return Net(verts, [("f", f"t{i + 1}") for i in range(3)])


def _double_fermat(
    p1: Point, p2: Point, q1: Point, q2: Point
) -> Tuple[Point, Point]:
    """Steiner points (s1, s2) of the two-junction tree joining p1, p2 to
    s1 and q1, q2 to s2 with a bridge s1-s2.

    Alternates exact Fermat solves for each junction holding the other
    fixed; each sweep lowers total length, and the iteration converges to
    the unique locally shortest configuration.
    """
    mid_p = Point((p1.x + p2.x) / 2.0, (p1.y + p2.y) / 2.0)
    s2 = Point((q1.x + q2.x + mid_p.x) / 3.0, (q1.y + q2.y + mid_p.y) / 3.0)
    s1 = fermat_point(Triangle(p1, p2, s2))
    for _ in range(_DOUBLE_TRIPOD_MAX_SWEEPS):
        new_s2 = fermat_point(Triangle(q1, q2, s1))
        new_s1 = fermat_point(Triangle(p1, p2, new_s2))
        moved = max(distance(new_s1, s1), distance(new_s2, s2))
        s1, s2 = new_s1, new_s2
        if moved <= _DOUBLE_TRIPOD_TOL:
            break
    return s1, s2


def build_double_tripod(p1: Point, p2: Point, q1: Point, q2: Point) -> Net:
    """Two-junction Steiner tree on four pins: junction f1 joins p1, p2,
    junction f2 joins q1, q2, with a bridge edge f1-f2."""
    s1, s2 = _double_fermat(p1, p2, q1, q2)
    verts = [
        Vertex("t1", p1, VertexKind.UNBALANCED),
        Vertex("t2", p2, VertexKind.UNBALANCED),
        Vertex("t3", q1, VertexKind.UNBALANCED),
        Vertex("t4", q2, VertexKind.UNBALANCED),
        Vertex("f1", s1, VertexKind.BALANCED),
        Vertex("f2", s2, VertexKind.BALANCED),
    ]
    edges = [("f1", "t1"), ("f1", "t2"), ("f1", "f2"), ("f2", "t3"), ("f2", "t4")]
    return Net(verts, edges)


_SQRT3 = math.sqrt(3.0)

DEFAULT_OVERLAY_TERMINALS: Tuple[Point, Point, Point, Point] = (
    Point(-3.0 * _SQRT3, 12.0),
    Point(3.0 * _SQRT3, 12.0),
    Point(-1.5 * _SQRT3, 1.5),
    Point(1.5 * _SQRT3, 1.5),
)


def build_overlay_net(
    a: Optional[Point] = None,
    c: Optional[Point] = None,
    x: Optional[Point] = None,
    z: Optional[Point] = None,
) -> Net:
    """Reducible example: seven shortest trees on four terminals, overlaid.

    The terminals A, C (top) and X, Z (bottom) are pinned. The trees are
    the four Fermat tripods on three of the four terminals, the two
    double tripods for the pairings {A,C}|{X,Z} and {A,X}|{C,Z}, and the
    pair of straight chains A-Z, C-X. Planarization turns every edge
    crossing into a balanced pass-through vertex.
    """
    ta = a if a is not None else DEFAULT_OVERLAY_TERMINALS[0]
    tc = c if c is not None else DEFAULT_OVERLAY_TERMINALS[1]
    tx = x if x is not None else DEFAULT_OVERLAY_TERMINALS[2]
    tz = z if z is not None else DEFAULT_OVERLAY_TERMINALS[3]

    b1 = fermat_point(Triangle(ta, tc, tx))
    b3 = fermat_point(Triangle(ta, tc, tz))
    y1 = fermat_point(Triangle(tx, tz, ta))
    y3 = fermat_point(Triangle(tx, tz, tc))
    b2, y2 = _double_fermat(ta, tc, tx, tz)
    ell, en = _double_fermat(ta, tx, tc, tz)

    verts = [
        Vertex("A", ta, VertexKind.UNBALANCED),
        Vertex("C", tc, VertexKind.UNBALANCED),
        Vertex("X", tx, VertexKind.UNBALANCED),
        Vertex("Z", tz, VertexKind.UNBALANCED),
        Vertex("B1", b1, VertexKind.BALANCED),
        Vertex("B2", b2, VertexKind.BALANCED),
        Vertex("B3", b3, VertexKind.BALANCED),
        Vertex("Y1", y1, VertexKind.BALANCED),
        Vertex("Y2", y2, VertexKind.BALANCED),
        Vertex("Y3", y3, VertexKind.BALANCED),
        Vertex("L", ell, VertexKind.BALANCED),
        Vertex("N", en, VertexKind.BALANCED),
    ]
    edges = [
        ("B1", "A"), ("B1", "C"), ("B1", "X"),
        ("B3", "A"), ("B3", "C"), ("B3", "Z"),
        ("Y1", "X"), ("Y1", "Z"), ("Y1", "A"),
        ("Y3", "X"), ("Y3", "Z"), ("Y3", "C"),
        ("B2", "A"), ("B2", "C"), ("B2", "Y2"), ("Y2", "X"), ("Y2", "Z"),
        ("L", "A"), ("L", "X"), ("L", "N"), ("N", "C"), ("N", "Z"),
        ("A", "Z"), ("C", "X"),
    ]
    return planarize(Net(verts, edges))


def build_octagon() -> Tuple[List[Point], List[Point]]:
    """Inner octagon corner positions (a1..a4 on the axes, b1..b4 on the
    diagonals)."""
    a1 = Point(INNER_RADIUS, 0.0)
    b1 = Point(INNER_RADIUS * _B_DIAG, INNER_RADIUS * _B_DIAG)
    return (
        [rotate(a1, k) for k in range(4)],
        [rotate(b1, k) for k in range(4)],
    )


def place_boundary() -> List[Point]:
    """Pinned boundary positions c1..c4 on the axes at BOUNDARY_RADIUS."""
    c1 = Point(BOUNDARY_RADIUS, 0.0)
    return [rotate(c1, k) for k in range(4)]


def build_paper_net() -> Net:
    """Square-symmetric irreducible net: 16 balanced vertices, 4 pins.

    The inner octagon a1 b1 a2 b2 a3 b3 a4 b4 is joined to boundary pins
    c1..c4 by the spokes a_i c_i, the crossing chords a_i c_{i+1} and
    a_{i+1} c_i, and a Fermat tripod d_i for each triple
    (b_i, c_i, c_{i+1}). The chord pair and the segment b_i d_i meet in a
    single point; planarization merges that triple crossing into one
    balanced vertex, renamed x_i to match its quadrant.
    """
    a_pts, b_pts = build_octagon()
    c_pts = place_boundary()
    d1 = fermat_point(Triangle(b_pts[0], c_pts[0], c_pts[1]))
    d_pts = [rotate(d1, k) for k in range(4)]

    verts: List[Vertex] = []
    for i in range(4):
        verts.append(Vertex(f"a{i + 1}", a_pts[i], VertexKind.BALANCED))
        verts.append(Vertex(f"b{i + 1}", b_pts[i], VertexKind.BALANCED))
        verts.append(Vertex(f"c{i + 1}", c_pts[i], VertexKind.UNBALANCED))
        verts.append(Vertex(f"d{i + 1}", d_pts[i], VertexKind.BALANCED))

    edges: List[Tuple[str, str]] = []
    for i in range(4):
        j = i % 4 + 1
        k = (i + 1) % 4 + 1
        edges.append((f"a{j}", f"b{j}"))
        edges.append((f"a{k}", f"b{j}"))
        edges.append((f"a{j}", f"c{j}"))
        edges.append((f"a{j}", f"c{k}"))
        edges.append((f"a{k}", f"c{j}"))
        edges.append((f"d{j}", f"b{j}"))
        edges.append((f"d{j}", f"c{j}"))
        edges.append((f"d{j}", f"c{k}"))

    flat = planarize(Net(verts, edges))

    original = {v.id for v in verts}
    mapping = {}
    for v in flat.vertices:
        if v.id in original:
            continue
        theta = math.degrees(math.atan2(v.pos.y, v.pos.x)) % 360.0
        quadrant = round((theta - 45.0) / 90.0) % 4
        mapping[v.id] = f"x{int(quadrant) + 1}"
    return relabeled(flat, mapping)
