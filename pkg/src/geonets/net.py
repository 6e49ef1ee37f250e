"""Geodesic-net data model, balance checking, verification, planarization.

A net is an embedded straight-line graph whose vertices are either
unbalanced (pinned boundary points) or balanced (free points where the
unit vectors along incident edges must sum to zero).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geom import (
    COINCIDENCE_EPS,
    PARAM_EPS,
    CollinearOverlap,
    EndpointOnInterior,
    IntersectionKind,
    Point,
    ProperCrossing,
    Segment,
    Vec,
    distance,
    intersect,
    rotate,
    unit_vector,
)

Edge = Tuple[str, str]

# Default balance tolerance. Coordinates are O(1) and double precision
# contributes ~1e-15 per unit-vector term; 1e-9 leaves headroom for
# accumulated trigonometric rounding.
DEFAULT_TOL = 1e-9


class InvariantViolation(ValueError):
    """A net-level structural invariant is broken."""


class UnknownVertex(KeyError):
    """Vertex id not present in the net."""


class IsolatedVertex(ValueError):
    """Vertex has no incident edges where at least one is required."""


class OverlayEdges(ValueError):
    """Two edges overlap collinearly (edge multiplicity would exceed 1)."""


class VertexKind(enum.Enum):
    UNBALANCED = "unbalanced"
    BALANCED = "balanced"


@dataclass(frozen=True)
class Vertex:
    id: str
    pos: Point
    kind: VertexKind
    label: Optional[str] = None


def edge_key(u: str, v: str) -> Edge:
    """Canonical unordered edge representation."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Net:
    """Immutable net value. Vertices are stored sorted by id, edges sorted
    as canonical (min, max) pairs; two nets with the same content compare
    equal regardless of construction order."""

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Sequence[str]]):
        verts = tuple(sorted(vertices, key=lambda v: v.id))
        ids = [v.id for v in verts]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise InvariantViolation(f"duplicate vertex id: {dup[0]}")
        id_set = set(ids)
        canon: List[Edge] = []
        for e in edges:
            u, v = e
            if u == v:
                raise InvariantViolation(f"self-loop edge at {u}")
            if u not in id_set or v not in id_set:
                missing = u if u not in id_set else v
                raise InvariantViolation(f"edge endpoint {missing} is not a vertex")
            canon.append(edge_key(u, v))
        if len(set(canon)) != len(canon):
            dup_e = sorted({e for e in canon if canon.count(e) > 1})
            raise InvariantViolation(f"duplicate edge: {dup_e[0]}")
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if distance(a.pos, b.pos) <= COINCIDENCE_EPS:
                    raise InvariantViolation(
                        f"vertices {a.id} and {b.id} coincide within {COINCIDENCE_EPS}"
                    )
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @cached_property
    def by_id(self) -> Dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def adjacency(self) -> Dict[str, Tuple[str, ...]]:
        adj: Dict[str, List[str]] = {v.id: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {k: tuple(sorted(vs)) for k, vs in adj.items()}

    def vertex(self, vid: str) -> Vertex:
        try:
            return self.by_id[vid]
        except KeyError:
            raise UnknownVertex(vid) from None

    def degree(self, vid: str) -> int:
        self.vertex(vid)
        return len(self.adjacency[vid])

    def incident_edges(self, vid: str) -> Tuple[Edge, ...]:
        self.vertex(vid)
        return tuple(edge_key(vid, w) for w in self.adjacency[vid])

    def segment(self, e: Edge) -> Segment:
        return Segment(self.vertex(e[0]).pos, self.vertex(e[1]).pos)


def balance_residual(net: Net, vid: str) -> Vec:
    """Sum of unit vectors along all edges leaving vid.

    Zero (within tolerance) exactly at balanced vertices of a valid net.
    """
    v = net.vertex(vid)
    nbrs = net.adjacency[vid]
    if not nbrs:
        raise IsolatedVertex(f"vertex {vid} has no incident edges")
    sx = sy = 0.0
    for w in nbrs:
        u = unit_vector(v.pos, net.by_id[w].pos)
        sx += u.dx
        sy += u.dy
    return (sx, sy)


def _connected(net: Net) -> bool:
    if len(net.vertices) <= 1:
        return True
    start = net.vertices[0].id
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for w in net.adjacency[cur]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(net.vertices)


@dataclass
class VerifyReport:
    residuals: Dict[str, float]
    max_residual: float
    degree_violations: List[Tuple[str, int]]
    overlay_findings: List[Tuple[Edge, Edge, IntersectionKind]]
    unplanarized_crossings: List[Tuple[Edge, Edge, Point]]
    unbalanced_to_unbalanced_edges: List[Edge]
    connected: bool
    passed: bool = field(default=False)


def verify(net: Net, tol: float = DEFAULT_TOL, *, min_balanced_degree: int = 3) -> VerifyReport:
    """Full validity check of a net.

    Reports per-balanced-vertex residual magnitudes, balanced vertices of
    degree below min_balanced_degree, collinear edge overlays, interior
    crossings that were never planarized, edges joining two unbalanced
    vertices, and connectivity. passed is true iff everything is clean and
    max_residual <= tol.

    min_balanced_degree is 3 for top-level nets; subnet re-verification
    relaxes it to 1 because collinear pass-through vertices of degree 2
    are legitimate there (their residual check still applies).
    """
    residuals: Dict[str, float] = {}
    degree_violations: List[Tuple[str, int]] = []
    for v in net.vertices:
        if v.kind is not VertexKind.BALANCED:
            continue
        deg = len(net.adjacency[v.id])
        if deg < min_balanced_degree:
            degree_violations.append((v.id, deg))
        if deg >= 1:
            rx, ry = balance_residual(net, v.id)
            residuals[v.id] = math.hypot(rx, ry)
    max_residual = max(residuals.values(), default=0.0)

    overlay_findings: List[Tuple[Edge, Edge, IntersectionKind]] = []
    unplanarized: List[Tuple[Edge, Edge, Point]] = []
    for i, e1 in enumerate(net.edges):
        s1 = net.segment(e1)
        for e2 in net.edges[i + 1:]:
            kind = intersect(s1, net.segment(e2))
            if isinstance(kind, CollinearOverlap):
                overlay_findings.append((e1, e2, kind))
            elif isinstance(kind, (ProperCrossing, EndpointOnInterior)):
                unplanarized.append((e1, e2, kind.point))

    unb_unb = [
        e
        for e in net.edges
        if net.by_id[e[0]].kind is VertexKind.UNBALANCED
        and net.by_id[e[1]].kind is VertexKind.UNBALANCED
    ]

    connected = _connected(net)
    passed = (
        max_residual <= tol
        and not degree_violations
        and not overlay_findings
        and not unplanarized
        and not unb_unb
        and connected
    )
    return VerifyReport(
        residuals=residuals,
        max_residual=max_residual,
        degree_violations=degree_violations,
        overlay_findings=overlay_findings,
        unplanarized_crossings=unplanarized,
        unbalanced_to_unbalanced_edges=unb_unb,
        connected=connected,
        passed=passed,
    )


def _interior_param(seg: Segment, pt: Point) -> Optional[float]:
    """Parametric coordinate of pt along seg if strictly interior, else None."""
    dx, dy = seg.q.x - seg.p.x, seg.q.y - seg.p.y
    ll = dx * dx + dy * dy
    t = ((pt.x - seg.p.x) * dx + (pt.y - seg.p.y) * dy) / ll
    if PARAM_EPS < t < 1.0 - PARAM_EPS:
        return t
    return None


def planarize(net: Net, eps: float = COINCIDENCE_EPS) -> Net:
    """Subdivide edges so they meet only at vertices.

    Every proper crossing and every endpoint-on-interior contact becomes a
    vertex: new crossing points are minted as balanced vertices (merged
    when within eps of each other), while a contact at an existing vertex
    splits the crossed edge at that vertex, keeping its kind. Edge pairs
    are processed in lexicographic id-pair order and new ids minted
    deterministically, so the output is canonical. Collinear overlaps are
    structural errors, not crossings.

    A net with no interior intersections is returned unchanged.
    """
    # cluster -> (representative point, existing vertex id or None)
    cluster_pts: List[Point] = []
    cluster_vid: List[Optional[str]] = []
    edge_cuts: Dict[Edge, Dict[int, float]] = {}

    def register(pt: Point) -> int:
        for vtx in net.vertices:
            if distance(vtx.pos, pt) <= eps:
                pos = vtx.pos
                for ci, cp in enumerate(cluster_pts):
                    if cluster_vid[ci] == vtx.id:
                        return ci
                cluster_pts.append(pos)
                cluster_vid.append(vtx.id)
                return len(cluster_pts) - 1
        for ci, cp in enumerate(cluster_pts):
            if cluster_vid[ci] is None and distance(cp, pt) <= eps:
                return ci
        cluster_pts.append(pt)
        cluster_vid.append(None)
        return len(cluster_pts) - 1

    def cut(e: Edge, ci: int) -> None:
        seg = net.segment(e)
        t = _interior_param(seg, cluster_pts[ci])
        if t is not None:
            edge_cuts.setdefault(e, {}).setdefault(ci, t)

    for i, e1 in enumerate(net.edges):
        s1 = net.segment(e1)
        for e2 in net.edges[i + 1:]:
            kind = intersect(s1, net.segment(e2))
            if isinstance(kind, CollinearOverlap):
                raise OverlayEdges(f"edges {e1} and {e2} overlap collinearly")
            if isinstance(kind, (ProperCrossing, EndpointOnInterior)):
                ci = register(kind.point)
                cut(e1, ci)
                cut(e2, ci)

    if not edge_cuts:
        return net

    existing = {v.id for v in net.vertices}
    minted: Dict[int, str] = {}
    new_vertices = list(net.vertices)
    serial = 1
    for ci in range(len(cluster_pts)):
        if cluster_vid[ci] is not None:
            minted[ci] = cluster_vid[ci]
            continue
        while f"x{serial}" in existing:
            serial += 1
        vid = f"x{serial}"
        existing.add(vid)
        minted[ci] = vid
        new_vertices.append(Vertex(vid, cluster_pts[ci], VertexKind.BALANCED))

    new_edges: List[Edge] = []
    for e in net.edges:
        cuts = edge_cuts.get(e)
        if not cuts:
            new_edges.append(e)
            continue
        chain = sorted(cuts.items(), key=lambda item: item[1])
        ids = [e[0]] + [minted[ci] for ci, _ in chain] + [e[1]]
        for a, b in zip(ids, ids[1:]):
            new_edges.append(edge_key(a, b))
    return Net(new_vertices, new_edges)


def is_symmetric_under_quarter_turn(net: Net, tol: float = DEFAULT_TOL) -> bool:
    """True iff a 90-degree rotation about the origin maps the net onto
    itself up to relabeling (positions within tol, kinds and adjacency
    preserved)."""
    mapping: Dict[str, str] = {}
    for v in net.vertices:
        target = rotate(v.pos, 1)
        hits = [w for w in net.vertices if distance(w.pos, target) <= tol]
        if len(hits) != 1 or hits[0].kind is not v.kind:
            return False
        mapping[v.id] = hits[0].id
    if len(set(mapping.values())) != len(net.vertices):
        return False
    mapped = {edge_key(mapping[u], mapping[v]) for u, v in net.edges}
    return mapped == set(net.edges)


def relabeled(net: Net, mapping: Dict[str, str]) -> Net:
    """Rename vertices through mapping (ids not mentioned stay put).

    The mapping is applied atomically, so permutations are fine.
    """
    def rename(vid: str) -> str:
        return mapping.get(vid, vid)

    verts = [Vertex(rename(v.id), v.pos, v.kind, v.label) for v in net.vertices]
    return Net(verts, [(rename(u), rename(v)) for u, v in net.edges])


def edge_subnet(net: Net, edges: Iterable[Edge]) -> Net:
    """Materialize an edge subset as a net; vertices incident to no chosen
    edge are dropped."""
    chosen = {edge_key(*e) for e in edges}
    for e in chosen:
        if e not in set(net.edges):
            raise InvariantViolation(f"edge {e} is not in the parent net")
    keep = {u for e in chosen for u in e}
    verts = [v for v in net.vertices if v.id in keep]
    return Net(verts, sorted(chosen))


def total_edge_length(net: Net) -> float:
    return sum(net.segment(e).length() for e in net.edges)
