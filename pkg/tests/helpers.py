"""Shared test utilities: random nets, brute-force oracles, tree covers."""

from __future__ import annotations

import itertools
import math
import random
from typing import Dict, FrozenSet, List, Sequence, Set, Tuple

from geonets import (
    Edge,
    Net,
    Point,
    Vertex,
    VertexKind,
    edge_key,
    unit_vector,
)


def random_net(rng: random.Random) -> Net:
    """A small random connected net on jittered grid points.

    Vertex kinds are random, so the net is generally not balanced; it is
    still a legal Net (distinct positions, connected, no self loops) and
    that is all the gradient checks need.
    """
    n = rng.randint(4, 9)
    cols = 3
    vertices = []
    for i in range(n):
        gx, gy = i % cols, i // cols
        x = 2.0 * gx + rng.uniform(-0.6, 0.6)
        y = 2.0 * gy + rng.uniform(-0.6, 0.6)
        kind = VertexKind.BALANCED if rng.random() < 0.6 else VertexKind.UNBALANCED
        vertices.append(Vertex(f"v{i}", Point(x, y), kind))
    # random spanning tree, then a few extra edges
    edges: Set[Edge] = set()
    order = list(range(n))
    rng.shuffle(order)
    for a, b in zip(order, order[1:]):
        edges.add(edge_key(f"v{a}", f"v{b}"))
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(range(n), 2)
        edges.add(edge_key(f"v{a}", f"v{b}"))
    return Net(vertices, sorted(edges))


def subset_is_balanced(net: Net, edges: Sequence[Edge], tol: float = 1e-9) -> bool:
    """Brute-force subnet predicate: every balanced vertex touched by the
    subset has incident unit vectors summing to zero within tol."""
    incident: Dict[str, List[Edge]] = {}
    for e in edges:
        incident.setdefault(e[0], []).append(e)
        incident.setdefault(e[1], []).append(e)
    for vid, inc in incident.items():
        v = net.vertex(vid)
        if v.kind is not VertexKind.BALANCED:
            continue
        sx = sy = 0.0
        for a, b in inc:
            other = b if a == vid else a
            u = unit_vector(v.pos, net.vertex(other).pos)
            sx += u.dx
            sy += u.dy
        if math.hypot(sx, sy) > tol:
            return False
    return True


def enumerate_proper_subnets(net: Net, tol: float = 1e-9) -> List[FrozenSet[Edge]]:
    """All proper non-empty edge subsets that satisfy subset_is_balanced."""
    m = len(net.edges)
    assert m <= 16, "exhaustive enumeration only meant for tiny nets"
    found = []
    for r in range(1, m):
        for combo in itertools.combinations(net.edges, r):
            if subset_is_balanced(net, combo, tol):
                found.append(frozenset(combo))
    return found


def brute_force_balanced_subsets(
    net: Net, vertex_id: str, tol: float = 1e-9
) -> List[Tuple[Edge, ...]]:
    """Independent oracle for balanced_edge_subsets: direct iteration over
    all 2^deg subsets in the same canonical order."""
    v = net.vertex(vertex_id)
    inc = sorted(net.incident_edges(vertex_id))
    units = []
    for a, b in inc:
        other = b if a == vertex_id else a
        units.append(unit_vector(v.pos, net.vertex(other).pos))
    out = []
    for mask in range(1 << len(inc)):
        sx = sum(units[i].dx for i in range(len(inc)) if mask & (1 << i))
        sy = sum(units[i].dy for i in range(len(inc)) if mask & (1 << i))
        if math.hypot(sx, sy) <= tol:
            out.append(tuple(inc[i] for i in range(len(inc)) if mask & (1 << i)))
    return out


def edges_on_segment(net: Net, p: Point, q: Point, eps: float = 1e-9) -> FrozenSet[Edge]:
    """All net edges whose endpoints both lie on the closed segment pq."""
    dx, dy = q.x - p.x, q.y - p.y
    ln = math.hypot(dx, dy)

    def on(r: Point) -> bool:
        off = abs(dx * (r.y - p.y) - dy * (r.x - p.x)) / ln
        if off > eps:
            return False
        t = (dx * (r.x - p.x) + dy * (r.y - p.y)) / (ln * ln)
        return -1e-12 <= t <= 1.0 + 1e-12

    keep = []
    for e in net.edges:
        if on(net.vertex(e[0]).pos) and on(net.vertex(e[1]).pos):
            keep.append(e)
    return frozenset(keep)


def overlay_component_trees(net: Net) -> List[FrozenSet[Edge]]:
    """The constituent trees of the overlay net as planarized edge sets.

    Reconstructed from the generator segments: four tripods, two double
    tripods, and the two straight chains between opposite terminals.
    """
    pos = {v.id: v.pos for v in net.vertices}
    generators = [
        [("B1", "A"), ("B1", "C"), ("B1", "X")],
        [("B3", "A"), ("B3", "C"), ("B3", "Z")],
        [("Y1", "A"), ("Y1", "X"), ("Y1", "Z")],
        [("Y3", "C"), ("Y3", "X"), ("Y3", "Z")],
        [("B2", "A"), ("B2", "C"), ("B2", "Y2"), ("Y2", "X"), ("Y2", "Z")],
        [("L", "A"), ("L", "X"), ("L", "N"), ("N", "C"), ("N", "Z")],
        [("A", "Z")],
        [("C", "X")],
    ]
    trees = []
    for segs in generators:
        cover: Set[Edge] = set()
        for u, v in segs:
            cover |= edges_on_segment(net, pos[u], pos[v])
        trees.append(frozenset(cover))
    return trees
