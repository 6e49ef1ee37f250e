"""Total length, its gradient, and length-decreasing relaxation.

The total edge length of a net, viewed as a function of the balanced
vertex positions with pins held fixed, has gradient equal to minus the
balance residual at each balanced vertex. Relaxation runs gradient
descent with a backtracking line search, so critical points are exactly
the balanced configurations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from . import _kernels
from .geom import COINCIDENCE_EPS, Point, Vec, distance
from .net import Net, Vertex, VertexKind

_ARMIJO_C = 1e-4


class VertexCollision(RuntimeError):
    """Relaxation drove two vertices together; the net degenerated."""


@dataclass(frozen=True)
class RelaxResult:
    net: Net
    final_residual: float
    iterations: int
    converged: bool
    length_trace: Tuple[float, ...]


def _arrays(net: Net) -> Tuple[List[str], np.ndarray, np.ndarray, np.ndarray]:
    ids = [v.id for v in net.vertices]
    index = {vid: k for k, vid in enumerate(ids)}
    pos = np.array([[v.pos.x, v.pos.y] for v in net.vertices], dtype=np.float64)
    if net.edges:
        edges = np.array([[index[u], index[v]] for u, v in net.edges], dtype=np.int64)
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    free = np.array(
        [k for k, v in enumerate(net.vertices) if v.kind is VertexKind.BALANCED],
        dtype=np.int64,
    )
    return ids, pos, edges, free


def total_length(net: Net) -> float:
    _, pos, edges, _ = _arrays(net)
    return float(_kernels.net_length(pos, edges))


def length_gradient(net: Net) -> Dict[str, Vec]:
    """Gradient of total_length with respect to each balanced vertex.

    Equals the negated balance residual; isolated balanced vertices get a
    zero gradient.
    """
    ids, pos, edges, free = _arrays(net)
    res = _kernels.residuals(pos, edges)
    return {ids[k]: (-float(res[k, 0]), -float(res[k, 1])) for k in free}


def moved(net: Net, vid: str, pos: Point) -> Net:
    """Copy of net with one vertex repositioned."""
    net.vertex(vid)
    verts = [
        Vertex(v.id, pos if v.id == vid else v.pos, v.kind, v.label)
        for v in net.vertices
    ]
    return Net(verts, net.edges)


def relax(
    net: Net,
    *,
    step: float = 0.1,
    tol: float = 1e-9,
    max_iter: int = 100_000,
) -> RelaxResult:
    """Gradient descent on total length over the balanced vertices.

    Each iteration moves all balanced vertices along their residuals,
    backtracking from the base step until the Armijo sufficient-decrease
    test holds. Stops when the largest residual is at most tol
    (converged), when no acceptable step exists (stalled), or after
    max_iter accepted steps. The length trace over accepted iterates is
    non-increasing. Raises VertexCollision if the descent path collapses
    an edge.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")

    ids, pos, edges, free = _arrays(net)
    out_pos, accepted, converged, trace, collided = _kernels.descend(
        pos, free, edges, float(step), float(tol), _ARMIJO_C, int(max_iter), COINCIDENCE_EPS
    )
    if collided:
        raise VertexCollision(
            f"an edge collapsed below {COINCIDENCE_EPS} after {accepted} steps"
        )

    verts = [
        Vertex(v.id, Point(float(out_pos[k, 0]), float(out_pos[k, 1])), v.kind, v.label)
        for k, v in enumerate(net.vertices)
    ]
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if distance(verts[i].pos, verts[j].pos) <= COINCIDENCE_EPS:
                raise VertexCollision(
                    f"vertices {verts[i].id} and {verts[j].id} collided"
                )
    result_net = Net(verts, net.edges)

    res = _kernels.residuals(out_pos, edges)
    final = 0.0
    for k in free:
        final = max(final, float(np.hypot(res[k, 0], res[k, 1])))
    return RelaxResult(
        net=result_net,
        final_residual=final,
        iterations=int(accepted),
        converged=bool(converged),
        length_trace=tuple(float(t) for t in trace),
    )
