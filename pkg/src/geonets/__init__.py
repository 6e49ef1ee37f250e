"""Planar geodesic nets: construction, verification, relaxation, and
irreducibility certificates."""

from .geom import (
    COINCIDENCE_EPS,
    AtSharedEndpoint,
    CollinearOverlap,
    DegenerateSegment,
    Disjoint,
    EndpointOnInterior,
    IntersectionKind,
    Point,
    ProperCrossing,
    Segment,
    UnitVec,
    angle_at,
    distance,
    intersect,
    rotate,
    unit_vector,
)
from .net import (
    DEFAULT_TOL,
    Edge,
    InvariantViolation,
    IsolatedVertex,
    Net,
    OverlayEdges,
    UnknownVertex,
    VerifyReport,
    Vertex,
    VertexKind,
    balance_residual,
    edge_key,
    edge_subnet,
    is_symmetric_under_quarter_turn,
    planarize,
    relabeled,
    verify,
)
from .construct import (
    BOUNDARY_ANGLE_DEG,
    BOUNDARY_RADIUS,
    DEFAULT_OVERLAY_TERMINALS,
    DegenerateTriangle,
    INNER_RADIUS,
    Triangle,
    WideAngleTriangle,
    build_double_tripod,
    build_fermat_tripod,
    build_octagon,
    build_overlay_net,
    build_paper_net,
    fermat_point,
    place_boundary,
)
from .solver import (
    RelaxResult,
    VertexCollision,
    length_gradient,
    moved,
    relax,
    total_length,
)
from .irreducible import (
    DegreeTooLarge,
    Irreducible,
    Reducible,
    SearchBudgetExceeded,
    SubnetCertificate,
    TraceStep,
    balanced_edge_subsets,
    find_proper_subnet,
    is_irreducible,
)
from .docio import FORMAT_VERSION, ParseError, load, parse, save, serialize
from .render import render_svg

__version__ = "0.1.0"

__all__ = [
    "AtSharedEndpoint",
    "BOUNDARY_ANGLE_DEG",
    "BOUNDARY_RADIUS",
    "COINCIDENCE_EPS",
    "CollinearOverlap",
    "DEFAULT_OVERLAY_TERMINALS",
    "DEFAULT_TOL",
    "DegenerateSegment",
    "DegenerateTriangle",
    "DegreeTooLarge",
    "Disjoint",
    "Edge",
    "EndpointOnInterior",
    "FORMAT_VERSION",
    "INNER_RADIUS",
    "IntersectionKind",
    "InvariantViolation",
    "Irreducible",
    "IsolatedVertex",
    "Net",
    "OverlayEdges",
    "ParseError",
    "Point",
    "ProperCrossing",
    "Reducible",
    "RelaxResult",
    "SearchBudgetExceeded",
    "Segment",
    "SubnetCertificate",
    "TraceStep",
    "Triangle",
    "UnitVec",
    "UnknownVertex",
    "VertexCollision",
    "VerifyReport",
    "Vertex",
    "VertexKind",
    "WideAngleTriangle",
    "angle_at",
    "balance_residual",
    "balanced_edge_subsets",
    "build_double_tripod",
    "build_fermat_tripod",
    "build_octagon",
    "build_overlay_net",
    "build_paper_net",
    "distance",
    "edge_key",
    "edge_subnet",
    "fermat_point",
    "find_proper_subnet",
    "intersect",
    "is_irreducible",
    "is_symmetric_under_quarter_turn",
    "length_gradient",
    "load",
    "moved",
    "parse",
    "place_boundary",
    "planarize",
    "relabeled",
    "relax",
    "render_svg",
    "rotate",
    "save",
    "serialize",
    "total_length",
    "unit_vector",
    "verify",
]
