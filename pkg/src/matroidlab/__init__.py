"""Exhaustive tools for small matroids: connectivity, structures, minors."""

from .connectivity import (
    Separation,
    VerticalPartition,
    bixby_check,
    decompose_2_separation,
    find_minimal_partition,
    is_3_connected,
    lam,
    local_connectivity,
    vertical_3_partitions,
)
from .constructions import (
    complete,
    fig1_graph,
    fig2_graph,
    graphic,
    k5_minus_e,
    parallel_connection,
    theta,
    theta_double,
    two_sum,
    uniform,
    wheel,
)
from .core import BasisMatroid, Matroid, MatroidError, closure, co, cocircuits, circuits, dual, si
from .graphic import Graph, GraphicMatroid
from .isomorphism import is_isomorphic
from .minors import graph_has_minor, has_minor
from .structures import fans, seg_coseg_pairs, segments, spores, triads, triangles
from .theorem import classify_dual, classify_main, classify_thm1, sweep_catalogue

__version__ = "0.1.0"

__all__ = [
    "BasisMatroid",
    "Graph",
    "GraphicMatroid",
    "Matroid",
    "MatroidError",
    "Separation",
    "VerticalPartition",
    "bixby_check",
    "circuits",
    "classify_dual",
    "classify_main",
    "classify_thm1",
    "closure",
    "co",
    "cocircuits",
    "complete",
    "decompose_2_separation",
    "dual",
    "fans",
    "fig1_graph",
    "fig2_graph",
    "find_minimal_partition",
    "graph_has_minor",
    "graphic",
    "has_minor",
    "is_3_connected",
    "is_isomorphic",
    "k5_minus_e",
    "lam",
    "local_connectivity",
    "parallel_connection",
    "seg_coseg_pairs",
    "segments",
    "si",
    "spores",
    "sweep_catalogue",
    "theta",
    "theta_double",
    "triads",
    "triangles",
    "two_sum",
    "uniform",
    "vertical_3_partitions",
    "wheel",
]
