"""Instance catalogues for the sweep and the property suites."""

from __future__ import annotations

import logging

import networkx as nx

from .connectivity import three_connected
from .constructions import complete, theta_double, uniform, wheel
from .core import Matroid
from .graphic import Graph, GraphicMatroid

log = logging.getLogger(__name__)


def atlas_graphs(max_vertices: int = 7, max_edges: int = 11) -> list[tuple[str, Graph]]:
    """3-connected simple graphs from the networkx atlas (one per isomorphism class)."""
    out = []
    for idx, g in enumerate(nx.graph_atlas_g()):
        if g.number_of_nodes() < 4 or g.number_of_nodes() > max_vertices or g.number_of_edges() > max_edges:
            continue
        if not nx.is_connected(g) or nx.node_connectivity(g) < 3:
            continue
        edges = [(u, v, f"e{k}") for k, (u, v) in enumerate(sorted(g.edges()))]
        out.append((f"atlas{idx}", Graph(g.number_of_nodes(), edges)))
    return out


def default_catalogue(seed: int = 0, *, include_skipped: bool = False) -> list[tuple[str, Matroid]]:
    """Uniform U_{r,n} (r <= 4, n <= 8), atlas graphs, theta_double(3) and its dual, wheels W3..W5.

    Members that are not 3-connected are logged and dropped (or kept, with
    `include_skipped`, so the sweep records them as skipped).
    """
    cands: list[tuple[str, Matroid]] = []
    for n in range(1, 9):
        for r in range(0, min(4, n) + 1):
            cands.append((f"U{r},{n}", uniform(r, n)))
    for name, g in atlas_graphs():
        cands.append((name, GraphicMatroid(g)))
    td = theta_double(3, seed)
    cands.append(("theta_double3", td))
    cands.append(("theta_double3*", td.dual()))
    for k in (3, 4, 5):
        cands.append((f"W{k}", wheel(k)))
    if include_skipped:
        return cands
    out = []
    for name, M in cands:
        if three_connected(M):
            out.append((name, M))
        else:
            log.info("catalogue: skipping %s (not 3-connected)", name)
    return out


def default_targets() -> list[tuple[str, Matroid]]:
    return [("U2,4", uniform(2, 4)), ("M(K4)", complete(4))]
