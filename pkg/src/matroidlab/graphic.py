"""Graphs and their cycle matroids.

:class:`GraphicMatroid` answers rank queries with a union-find over the
chosen edges, so it works beyond the 16-element limit of the dense rank
table.  Deletion and contraction act on the graph itself, which keeps every
minor of a graphic matroid graphic and lets the minor and connectivity code
use graph algorithms when the table is out of reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx
import numpy as np

from .bits import iter_bits
from .core import CapExceeded, DualMatroid, EmptyGroundSet, Matroid, ParseError, ValidationError


@dataclass(frozen=True)
class Graph:
    """A multigraph on vertices ``0..n_vertices-1`` with uniquely labelled edges."""

    n_vertices: int
    edges: tuple[tuple[int, int, str], ...]
    vertex_names: tuple[str, ...] | None = None

    def __post_init__(self):
        labels = [lab for _, _, lab in self.edges]
        if len(set(labels)) != len(labels):
            raise ValidationError("edge labels must be distinct")
        for u, v, lab in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValidationError(f"edge {lab} has an endpoint outside 0..{self.n_vertices - 1}")
        if self.vertex_names is not None and len(self.vertex_names) != self.n_vertices:
            raise ValidationError("vertex_names must name every vertex")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], n_vertices: int | None = None, *, allow_loops: bool = False) -> "Graph":
        """Edges are ``(u, v)`` or ``(u, v, label)``; labels default to ``"uv"``."""
        out = []
        for item in edges:
            if len(item) == 3:
                u, v, lab = item
            else:
                u, v = item
                lab = f"{u}{v}" if max(u, v) < 10 else f"{u}-{v}"
            if u == v and not allow_loops:
                raise ValidationError(f"self-loop {lab} not allowed")
            out.append((int(u), int(v), str(lab)))
        if n_vertices is None:
            n_vertices = 1 + max((max(u, v) for u, v, _ in out), default=-1)
        return cls(n_vertices, tuple(out))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for _, _, lab in self.edges)

    def vertex_name(self, v: int) -> str:
        return self.vertex_names[v] if self.vertex_names else str(v)

    def to_networkx(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(range(self.n_vertices))
        for u, v, lab in self.edges:
            G.add_edge(u, v, key=lab, label=lab)
        return G

    def delete_edges(self, labels: Iterable[str]) -> "Graph":
        drop = set(labels)
        return Graph(self.n_vertices, tuple(e for e in self.edges if e[2] not in drop), self.vertex_names)


def complete_graph(k: int) -> Graph:
    return Graph.from_edges([(u, v) for u in range(k) for v in range(u + 1, k)], k)


def wheel_graph(k: int) -> Graph:
    """The wheel with k spokes: hub 0, rim 1..k."""
    edges = [(0, i, f"s{i}") for i in range(1, k + 1)]
    edges += [(i, i % k + 1, f"r{i}") for i in range(1, k + 1)]
    return Graph.from_edges(edges, k + 1)


# graph-backed rank tables stay affordable a little beyond the generic cap
GRAPHIC_TABLE_CAP = 24


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


class GraphicMatroid(Matroid):
    """The cycle matroid M(G), evaluated on the graph."""

    def __init__(self, graph: Graph):
        if not graph.edges:
            raise EmptyGroundSet("graph has no edges")
        self.graph = graph
        self.labels = graph.labels
        self._ends = [(u, v) for u, v, _ in graph.edges]
        self._rank_cache: dict[int, int] = {}

    def rank(self, X: int) -> int:
        hit = self._rank_cache.get(X)
        if hit is not None:
            return hit
        uf = _UnionFind(self.graph.n_vertices)
        r = 0
        for e in iter_bits(X):
            u, v = self._ends[e]
            if uf.union(u, v):
                r += 1
        if len(self._rank_cache) < 200_000:
            self._rank_cache[X] = r
        return r

    @property
    def has_table(self) -> bool:
        return self.n <= GRAPHIC_TABLE_CAP

    @cached_property
    def table(self) -> np.ndarray:
        n = self.n
        if n > GRAPHIC_TABLE_CAP:
            raise CapExceeded(f"graphic rank table needs n <= {GRAPHIC_TABLE_CAP}, got {n}")
        low = min(n, 12)
        comp, rk_low = self._component_table(low)
        if low == n:
            rk_low.setflags(write=False)
            return rk_low
        # extend by the remaining edges depth-first, one merge per subset
        table = np.empty(1 << n, dtype=np.int8)
        stride = 1 << low

        def visit(H: int, lab: np.ndarray, rk: np.ndarray, start: int) -> None:
            table[H * stride : (H + 1) * stride] = rk
            for j in range(start, n - low):
                u, v = self._ends[low + j]
                cu = lab[:, u]
                cv = lab[:, v]
                merged = np.where(lab == cv[:, None], cu[:, None], lab)
                visit(H | (1 << j), merged, rk + (cu != cv), j + 1)

        visit(0, comp, rk_low, 0)
        table.setflags(write=False)
        return table

    def _component_table(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        """Component labels and ranks for every subset of the first m edges."""
        V = self.graph.n_vertices
        comp = np.zeros((1 << m, V), dtype=np.int16)
        comp[0] = np.arange(V)
        rk = np.zeros(1 << m, dtype=np.int8)
        for e in range(m):
            u, v = self._ends[e]
            lo = 1 << e
            prev = comp[:lo]
            cu = prev[:, u]
            cv = prev[:, v]
            comp[lo : 2 * lo] = np.where(prev == cv[:, None], cu[:, None], prev)
            rk[lo : 2 * lo] = rk[:lo] + (cu != cv)
        return comp, rk

    def delete(self, D: int) -> "GraphicMatroid":
        if D & self.full == self.full:
            raise EmptyGroundSet("deleting every edge")
        drop = {self.labels[e] for e in iter_bits(D)}
        return GraphicMatroid(self.graph.delete_edges(drop))

    def contract(self, C: int) -> "GraphicMatroid":
        if C & self.full == self.full:
            raise EmptyGroundSet("contracting every edge")
        uf = _UnionFind(self.graph.n_vertices)
        for e in iter_bits(C):
            uf.union(*self._ends[e])
        roots = sorted({uf.find(v) for v in range(self.graph.n_vertices)})
        new_index = {rt: i for i, rt in enumerate(roots)}
        names = None
        if self.graph.vertex_names:
            groups: dict[int, list[str]] = {}
            for v in range(self.graph.n_vertices):
                groups.setdefault(uf.find(v), []).append(self.graph.vertex_names[v])
            names = tuple("".join(groups[rt]) for rt in roots)
        edges = tuple(
            (new_index[uf.find(u)], new_index[uf.find(v)], lab)
            for e, (u, v, lab) in enumerate(self.graph.edges)
            if not (C >> e) & 1
        )
        return GraphicMatroid(Graph(len(roots), edges, names))

    def dual(self) -> Matroid:
        return DualMatroid(self)


def graphic(graph: Graph) -> GraphicMatroid:
    return GraphicMatroid(graph)


def graph_is_3_connected_matroid(graph: Graph) -> tuple[bool, int | None]:
    """Decide 3-connectivity of M(G) on the graph.

    For at least four edges, M(G) is 3-connected exactly when G has no loops
    or parallel edges and G minus its isolated vertices is a 3-connected
    graph.  On failure a side X of a 1- or 2-separation is returned.
    """
    M = GraphicMatroid(graph)
    n = M.n
    if n < 4:
        raise ValueError("use the generic check below four elements")
    seen: dict[frozenset, int] = {}
    for e, (u, v, _) in enumerate(graph.edges):
        if u == v:
            return False, 1 << e
        key = frozenset((u, v))
        if key in seen:
            return False, (1 << e) | (1 << seen[key])
        seen[key] = e
    G = nx.Graph()
    G.add_edges_from((u, v) for u, v, _ in graph.edges)
    if G.number_of_nodes() >= 4 and nx.is_connected(G) and nx.node_connectivity(G) >= 3:
        return True, None
    return False, _graph_separation_side(M, G)


def _graph_separation_side(M: GraphicMatroid, G: nx.Graph) -> int:
    ends = M._ends

    def edges_touching(vertices: set, inner: set) -> int:
        X = 0
        for e, (u, v) in enumerate(ends):
            if u in vertices or v in vertices:
                if {u, v} <= vertices | inner:
                    X |= 1 << e
        return X

    def lam(X: int) -> int:
        return M.rank(X) + M.rank(M.full & ~X) - M.r

    candidates: list[int] = []
    comps = list(nx.connected_components(G))
    if len(comps) > 1:
        candidates.append(edges_touching(set(comps[0]), set()))
    else:
        for cut in nx.articulation_points(G):
            H = G.copy()
            H.remove_node(cut)
            part = next(iter(nx.connected_components(H)))
            candidates.append(edges_touching(set(part), {cut}))
        if not candidates:
            for cut in nx.all_node_cuts(G, k=2) if G.number_of_nodes() > 3 else []:
                H = G.copy()
                H.remove_nodes_from(cut)
                for part in nx.connected_components(H):
                    candidates.append(edges_touching(set(part), set(cut)))
                break
        if not candidates:
            # fewer than four vertices: some pair of edges must share both ends
            candidates.append(M.full & -M.full)
    for X in candidates:
        Y = M.full & ~X
        k = min(2, X.bit_count(), Y.bit_count())
        if k >= 1 and lam(X) < k:
            return X
    raise AssertionError("graph certificate did not yield a matroid separation")


# -- text format ------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``vertices N`` then ``u v label`` lines."""
    n_vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n_vertices is None:
            if len(parts) != 2 or parts[0] != "vertices":
                raise ParseError(f"line {lineno}: expected header 'vertices N'")
            try:
                n_vertices = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: vertex count must be an integer") from None
            continue
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'u v label'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: endpoints must be integers") from None
        edges.append((u, v, parts[2]))
    if n_vertices is None:
        raise ParseError("missing 'vertices N' header")
    return Graph(n_vertices, tuple(edges))


def format_graph(graph: Graph) -> str:
    lines = [f"vertices {graph.n_vertices}"]
    lines += [f"{u} {v} {lab}" for u, v, lab in graph.edges]
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def cycle_edge_sets(graph: Graph) -> list[int]:
    """Edge sets of all simple cycles (loops and parallel pairs included)."""
    labels = graph.labels
    index = {lab: i for i, lab in enumerate(labels)}
    out = set()
    for u, v, lab in graph.edges:
        if u == v:
            out.add(1 << index[lab])
    simple = nx.Graph()
    multi: dict[frozenset, list[str]] = {}
    for u, v, lab in graph.edges:
        if u != v:
            multi.setdefault(frozenset((u, v)), []).append(lab)
            simple.add_edge(u, v)
    for labs in multi.values():
        for i in range(len(labs)):
            for j in range(i + 1, len(labs)):
                out.add((1 << index[labs[i]]) | (1 << index[labs[j]]))
    for cyc in nx.simple_cycles(simple.to_directed()):
        if len(cyc) < 3:
            continue
        pairs = [frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))]
        masks = [0]
        for p in pairs:
            masks = [m | (1 << index[lab]) for m in masks for lab in multi[p]]
        out.update(masks)
    return sorted(out, key=lambda x: (x.bit_count(), x))

