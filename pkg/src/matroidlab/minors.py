"""Minor testing: a generic exhaustive engine and a graph fast path.

Generic engine.  Every minor of M can be written as M / C \\ D with C
independent and D coindependent, so N is a minor iff for some kept set K
(|K| = |E(N)|) and some independent C outside K with |C| = r(M) - r(N) and
r(K | C) = r(M), the restriction of M / C to K is isomorphic to N.  For a
fixed K all such C are handled at once: their minor rank tables are
gathered in one array, deduplicated, filtered by a rank-profile invariant,
and only survivors reach the isomorphism test.  Isomorphism verdicts are
memoised by rank table per target N.

Graph fast path.  For graphic M and a 3-connected simple graph H, M(H) is
a minor of M(G) iff H is a graph minor of G (a 3-connected graph is
determined by its cycle matroid), and the latter is decided by a search
over edge contractions followed by a subgraph-monomorphism test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism as nxiso

from .bits import deposit_indices, from_indices, popcount_array
from .connectivity import three_connected
from .core import BasisMatroid, CapExceeded, DualMatroid, Matroid
from .graphic import Graph, GraphicMatroid
from .isomorphism import check_isomorphism, is_isomorphic

GENERIC_MINOR_CAP = 14
GRAPH_MINOR_VERTEX_CAP = 12


@dataclass(frozen=True)
class MinorWitness:
    delete: int
    contract: int
    iso: dict = field(hash=False)  # label in M -> label in N

    def minor(self, M: Matroid) -> Matroid:
        out = M.contract(self.contract) if self.contract else M
        if self.delete:
            # positions shift after contraction, so carry the delete set by label
            gone = set(M.names(self.delete))
            out = out.delete(out.mask([lab for lab in out.labels if lab in gone]))
        return out

    def verify(self, M: Matroid, N: Matroid) -> bool:
        if self.delete & self.contract:
            return False
        return check_isomorphism(self.minor(M), N, self.iso)

    def to_json(self, M: Matroid) -> dict:
        return {
            "delete": M.names(self.delete),
            "contract": M.names(self.contract),
            "iso": dict(self.iso),
        }


def _rank_profile(tables: np.ndarray, pc: np.ndarray, r: int) -> np.ndarray:
    """Per row: counts of subsets by (size, rank); an isomorphism invariant."""
    k = int(pc.max()) if len(pc) else 0
    cols = []
    for s in range(k + 1):
        at = pc == s
        sub = tables[:, at]
        for v in range(min(s, r) + 1):
            cols.append((sub == v).sum(axis=1))
    return np.stack(cols, axis=1)


class MinorOracle:
    """Decides "has an N-minor" for many matroids, sharing caches across calls."""

    def __init__(self, N: Matroid, cap: int = GENERIC_MINOR_CAP):
        self.N = N
        self.cap = cap
        self._results: dict[tuple, MinorWitness | None] = {}
        self._iso: dict[bytes, dict | None] = {}
        self._profile = None
        self._graph_target = None
        if isinstance(N, GraphicMatroid) and N.n >= 4 and three_connected(N) and _is_simple_graph(N.graph):
            self._graph_target = N.graph

    # -- public ----------------------------------------------------------------
    def find(self, M: Matroid) -> MinorWitness | None:
        key = _result_key(M)
        if key is not None and key in self._results:
            return self._results[key]
        w = self._find(M)
        if key is not None:
            self._results[key] = w
        return w

    def has(self, M: Matroid) -> bool:
        return self.find(M) is not None

    # -- dispatch ----------------------------------------------------------------
    def _find(self, M: Matroid) -> MinorWitness | None:
        N = self.N
        if N.n > M.n or N.r > M.r or N.n - N.r > M.n - M.r:
            return None
        if M.n > self.cap:
            if self._graph_target is not None and isinstance(M, GraphicMatroid):
                return self._graphic(M)
            if (
                isinstance(M, DualMatroid)
                and isinstance(M.primal, GraphicMatroid)
                and isinstance(N, DualMatroid)
                and isinstance(N.primal, GraphicMatroid)
            ):
                inner = MinorOracle(N.primal, self.cap).find(M.primal)
                if inner is None:
                    return None
                return MinorWitness(inner.contract, inner.delete, inner.iso)
            raise CapExceeded(f"generic minor test is capped at {self.cap} elements (got {M.n})")
        return self._generic(M)

    def _graphic(self, M: GraphicMatroid) -> MinorWitness | None:
        gw = graph_has_minor(M.graph, self._graph_target)
        if gw is None:
            return None
        w = gw.matroid_witness(M, self.N)
        if not w.verify(M, self.N):
            raise AssertionError("graph-minor witness failed to replay as a matroid minor")
        return w

    def _iso_to_target(self, labels: tuple[str, ...], table: np.ndarray) -> dict | None:
        key = table.tobytes()
        if key in self._iso:
            hit = self._iso[key]
        else:
            cand = BasisMatroid.from_table(tuple(str(i) for i in range(len(labels))), table)
            hit = is_isomorphic(cand, self.N)
            self._iso[key] = hit
        if hit is None:
            return None
        return {labels[int(i)]: v for i, v in hit.items()}

    def _generic(self, M: Matroid) -> MinorWitness | None:
        N = self.N
        n, k = M.n, N.n
        c = M.r - N.r
        t = M.table.astype(np.int16)
        pcN = popcount_array(k)
        if self._profile is None:
            self._profile = _rank_profile(N.table[None, :].astype(np.int16), pcN, N.r)[0]
        target_profile = self._profile
        for K_idx in combinations(range(n), k):
            K = from_indices(K_idx)
            rest = [i for i in range(n) if not (K >> i) & 1]
            Cs = []
            for C_idx in combinations(rest, c):
                C = from_indices(C_idx)
                if t[C] == c and t[K | C] == M.r:
                    Cs.append(C)
            if not Cs:
                continue
            depK = deposit_indices(K_idx)
            Carr = np.array(Cs, dtype=np.int64)
            tabs = t[depK[None, :] | Carr[:, None]] - t[Carr][:, None]
            uniq, first = np.unique(tabs, axis=0, return_index=True)
            prof = _rank_profile(uniq, pcN, N.r)
            good = np.nonzero((prof == target_profile).all(axis=1))[0]
            labels = tuple(M.labels[i] for i in K_idx)
            for g in good:
                iso = self._iso_to_target(labels, uniq[g].astype(np.int8))
                if iso is not None:
                    C = int(Carr[first[g]])
                    D = M.full & ~K & ~C
                    return MinorWitness(D, C, iso)
        return None


def _result_key(M: Matroid):
    if M.n <= 16 and M.has_table:
        return ("t", M.labels, M.table.tobytes())
    if isinstance(M, GraphicMatroid):
        return ("g", M.graph.n_vertices, M.graph.edges)
    return None


_ORACLES: dict[int, MinorOracle] = {}


def oracle_for(N: Matroid) -> MinorOracle:
    o = _ORACLES.get(id(N))
    if o is None or o.N is not N:
        o = MinorOracle(N)
        _ORACLES[id(N)] = o
    return o


def has_minor(M: Matroid, N: Matroid, *, cap: int = GENERIC_MINOR_CAP) -> MinorWitness | None:
    if cap != GENERIC_MINOR_CAP:
        return MinorOracle(N, cap).find(M)
    return oracle_for(N).find(M)


def naive_has_minor(M: Matroid, N: Matroid) -> MinorWitness | None:
    """Reference search: try every keep/delete/contract assignment (small M only)."""
    if M.n > 10:
        raise CapExceeded("naive minor search is limited to 10 elements")
    n, k = M.n, N.n
    if k > n:
        return None
    for K_idx in combinations(range(n), k):
        K = from_indices(K_idx)
        rest = [i for i in range(n) if not (K >> i) & 1]
        for choice in product((0, 1), repeat=len(rest)):
            C = sum(1 << e for e, ch in zip(rest, choice) if ch)
            D = sum(1 << e for e, ch in zip(rest, choice) if not ch)
            minor = MinorWitness(D, C, {}).minor(M)
            iso = is_isomorphic(minor, N)
            if iso is not None:
                return MinorWitness(D, C, iso)
    return None


# -- graph minors --------------------------------------------------------------


def _is_simple_graph(g: Graph) -> bool:
    seen = set()
    for u, v, _ in g.edges:
        if u == v or frozenset((u, v)) in seen:
            return False
        seen.add(frozenset((u, v)))
    return True


@dataclass
class GraphMinorWitness:
    """Branch sets: vertex of H -> frozenset of vertices of G."""

    branch_sets: dict
    G: Graph
    H: Graph

    def verify(self) -> bool:
        sets = list(self.branch_sets.values())
        used = set()
        for s in sets:
            if not s or used & s:
                return False
            used |= s
        simple = nx.Graph()
        simple.add_nodes_from(range(self.G.n_vertices))
        simple.add_edges_from((u, v) for u, v, _ in self.G.edges if u != v)
        for s in sets:
            if not nx.is_connected(simple.subgraph(s)):
                return False
        for a, b, _ in self.H.edges:
            A, B = self.branch_sets[a], self.branch_sets[b]
            if not any((u in A and v in B) or (u in B and v in A) for u, v, _ in self.G.edges):
                return False
        return True

    def matroid_witness(self, M: GraphicMatroid, N: GraphicMatroid) -> MinorWitness:
        G, H = self.G, self.H
        contract = 0
        simple_edges = [(u, v, e) for e, (u, v, _) in enumerate(G.edges)]
        for s in self.branch_sets.values():
            sub = nx.Graph()
            sub.add_nodes_from(s)
            for u, v, e in simple_edges:
                if u in s and v in s and u != v and not sub.has_edge(u, v):
                    sub.add_edge(u, v, idx=e)
            for u, v in nx.minimum_spanning_tree(sub).edges():
                contract |= 1 << sub.edges[u, v]["idx"]
        owner = {g: h for h, s in self.branch_sets.items() for g in s}
        keep = 0
        iso = {}
        for a, b, hl in H.edges:
            for u, v, e in simple_edges:
                if {owner.get(u), owner.get(v)} == {a, b} and owner.get(u) is not None:
                    keep |= 1 << e
                    iso[G.edges[e][2]] = hl
                    break
        delete = M.full & ~keep & ~contract
        return MinorWitness(delete, contract, iso)


def graph_has_minor(G: Graph, H: Graph, *, cap: int = GRAPH_MINOR_VERTEX_CAP) -> GraphMinorWitness | None:
    """Search for disjoint connected branch sets of G realizing H."""
    if G.n_vertices > cap:
        raise CapExceeded(f"graph minor search is capped at {cap} vertices (got {G.n_vertices})")
    Hs = nx.Graph()
    Hs.add_nodes_from(range(H.n_vertices))
    Hs.add_edges_from((u, v) for u, v, _ in H.edges if u != v)
    Hs.remove_nodes_from([v for v in list(Hs) if Hs.degree(v) == 0])
    h_nodes = Hs.number_of_nodes()
    h_edges = Hs.number_of_edges()
    h_degrees = sorted((d for _, d in Hs.degree()), reverse=True)

    start: dict[frozenset, set] = {frozenset([v]): set() for v in range(G.n_vertices)}
    for u, v, _ in G.edges:
        if u != v:
            start[frozenset([u])].add(frozenset([v]))
            start[frozenset([v])].add(frozenset([u]))
    # isolated vertices can never help
    start = {v: nb for v, nb in start.items() if nb}

    seen: set[frozenset] = set()

    def edge_count(adj) -> int:
        return sum(len(nb) for nb in adj.values()) // 2

    def try_embed(adj) -> dict | None:
        degs = sorted((len(nb) for nb in adj.values()), reverse=True)
        if len(degs) < h_nodes or any(d < hd for d, hd in zip(degs, h_degrees)):
            return None
        g = nx.Graph()
        for v, nb in adj.items():
            for w in nb:
                g.add_edge(v, w)
        matcher = nxiso.GraphMatcher(g, Hs)
        for mapping in matcher.subgraph_monomorphisms_iter():
            return {h: gv for gv, h in mapping.items()}
        return None

    def contract(adj, a, b):
        merged = a | b
        new = {}
        for v, nb in adj.items():
            if v == a or v == b:
                continue
            nb2 = set(nb)
            if a in nb2 or b in nb2:
                nb2.discard(a)
                nb2.discard(b)
                nb2.add(merged)
            new[v] = nb2
        new[merged] = (adj[a] | adj[b]) - {a, b}
        return new

    def search(adj) -> dict | None:
        key = frozenset(adj)
        if key in seen:
            return None
        seen.add(key)
        if len(adj) < h_nodes or edge_count(adj) < h_edges:
            return None
        found = try_embed(adj)
        if found is not None:
            return found
        if len(adj) == h_nodes:
            return None
        for a in sorted(adj, key=lambda s: min(s)):
            for b in sorted(adj[a], key=lambda s: min(s)):
                if min(a) < min(b):
                    res = search(contract(adj, a, b))
                    if res is not None:
                        return res
        return None

    found = search(start)
    if found is None:
        return None
    return GraphMinorWitness({h: frozenset(s) for h, s in found.items()}, G, H)
