"""Builders for the concrete matroids used throughout the package."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Sequence

import numpy as np

from .bits import full_mask, iter_bits, popcount_array
from .core import (
    TABLE_CAP,
    BasisMatroid,
    Matroid,
    MatroidError,
    circuits,
    coloops,
    loops,
)
from .graphic import Graph, GraphicMatroid, complete_graph, parse_graph, wheel_graph


class BadParams(MatroidError):
    pass


class TooLarge(MatroidError):
    pass


class BasepointDegenerate(MatroidError):
    pass


class DegenerateRealization(MatroidError):
    pass


def uniform(r: int, n: int, labels: Sequence[str] | None = None) -> BasisMatroid:
    if not 0 <= r <= n <= TABLE_CAP:
        raise BadParams(f"need 0 <= r <= n <= {TABLE_CAP}, got r={r}, n={n}")
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    table = np.minimum(popcount_array(n), r)
    return BasisMatroid.from_table(labels, table)


def graphic(graph: Graph) -> GraphicMatroid:
    return GraphicMatroid(graph)


def wheel(k: int) -> GraphicMatroid:
    return GraphicMatroid(wheel_graph(k))


def complete(k: int) -> GraphicMatroid:
    return GraphicMatroid(complete_graph(k))


# K5 minus the edge {4,5}; vertices 1..5 stored as 0..4.
_K5E_EDGES = (
    (0, 3, "a"),  # 14
    (1, 3, "b"),  # 24
    (1, 4, "c"),  # 25
    (0, 4, "d"),  # 15
    (0, 1, "12"),
    (0, 2, "13"),
    (1, 2, "23"),
    (2, 3, "34"),
    (2, 4, "35"),
)


def k5_minus_e_graph() -> Graph:
    return Graph(5, _K5E_EDGES, ("1", "2", "3", "4", "5"))


def k5_minus_e() -> GraphicMatroid:
    """M(K5 minus an edge) with the 4-cycle {a, b, c, d} named as in the standard picture."""
    return GraphicMatroid(k5_minus_e_graph())


def _fixture_text(name: str) -> str:
    return resources.files("matroidlab").joinpath("data").joinpath(name).read_text(encoding="utf-8")


FIG1_VERTEX_NAMES = tuple("abcdefghijk")


def fig1_graph(text: str | None = None) -> Graph:
    """The 11-vertex, 24-edge graph with the fan at vertex a (shipped fixture)."""
    g = parse_graph(text if text is not None else _fixture_text("fig1.txt"))
    return Graph(g.n_vertices, g.edges, FIG1_VERTEX_NAMES[: g.n_vertices])


def fig2_graph() -> Graph:
    g = parse_graph(_fixture_text("fig2.txt"))
    return Graph(g.n_vertices, g.edges, ("1", "2", "3", "4", "5"))


# -- parallel connection and 2-sum -------------------------------------------------


def _direct_circuits(parts: list[tuple[Matroid, list[int]]]) -> list[int]:
    out = []
    for M, where in parts:
        for C in circuits(M):
            out.append(sum(1 << where[e] for e in iter_bits(C)))
    return out


def parallel_connection(M1: Matroid, M2: Matroid, p1: int | str, p2: int | str) -> BasisMatroid:
    """P(M1, M2) glued at p1 ~ p2; the basepoint keeps M1's label.

    Ground set order: the elements of M1, then those of M2 other than p2.
    """
    p1 = M1.index(p1)
    p2 = M2.index(p2)
    n = M1.n + M2.n - 1
    if n > TABLE_CAP:
        raise TooLarge(f"parallel connection would have {n} > {TABLE_CAP} elements")
    others2 = [j for j in range(M2.n) if j != p2]
    labels = list(M1.labels) + [M2.labels[j] for j in others2]
    if len(set(labels)) != n:
        raise BadParams("the two ground sets may only share the basepoint")
    where1 = list(range(M1.n))
    where2 = [0] * M2.n
    for k, j in enumerate(others2):
        where2[j] = M1.n + k
    where2[p2] = p1

    loop1 = (loops(M1) >> p1) & 1
    loop2 = (loops(M2) >> p2) & 1
    if loop1:
        family = _direct_circuits([(M1, where1)])
        if M2.n > 1:
            family += _direct_circuits([(M2.contract(1 << p2), [where2[j] for j in others2])])
    elif loop2:
        family = _direct_circuits([(M2, where2)])
        if M1.n > 1:
            family += _direct_circuits([(M1.contract(1 << p1), [where1[i] for i in range(M1.n) if i != p1])])
    else:
        c1 = [sum(1 << where1[e] for e in iter_bits(C)) for C in circuits(M1)]
        c2 = [sum(1 << where2[e] for e in iter_bits(C)) for C in circuits(M2)]
        pbit = 1 << p1
        glued = [(a | b) & ~pbit for a in c1 if a & pbit for b in c2 if b & pbit]
        family = c1 + c2 + glued
    return BasisMatroid.from_circuits(labels, family)


def two_sum(M1: Matroid, M2: Matroid, p1: int | str, p2: int | str) -> BasisMatroid:
    p1 = M1.index(p1)
    p2 = M2.index(p2)
    for M, p in ((M1, p1), (M2, p2)):
        if ((loops(M) | coloops(M)) >> p) & 1:
            raise BasepointDegenerate(f"basepoint {M.labels[p]} is a loop or coloop")
    P = parallel_connection(M1, M2, p1, p2)
    return P.delete(1 << p1)


# -- the theta family --------------------------------------------------------------


def _int_det(rows: list[list[int]]) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    m = [row[:] for row in rows]
    k = len(m)
    sign = 1
    prev = 1
    for i in range(k):
        if m[i][i] == 0:
            swap = next((j for j in range(i + 1, k) if m[j][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for j in range(i + 1, k):
            for c in range(i + 1, k):
                m[j][c] = (m[j][c] * m[i][i] - m[j][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[k - 1][k - 1]


def column_matroid(vectors: Sequence[Sequence[int | Fraction]], labels: Sequence[str]) -> BasisMatroid:
    """Matroid of rational column vectors (all of the same length)."""
    cols = []
    for v in vectors:
        den = math.lcm(*(Fraction(x).denominator for x in v))
        cols.append([int(Fraction(x) * den) for x in v])
    n = len(cols)
    dim = len(cols[0]) if cols else 0
    rank = _rational_rank(cols)
    if rank == 0:
        return BasisMatroid(labels, [0], validate=False)
    # project to a rank-sized coordinate system: pick independent rows
    rows = _independent_rows(cols, dim, rank)
    proj = [[c[i] for i in rows] for c in cols]
    bases = [sum(1 << i for i in S) for S in combinations(range(n), rank) if _int_det([proj[i] for i in S]) != 0]
    return BasisMatroid(labels, bases, validate=False)


def _rational_rank(cols: list[list[int]]) -> int:
    m = [[Fraction(x) for x in c] for c in cols]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _independent_rows(cols: list[list[int]], dim: int, rank: int) -> list[int]:
    rows: list[int] = []
    for i in range(dim):
        trial = rows + [i]
        if _rational_rank([[c[j] for c in cols] for j in trial]) == len(trial):
            rows = trial
        if len(rows) == rank:
            break
    return rows


def theta_labels(r: int) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(1, r + 1)) + tuple(f"b{i}" for i in range(1, r + 1))


def _theta_draw(r: int, rng: random.Random) -> tuple[list[list[Fraction]], BasisMatroid] | None:
    p = [rng.randint(-13, 13) for _ in range(r)]
    q = [rng.choice([k for k in range(-13, 14) if k != 0]) for _ in range(r)]
    a = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    b = []
    for i in range(r):
        t = Fraction(p[i], q[i])
        b.append([Fraction(p[j]) - t * q[j] for j in range(r)])
    # each b_i must vanish exactly in coordinate i
    for i in range(r):
        if any((b[i][j] == 0) != (j == i) for j in range(r)):
            return None
    M = column_matroid(a + b, theta_labels(r))
    if not _theta_structure_ok(M, r):
        return None
    return a + b, M


def _theta_structure_ok(M: Matroid, r: int) -> bool:
    A = full_mask(r)
    B = A << r
    if M.r != r or M.rank(A) != r or M.rank(B) != 2:
        return False
    for i in range(r):
        for j in range(i + 1, r):
            if M.rank((1 << (r + i)) | (1 << (r + j))) != 2:
                return False
        if M.rank((A & ~(1 << i)) | (1 << (r + i))) != r - 1:
            return False
    return True


def theta(r: int, seed: int = 0, *, with_vectors: bool = False):
    """Rank-r matroid on a basis A plus r collinear points b_i with b_i in cl(A - a_i).

    A realization is drawn over the rationals; it is accepted once it passes
    the structural checks and agrees (up to isomorphism) with an independent
    second draw, which certifies that no accidental dependency crept in.
    """
    from .isomorphism import is_isomorphic

    if not 3 <= r <= 6:
        raise BadParams(f"theta needs 3 <= r <= 6, got {r}")
    rng = random.Random(seed)
    for _ in range(20):
        first = _theta_draw(r, rng)
        second = _theta_draw(r, rng)
        if first is None or second is None:
            continue
        if is_isomorphic(first[1], second[1]) is None:
            continue
        return (first[1], first[0]) if with_vectors else first[1]
    raise DegenerateRealization(f"no generic realization of theta({r}) found from seed {seed}")


def flats_mask(M: Matroid) -> np.ndarray:
    """Boolean array over all subsets: is the subset a flat?"""
    n = M.n
    t = M.table
    flat = np.ones(1 << n, dtype=bool)
    idx = np.arange(1 << n)
    for e in range(n):
        outside = ((idx >> e) & 1) == 0
        grows = t[idx | (1 << e)] > t
        flat &= ~outside | grows
    return flat


def rank_table_from_flats(n: int, is_flat: np.ndarray) -> np.ndarray:
    """Rank function of the lattice of flats given by `is_flat`.

    A flat's rank is the length of a longest chain of flats below it; any
    other set has the rank of the smallest flat containing it.
    """
    flats = sorted((int(F) for F in np.nonzero(is_flat)[0]), key=lambda F: (F.bit_count(), F))
    height: dict[int, int] = {}
    for F in flats:
        below = [height[G] for G in height if G & ~F == 0 and G != F]
        height[F] = 1 + max(below) if below else 0
    arr = np.full(1 << n, 127, dtype=np.int16)
    for F, h in height.items():
        arr[F] = h
    for e in range(n):  # min over supersets
        v = arr.reshape(-1, 2, 1 << e)
        np.minimum(v[:, 0, :], v[:, 1, :], out=v[:, 0, :])
    return arr.astype(np.int8)


def theta_double_labels(r: int) -> tuple[str, ...]:
    return (
        tuple(f"a{i}" for i in range(1, r + 1))
        + tuple(f"a{i}'" for i in range(1, r + 1))
        + tuple(f"b{i}" for i in range(1, r + 1))
    )


def theta_double(r: int, seed: int = 0, *, validate: bool = True) -> BasisMatroid:
    """Generalized parallel connection of theta(r) with a copy along B.

    Ground set order: a1..ar, a1'..ar', b1..br.  Built from the flats rule:
    F is a flat iff both F & (A | B) and F & (A' | B) are flats of theta(r).
    """
    if not 3 <= r <= 4:
        raise BadParams(f"theta_double needs 3 <= r <= 4, got {r}")
    T = theta(r, seed)
    tflat = flats_mask(T)
    n = 3 * r
    idx = np.arange(1 << n, dtype=np.int64)
    low = (1 << r) - 1
    bpart = (idx >> (2 * r)) << r
    first = (idx & low) | bpart
    second = ((idx >> r) & low) | bpart
    is_flat = tflat[first] & tflat[second]
    table = rank_table_from_flats(n, is_flat)
    labels = theta_double_labels(r)
    M = BasisMatroid.from_table(labels, table)
    if validate:
        # round-trip through the validating constructor (basis exchange)
        M = BasisMatroid(labels, M.bases, validate=True)
    return M


def theta_double_circuit(r: int) -> int:
    """C = (A - a1) | (A' - a1') in the ground-set order of theta_double."""
    low = (1 << r) - 1
    return (low & ~1) | ((low & ~1) << r)



# -- random representable matroids ---------------------------------------------------


def _rank_mod_p(vectors: list[list[int]], p: int) -> int:
    rows = [[x % p for x in v] for v in vectors]
    rank = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def gf_column_matroid(columns: Sequence[Sequence[int]], p: int, labels: Sequence[str] | None = None) -> BasisMatroid:
    """Column matroid of integer vectors read modulo the prime p."""
    n = len(columns)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    cols = [list(c) for c in columns]
    r = _rank_mod_p(cols, p)
    if r == 0:
        return BasisMatroid(labels, [0], validate=False)
    bases = [sum(1 << i for i in S) for S in combinations(range(n), r) if _rank_mod_p([cols[i] for i in S], p) == r]
    return BasisMatroid(labels, bases, validate=False)


def random_gf_matroid(n: int, r: int, p: int, rng: random.Random, labels: Sequence[str] | None = None) -> BasisMatroid:
    cols = [[rng.randrange(p) for _ in range(r)] for _ in range(n)]
    return gf_column_matroid(cols, p, labels)
