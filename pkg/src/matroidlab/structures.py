"""Detectors for triangles, triads, fans, segments, seg-coseg pairs and spores."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .bits import canonical_key, iter_bits, sort_family, subsets_of_size
from .connectivity import low_order_separations
from .core import Matroid, closure, corank, is_circuit, is_cocircuit, loops, parallel_classes


@dataclass(frozen=True)
class Fan:
    x1: int
    x2: int
    x3: int
    x4: int

    @property
    def elements(self) -> tuple[int, int, int, int]:
        return (self.x1, self.x2, self.x3, self.x4)

    def verify(self, M: Matroid) -> bool:
        if len(set(self.elements)) != 4:
            return False
        tri = (1 << self.x1) | (1 << self.x2) | (1 << self.x3)
        triad = (1 << self.x2) | (1 << self.x3) | (1 << self.x4)
        return is_circuit(M, tri) and is_cocircuit(M, triad)

    def names(self, M: Matroid) -> list[str]:
        return [M.labels[e] for e in self.elements]


@dataclass(frozen=True)
class SegCosegPair:
    """Segment L = {x_1..x_t} matched with L* = {y_1..y_t}, in order."""

    xs: tuple[int, ...]
    ys: tuple[int, ...]

    @property
    def L(self) -> int:
        return sum(1 << e for e in self.xs)

    @property
    def Lstar(self) -> int:
        return sum(1 << e for e in self.ys)

    @property
    def t(self) -> int:
        return len(self.xs)

    def verify(self, M: Matroid) -> bool:
        if self.t < 3 or len(set(self.ys)) != self.t or self.L & self.Lstar:
            return False
        if not is_segment(M, self.L):
            return False
        cl = closure(M, self.L)
        for x, y in zip(self.xs, self.ys):
            if (cl >> y) & 1 or not is_cocircuit(M, (cl & ~(1 << x)) | (1 << y)):
                return False
        return True

    def describe(self, M: Matroid) -> str:
        pairs = ", ".join(f"{M.labels[x]}->{M.labels[y]}" for x, y in zip(self.xs, self.ys))
        return f"L={M.fmt(self.L)} L*={M.fmt(self.Lstar)} [{pairs}]"


@dataclass(frozen=True)
class Spore:
    P: int
    s: int

    def verify(self, M: Matroid) -> bool:
        if (self.P >> self.s) & 1 or self.P == 0:
            return False
        return M.rank(self.P) == 1 and closure(M, self.P) == self.P and is_cocircuit(M, self.P | (1 << self.s))

    def describe(self, M: Matroid) -> str:
        return f"({M.fmt(self.P)}, {M.labels[self.s]})"


# -- small circuits and cocircuits ---------------------------------------------


def triangles(M: Matroid) -> list[int]:
    cached = M.__dict__.get("_triangles")
    if cached is None:
        cached = [T for T in subsets_of_size(M.full, 3) if is_circuit(M, T)]
        cached = sort_family(cached)
        M.__dict__["_triangles"] = cached
    return list(cached)


def _is_triad(M: Matroid, T: int) -> bool:
    if corank(M, T) != 2:
        return False
    return all(corank(M, T & ~(1 << e)) == 2 for e in iter_bits(T))


def triads(M: Matroid) -> list[int]:
    cached = M.__dict__.get("_triads")
    if cached is None:
        cached = sort_family(T for T in subsets_of_size(M.full, 3) if _is_triad(M, T))
        M.__dict__["_triads"] = cached
    return list(cached)


def fans(M: Matroid) -> list[Fan]:
    """Every four-element fan, as an ordered tuple (no symmetry reduction)."""
    tri = triangles(M)
    tds = triads(M)
    out = []
    for T in tri:
        for x1, x2, x3 in permutations(iter_bits(T), 3):
            pair = (1 << x2) | (1 << x3)
            for D in tds:
                if D & pair == pair:
                    x4 = (D & ~pair).bit_length() - 1
                    if x4 != x1:
                        out.append(Fan(x1, x2, x3, x4))
    out = sorted(set(out), key=lambda f: f.elements)
    return out


# -- segments --------------------------------------------------------------------


def is_segment(M: Matroid, L: int) -> bool:
    if L.bit_count() < 3 or M.rank(L) != 2:
        return False
    return all(M.rank((1 << a) | (1 << b)) == 2 for a, b in combinations(iter_bits(L), 2))


def maximal_segments(M: Matroid) -> list[int]:
    cached = M.__dict__.get("_max_segments")
    if cached is not None:
        return list(cached)
    lp = loops(M)
    classes = parallel_classes(M)
    owner = {}
    for c in classes:
        for e in iter_bits(c):
            owner[e] = c
    lines = set()
    for i, a in enumerate(classes):
        for b in classes[i + 1 :]:
            ea = (a & -a).bit_length() - 1
            eb = (b & -b).bit_length() - 1
            lines.add(closure(M, (1 << ea) | (1 << eb)))
    out = set()
    for F in lines:
        cls_in = sorted({owner[e] for e in iter_bits(F & ~lp)})
        if len(cls_in) < 3:
            continue
        for choice in product(*[list(iter_bits(c)) for c in cls_in]):
            out.add(sum(1 << e for e in choice))
    cached = sort_family(out)
    M.__dict__["_max_segments"] = cached
    return list(cached)


def segments(M: Matroid, all_subsets: bool = False) -> list[int]:
    """Maximal segments, or with `all_subsets` every segment (size >= 3)."""
    maxi = maximal_segments(M)
    if not all_subsets:
        return maxi
    out = set()
    for S in maxi:
        for k in range(3, S.bit_count() + 1):
            out.update(subsets_of_size(S, k))
    return sort_family(out)


def cosegments(M: Matroid, all_subsets: bool = False) -> list[int]:
    return segments(M.dual(), all_subsets)


def is_cosegment(M: Matroid, L: int) -> bool:
    if L.bit_count() < 3:
        return False
    return all(_is_triad(M, T) for T in subsets_of_size(L, 3))


# -- segment-cosegment pairs -------------------------------------------------------


def _pair_candidates(M: Matroid, L: int) -> list[list[int]] | None:
    cl = closure(M, L)
    cands = []
    for x in iter_bits(L):
        base = cl & ~(1 << x)
        ys = [y for y in range(M.n) if not (cl >> y) & 1 and is_cocircuit(M, base | (1 << y))]
        if not ys:
            return None
        cands.append(ys)
    return cands


def seg_coseg_pairs_for(M: Matroid, L: int) -> list[SegCosegPair]:
    """All pairs (L, L*) for the given segment L."""
    cands = _pair_candidates(M, L)
    if cands is None:
        return []
    xs = tuple(iter_bits(L))
    out = []
    for ys in product(*cands):
        if len(set(ys)) == len(ys):
            out.append(SegCosegPair(xs, tuple(ys)))
    return out


def seg_coseg_pairs(M: Matroid) -> list[SegCosegPair]:
    """Every segment-cosegment pair, over all segments (not only maximal ones)."""
    cached = M.__dict__.get("_seg_coseg")
    if cached is None:
        cached = []
        for L in segments(M, all_subsets=True):
            cached += seg_coseg_pairs_for(M, L)
        cached.sort(key=lambda p: (canonical_key(p.L), p.xs, p.ys))
        M.__dict__["_seg_coseg"] = cached
    return list(cached)


# -- spores ------------------------------------------------------------------------


def rank_one_flats(M: Matroid) -> list[int]:
    lp = loops(M)
    return [c | lp for c in parallel_classes(M)]


def spores(M: Matroid) -> list[Spore]:
    out = []
    for P in rank_one_flats(M):
        for s in range(M.n):
            if not (P >> s) & 1 and is_cocircuit(M, P | (1 << s)):
                out.append(Spore(P, s))
    out.sort(key=lambda sp: (canonical_key(sp.P), sp.s))
    return out


def is_3conn_up_to_unique_spore(M: Matroid) -> Spore | None:
    """The spore (P, s) if it is M's only spore and every 1- or 2-separation
    has a side inside P | s; otherwise None."""
    found = spores(M)
    if len(found) != 1:
        return None
    sp = found[0]
    inside = sp.P | (1 << sp.s)
    for sep in low_order_separations(M):
        X = sep.X
        Y = M.full & ~X
        if X & ~inside and Y & ~inside:
            return None
    return sp
