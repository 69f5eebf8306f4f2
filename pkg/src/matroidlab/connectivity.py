"""Connectivity function, separations, vertical partitions, 2-sums."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bits import canonical_key, deposit_indices, format_set, iter_bits, popcount_array
from .core import (
    TABLE_CAP,
    BasisMatroid,
    CapExceeded,
    DualMatroid,
    MatroidError,
    Matroid,
    closure,
    co,
    si,
)
from .graphic import GraphicMatroid, graph_is_3_connected_matroid


class NotThreeConnected(MatroidError):
    pass


class NotA2Separation(MatroidError):
    pass


class SeedInvalid(MatroidError):
    pass


@dataclass(frozen=True)
class Separation:
    X: int
    k: int
    exact: bool

    def describe(self, M: Matroid) -> str:
        return f"{self.k}-separation {M.fmt(self.X)} | {M.fmt(M.full & ~self.X)}"


@dataclass(frozen=True)
class VerticalPartition:
    X1: int
    X2: int
    x: int
    k: int = 3

    def swapped(self) -> "VerticalPartition":
        return VerticalPartition(self.X2, self.X1, self.x, self.k)

    def verify(self, M: Matroid) -> bool:
        return is_vertical_partition(M, self.X1, self.X2, self.x, self.k)

    def describe(self, M: Matroid) -> str:
        return f"({M.fmt(self.X1)}, {M.fmt(self.X2)}, {M.labels[self.x]})"


def lam(M: Matroid, X: int) -> int:
    """The connectivity function r(X) + r(E - X) - r(M)."""
    return M.rank(X) + M.rank(M.full & ~X) - M.r


connectivity = lam


def lambda_array(M: Matroid) -> np.ndarray:
    t = M.table.astype(np.int16)
    return t + t[::-1] - M.r


def local_connectivity(M: Matroid, A: int, B: int) -> int:
    return M.rank(A) + M.rank(B) - M.rank(A | B)


def is_vertical_partition(M: Matroid, X1: int, X2: int, x: int, k: int = 3) -> bool:
    bx = 1 << x
    if X1 & X2 or (X1 | X2) & bx or (X1 | X2 | bx) != M.full:
        return False
    r1, r2 = M.rank(X1), M.rank(X2)
    if r1 < k or r2 < k:
        return False
    if lam(M, X1) != k - 1 or lam(M, X2) != k - 1:
        return False
    return M.rank(X1 | bx) == r1 and M.rank(X2 | bx) == r2


# -- 3-connectivity -----------------------------------------------------------------


def _low_order_separations(M: Matroid, k_max: int) -> list[Separation]:
    """All k-separations with k <= k_max, one side per complementary pair."""
    n = M.n
    lam_arr = lambda_array(M)
    half = 1 << (n - 1)  # sides avoiding the top element
    pc = popcount_array(n)[:half]
    lam_h = lam_arr[:half]
    out = []
    for k in range(1, k_max + 1):
        hit = (lam_h < k) & (pc >= k) & ((n - pc) >= k)
        if k > 1:  # report each separation at its lowest order only
            hit &= ~((lam_h < k - 1) & (pc >= k - 1) & ((n - pc) >= k - 1))
        for X in np.nonzero(hit)[0]:
            X = int(X)
            out.append(Separation(X, k, int(lam_h[X]) == k - 1))
    out.sort(key=lambda s: (s.k, canonical_key(s.X)))
    return out


def low_order_separations(M: Matroid) -> list[Separation]:
    """Every 1- and 2-separation of M (one side per pair)."""
    if not M.has_table:
        raise CapExceeded(f"separation enumeration needs a rank table (n={M.n})")
    return _low_order_separations(M, 2)


def is_3_connected(M: Matroid) -> tuple[bool, Separation | None]:
    """True iff M has no 1- or 2-separation; otherwise a violating separation."""
    cached = M.__dict__.get("_three_conn")
    if cached is not None:
        return cached
    result = _is_3_connected(M)
    M.__dict__["_three_conn"] = result
    return result


def _is_3_connected(M: Matroid) -> tuple[bool, Separation | None]:
    graphish = M if isinstance(M, GraphicMatroid) else None
    if isinstance(M, DualMatroid) and isinstance(M.primal, GraphicMatroid):
        graphish = M.primal
    if graphish is not None and M.n > TABLE_CAP:
        ok, X = graph_is_3_connected_matroid(graphish.graph)
        if ok:
            return True, None
        lx = lam(M, X)
        k = 1 if lx == 0 else 2
        return False, Separation(X, k, lx == k - 1)
    if not M.has_table:
        raise CapExceeded(f"3-connectivity test needs a rank table (n={M.n})")
    n = M.n
    lam_arr = lambda_array(M)
    pc = popcount_array(n)
    for k in (1, 2):
        hit = np.nonzero((lam_arr < k) & (pc >= k) & ((n - pc) >= k))[0]
        if len(hit):
            X = min((int(h) for h in hit), key=canonical_key)
            return False, Separation(X, k, int(lam_arr[X]) == k - 1)
    return True, None


def three_connected(M: Matroid) -> bool:
    return is_3_connected(M)[0]


def require_3_connected(M: Matroid) -> None:
    ok, sep = is_3_connected(M)
    if not ok:
        raise NotThreeConnected(f"matroid is not 3-connected: {sep.describe(M)}")


# -- vertical partitions ------------------------------------------------------------


def _vertical_at(M: Matroid, x: int, k: int, canonical: bool) -> list[VerticalPartition]:
    n = M.n
    others = [i for i in range(n) if i != x]
    dep = deposit_indices(others)
    if canonical:
        dep = dep[1::2]  # X1 holds the lowest element of E - x
    rest = M.full & ~(1 << x)
    X1 = dep
    X2 = rest ^ dep
    t = M.table
    bx = 1 << x
    r1 = t[X1].astype(np.int16)
    r2 = t[X2].astype(np.int16)
    ok = (r1 >= k) & (r2 >= k) & (r1 + r2 - M.r == k - 1)
    ok &= t[X1 | bx] == r1
    ok &= t[X2 | bx] == r2
    found = [VerticalPartition(int(a), int(rest ^ int(a)), x, k) for a in X1[ok]]
    found.sort(key=lambda vp: canonical_key(vp.X1))
    return found


def vertical_3_partitions(M: Matroid, x: int, *, check: bool = True) -> list[VerticalPartition]:
    """All vertical 3-partitions (X1, X2, x), X1 the side with the lowest element."""
    if check:
        require_3_connected(M)
    if not M.has_table:
        raise CapExceeded(f"vertical partition enumeration needs a rank table (n={M.n})")
    return _vertical_at(M, x, 3, True)


def vertical_partitions(M: Matroid, x: int, k: int) -> list[VerticalPartition]:
    return _vertical_at(M, x, k, True)


def ordered_vertical_3_partitions(M: Matroid, x: int) -> list[VerticalPartition]:
    """Both orientations of every vertical 3-partition at x."""
    out = []
    for vp in _vertical_at(M, x, 3, True):
        out.append(vp)
        out.append(vp.swapped())
    return out


# -- minimal partitions ------------------------------------------------------------


class _PartitionCache:
    """Ordered vertical 3-partitions per element, computed on demand."""

    def __init__(self, M: Matroid):
        self.M = M
        self._by_x: dict[int, list[VerticalPartition]] = {}

    def at(self, x: int) -> list[VerticalPartition]:
        if x not in self._by_x:
            self._by_x[x] = ordered_vertical_3_partitions(self.M, x)
        return self._by_x[x]


def _partition_cache(M: Matroid) -> _PartitionCache:
    cache = M.__dict__.get("_vp_cache")
    if cache is None:
        cache = _PartitionCache(M)
        M.__dict__["_vp_cache"] = cache
    return cache


def minimality_violations(M: Matroid, A: int, vp: VerticalPartition) -> list[VerticalPartition]:
    """Vertical 3-partitions witnessing that `vp` is not minimal w.r.t. A."""
    cache = _partition_cache(M)
    bad = []
    if not (A >> vp.x) & 1:
        return [vp]
    for y in iter_bits(A & (vp.X1 | (1 << vp.x))):
        for other in cache.at(y):
            # `other` runs over both orientations, so this one test covers
            # the disjoint-from-X2 condition for either side of (Y1, Y2, y)
            if vp.X2 & other.X1 == 0 and other != vp:
                bad.append(other)
    return bad


def is_minimal_partition(M: Matroid, A: int, vp: VerticalPartition) -> bool:
    return vp.verify(M) and not minimality_violations(M, A, vp)


def find_minimal_partition(M: Matroid, A: int, seed: VerticalPartition) -> VerticalPartition:
    """A minimal partition w.r.t. A whose first side lies in Z1 - cl(Z2).

    Follows the two-stage tightening: first shrink the seed's first side at
    the same apex, then among partitions whose apex lies in A and whose first
    side sits inside the shrunken side, take one whose first side plus apex
    is inclusion-minimal.  The result is re-verified exhaustively.
    """
    require_3_connected(M)
    z = seed.x
    if not seed.verify(M) or seed.k != 3:
        raise SeedInvalid("seed is not a vertical 3-partition")
    if not (A >> z) & 1:
        raise SeedInvalid(f"seed apex {M.labels[z]} is not in A")
    cache = _partition_cache(M)
    Z1, Z2 = seed.X1, seed.X2
    Z = Z1 & ~closure(M, Z2)

    family_z = [vp for vp in cache.at(z) if vp.X1 & ~Z1 == 0]
    Z1p = min(family_z, key=lambda vp: canonical_key(vp.X1))  # smallest is inclusion-minimal

    S1 = []
    for s in iter_bits(A & (Z1p.X1 | (1 << z))):
        if s == z:
            continue
        S1 += [vp for vp in cache.at(s) if vp.X1 & ~Z1p.X1 == 0]
    if S1:
        chosen = min(S1, key=lambda vp: canonical_key(vp.X1 | (1 << vp.x)))
    else:
        chosen = Z1p

    if chosen.X1 & ~Z or not (A >> chosen.x) & 1 or not ((Z | (1 << z)) >> chosen.x) & 1:
        raise AssertionError("minimal partition left the prescribed region")
    bad = minimality_violations(M, A, chosen)
    if bad:
        raise AssertionError(
            f"partition {chosen.describe(M)} is not minimal: violated by {bad[0].describe(M)}"
        )
    return chosen


# -- 2-sums ------------------------------------------------------------------------


def _fresh_label(taken: set[str], base: str = "p") -> str:
    label = base
    while label in taken:
        label += "'"
    return label


def decompose_2_separation(M: Matroid, X1: int) -> tuple[BasisMatroid, BasisMatroid, str]:
    """Split M along the exact 2-separation (X1, E - X1) into M1 (+) M2 at a new basepoint."""
    X2 = M.full & ~X1
    if X1.bit_count() < 2 or X2.bit_count() < 2 or lam(M, X1) != 1:
        raise NotA2Separation(f"{format_set(X1, M.labels)} is not an exact 2-separation")
    p = _fresh_label(set(M.labels))
    parts = []
    t = M.table
    for side, other in ((X1, X2), (X2, X1)):
        pos = list(iter_bits(side))
        dep = deposit_indices(pos)
        m = len(pos)
        tab = np.empty(1 << (m + 1), dtype=np.int16)
        tab[: 1 << m] = t[dep]
        tab[1 << m :] = t[dep | other].astype(np.int16) - int(t[other]) + 1
        labels = tuple(M.labels[i] for i in pos) + (p,)
        parts.append(BasisMatroid.from_table(labels, tab))
    return parts[0], parts[1], p


# -- Bixby --------------------------------------------------------------------------


class BixbyOutcome(str, Enum):
    SI_OK = "SiOk"
    CO_OK = "CoOk"
    BOTH = "Both"
    NEITHER = "Neither"  # only reachable if the lemma failed; callers treat it as an error


def bixby_check(M: Matroid, x: int) -> BixbyOutcome:
    require_3_connected(M)
    if M.n < 4:
        raise ValueError("needs at least four elements")
    bx = 1 << x
    si_ok = three_connected(si(M.contract(bx)))
    co_ok = three_connected(co(M.delete(bx)))
    if si_ok and co_ok:
        return BixbyOutcome.BOTH
    if si_ok:
        return BixbyOutcome.SI_OK
    if co_ok:
        return BixbyOutcome.CO_OK
    return BixbyOutcome.NEITHER
