"""Matroid isomorphism by invariant-pruned backtracking.

Elements are first coloured by a cheap per-element invariant (how many
bases contain the element, and the multiset of sizes of circuits through
it).  The backtracking search only pairs elements of equal colour, checks
pair ranks as it goes, and rejects a partial map as soon as some fully
mapped circuit lands on a non-circuit.  A completed map is confirmed by
permuting the whole rank table.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .bits import deposit_indices, popcount_array
from .core import Matroid, circuits


def _bases_array(M: Matroid) -> np.ndarray:
    pc = popcount_array(M.n)
    return np.nonzero((M.table == M.r) & (pc == M.r))[0]


def element_invariants(M: Matroid) -> list[tuple]:
    cached = M.__dict__.get("_elem_inv")
    if cached is not None:
        return cached
    bases = _bases_array(M)
    circ = np.array(circuits(M), dtype=np.int64)
    sizes = popcount_array(M.n)[circ] if len(circ) else np.zeros(0, dtype=np.int16)
    inv = []
    for e in range(M.n):
        nb = int(((bases >> e) & 1).sum())
        through = sizes[((circ >> e) & 1).astype(bool)] if len(circ) else sizes
        inv.append((nb, tuple(sorted(int(s) for s in through))))
    M.__dict__["_elem_inv"] = inv
    return inv


def signature(M: Matroid) -> tuple:
    """An isomorphism invariant of the whole matroid (equal for isomorphic inputs)."""
    cached = M.__dict__.get("_signature")
    if cached is None:
        inv = element_invariants(M)
        cached = (M.n, M.r, len(M.bases), len(circuits(M)), tuple(sorted(inv)))
        M.__dict__["_signature"] = cached
    return cached


def _search(M1: Matroid, M2: Matroid) -> list[int] | None:
    n = M1.n
    inv1 = element_invariants(M1)
    inv2 = element_invariants(M2)
    classes2: dict[tuple, list[int]] = {}
    for f, key in enumerate(inv2):
        classes2.setdefault(key, []).append(f)
    class_size = Counter(inv1)

    # order: rarest colour first, then keep neighbours (by shared circuits) close
    circ1 = circuits(M1)
    circ2 = set(circuits(M2))
    order: list[int] = []
    remaining = set(range(n))
    placed = 0
    while remaining:
        def score(e: int) -> tuple:
            touching = sum(1 for C in circ1 if (C >> e) & 1 and C & placed and C.bit_count() <= 4)
            return (-touching, class_size[inv1[e]], e)

        e = min(remaining, key=score)
        order.append(e)
        placed |= 1 << e
        remaining.discard(e)

    position = {e: i for i, e in enumerate(order)}
    # circuits that become fully mapped when order[i] is placed
    closing: list[list[int]] = [[] for _ in range(n)]
    for C in circ1:
        last = max(position[e] for e in range(n) if (C >> e) & 1)
        closing[last].append(C)

    pair_rank1 = [[M1.rank((1 << a) | (1 << b)) for b in range(n)] for a in range(n)]
    pair_rank2 = [[M2.rank((1 << a) | (1 << b)) for b in range(n)] for a in range(n)]

    image = [-1] * n
    used = [False] * n

    def image_mask(C: int) -> int:
        m = 0
        x = C
        while x:
            low = x & -x
            m |= 1 << image[low.bit_length() - 1]
            x ^= low
        return m

    def extend(i: int) -> bool:
        if i == n:
            return True
        e = order[i]
        for f in classes2.get(inv1[e], ()):
            if used[f]:
                continue
            ok = True
            for j in range(i):
                a = order[j]
                if pair_rank1[e][a] != pair_rank2[f][image[a]]:
                    ok = False
                    break
            if not ok:
                continue
            image[e] = f
            used[f] = True
            if all(image_mask(C) in circ2 for C in closing[i]) and extend(i + 1):
                return True
            used[f] = False
            image[e] = -1
        return False

    if extend(0):
        return image
    return None


def is_isomorphic(M1: Matroid, M2: Matroid) -> dict[str, str] | None:
    """Return a label bijection E(M1) -> E(M2) carrying bases to bases, or None."""
    if M1.n != M2.n or M1.r != M2.r:
        return None
    if signature(M1) != signature(M2):
        return None
    image = _search(M1, M2)
    if image is None:
        return None
    # confirm: M2 read through the map must equal M1 exactly
    dep = deposit_indices(image)
    if not np.array_equal(M2.table[dep], M1.table):
        raise AssertionError("isomorphism search returned a map that is not an isomorphism")
    return {M1.labels[e]: M2.labels[image[e]] for e in range(M1.n)}


def check_isomorphism(M1: Matroid, M2: Matroid, mapping: dict[str, str]) -> bool:
    if M1.n != M2.n or sorted(mapping) != sorted(M1.labels):
        return False
    try:
        image = [M2.index(mapping[lab]) for lab in M1.labels]
    except KeyError:
        return False
    if len(set(image)) != M1.n:
        return False
    return bool(np.array_equal(M2.table[deposit_indices(image)], M1.table))
