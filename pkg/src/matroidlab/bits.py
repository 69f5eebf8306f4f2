"""Bitmask subsets of a small ground set.

An element set is a plain ``int`` whose bit ``i`` marks element ``i``.
The helpers here cover iteration, canonical ordering and the dense
"one entry per subset" arrays used by the vectorised kernels.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

ElementSet = int


def popcount(x: int) -> int:
    return x.bit_count()


def bit(i: int) -> int:
    return 1 << i


def full_mask(n: int) -> int:
    return (1 << n) - 1


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of `x` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_list(x: int) -> list[int]:
    return list(iter_bits(x))


def from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def lowest(x: int) -> int:
    return (x & -x).bit_length() - 1


def canonical_key(x: int) -> tuple[int, int]:
    """Sort key for set families: by size, then by integer value."""
    return (x.bit_count(), x)


def sort_family(family: Iterable[int]) -> list[int]:
    return sorted(set(family), key=canonical_key)


def subsets_of_size(x: int, k: int) -> Iterator[int]:
    for combo in combinations(iter_bits(x), k):
        yield from_indices(combo)


def submasks(x: int) -> Iterator[int]:
    """All submasks of `x`, including 0 and `x` itself."""
    sub = x
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & x


@lru_cache(maxsize=None)
def popcount_array(n: int) -> np.ndarray:
    """popcount of every integer in ``range(2**n)`` (read-only)."""
    pc = np.zeros(1 << n, dtype=np.int16)
    for j in range(n):
        block = 1 << j
        pc[block : 2 * block] = pc[:block] + 1
    pc.setflags(write=False)
    return pc


def deposit_indices(positions: Iterable[int]) -> np.ndarray:
    """Map every subset of ``range(m)`` to the mask it occupies at `positions`.

    Entry ``Y`` of the result is the old-index mask whose bit ``positions[j]``
    is set iff bit ``j`` of ``Y`` is set.
    """
    positions = list(positions)
    idx = np.zeros(1 << len(positions), dtype=np.int64)
    for j, p in enumerate(positions):
        block = 1 << j
        idx[block : 2 * block] = idx[:block] | (1 << p)
    return idx


def format_set(x: int, labels: Iterable[str] | None = None) -> str:
    if labels is None:
        return "{" + ",".join(str(i) for i in iter_bits(x)) + "}"
    labels = list(labels)
    return "{" + ",".join(labels[i] for i in iter_bits(x)) + "}"
