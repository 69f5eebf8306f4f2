"""Brute-force reference enumerators.

These deliberately avoid the vectorized rank-table machinery: every check is
made set by set through ``M.rank`` straight from the definitions, so they can
serve as the second route against the fast code in ``connectivity``.
"""

from __future__ import annotations

from .core import Matroid


def _lam(M: Matroid, X: int) -> int:
    return M.rank(X) + M.rank(M.full & ~X) - M.rank(M.full)


def _in_closure(M: Matroid, X: int, e: int) -> bool:
    return M.rank(X | (1 << e)) == M.rank(X)


def brute_is_3_connected(M: Matroid) -> bool:
    n = M.n
    for X in range(1 << n):
        size = X.bit_count()
        for k in (1, 2):
            if size >= k and n - size >= k and _lam(M, X) < k:
                return False
    return True


def brute_vertical_partitions(M: Matroid, x: int, k: int = 3) -> list[tuple[int, int, int]]:
    """Every ordered (X1, X2, x) meeting the three defining conditions."""
    rest = M.full & ~(1 << x)
    out = []
    X1 = rest
    while True:  # walk all submasks of rest
        X2 = rest & ~X1
        if (
            _lam(M, X1) == k - 1
            and _lam(M, X2) == k - 1
            and M.rank(X1) >= k
            and M.rank(X2) >= k
            and _in_closure(M, X1, x)
            and _in_closure(M, X2, x)
        ):
            out.append((X1, X2, x))
        if X1 == 0:
            break
        X1 = (X1 - 1) & rest
    return sorted(out)


def brute_all_vertical_partitions(M: Matroid) -> dict[int, list[tuple[int, int, int]]]:
    return {x: brute_vertical_partitions(M, x) for x in range(M.n)}


def brute_minimal_partitions(M: Matroid, A: int, table: dict | None = None) -> list[tuple[int, int, int]]:
    """Ordered partitions satisfying the three minimality conditions with respect to A.

    Conditions are checked as written: for (Y1, Y2, y) with y in A and in
    X1 + x, disjointness of X2 from Y1 forces (Y1, Y2, y) == (X1, X2, x), and
    disjointness of X2 from Y2 forces (Y2, Y1, y) == (X1, X2, x).
    """
    table = table if table is not None else brute_all_vertical_partitions(M)
    out = []
    for x, parts in table.items():
        if not (A >> x) & 1:
            continue
        for X1, X2, _ in parts:
            ok = True
            for y in range(M.n):
                if not (A >> y) & 1 or not ((X1 | (1 << x)) >> y) & 1:
                    continue
                for Y1, Y2, _ in table[y]:
                    if X2 & Y1 == 0 and (Y1, Y2, y) != (X1, X2, x):
                        ok = False
                    if X2 & Y2 == 0 and (Y2, Y1, y) != (X1, X2, x):
                        ok = False
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                out.append((X1, X2, x))
    return sorted(out)
