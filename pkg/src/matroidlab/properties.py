"""Property checks for the connectivity, structure and partition lemmas.

Each ``check_*`` function takes a matroid (plus whatever it needs) and
returns a list of violation strings; an empty list means the property held
on every case examined.  ``run_*_suite`` functions drive the checks over a
corpus and collect :class:`CheckResult` records.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .bits import deposit_indices, iter_bits, popcount_array, submasks
from .connectivity import (
    BixbyOutcome,
    VerticalPartition,
    bixby_check,
    decompose_2_separation,
    find_minimal_partition,
    is_minimal_partition,
    is_vertical_partition,
    lam,
    lambda_array,
    local_connectivity,
    low_order_separations,
    ordered_vertical_3_partitions,
    three_connected,
    vertical_3_partitions,
)
from .constructions import parallel_connection, random_gf_matroid, theta, theta_double, two_sum
from .core import BasisMatroid, Matroid, closure, co, cocircuits, is_flat, si
from .isomorphism import is_isomorphic
from .structures import is_3conn_up_to_unique_spore, is_cosegment, seg_coseg_pairs

MAX_REPORTED = 5  # violations kept per check and matroid


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    violations: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, where: str, found: list[str], cases: int = 1) -> None:
        self.cases += cases
        self.violations += [f"{where}: {v}" for v in found[:MAX_REPORTED]]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.cases} cases, {self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases, "violations": self.violations[:50]}


def _independent_dual(M: Matroid) -> BasisMatroid:
    """The dual rebuilt from complemented bases, not through the dual view."""
    return BasisMatroid(tuple(M.labels), [M.full ^ B for B in M.bases], validate=False)


def _closure_bits(t: np.ndarray, n: int) -> np.ndarray:
    """cl(X) for every X, from a rank table."""
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for e in range(n):
        out |= (t[idx | (1 << e)] == t).astype(np.int64) << e
    return out


def _pairs(n: int, rng: random.Random | None, samples: int) -> Iterable[tuple[int, int]]:
    """All disjoint (A, B) pairs, or `samples` random ones."""
    full = (1 << n) - 1
    if rng is None:
        for A in range(1 << n):
            for B in submasks(full & ~A):
                yield A, B
    else:
        for _ in range(samples):
            labels = [rng.randrange(3) for _ in range(n)]
            A = sum(1 << i for i, c in enumerate(labels) if c == 0)
            B = sum(1 << i for i, c in enumerate(labels) if c == 1)
            yield A, B


# -- connectivity function ----------------------------------------------------------


def check_submodularity(M: Matroid, rng: random.Random | None = None, samples: int = 20000) -> list[str]:
    lam_arr = lambda_array(M).astype(np.int32)
    N = 1 << M.n
    if rng is None:
        idx = np.arange(N)
        X, Y = idx[:, None], idx[None, :]
    else:
        gen = np.random.default_rng(rng.randrange(1 << 30))
        X = gen.integers(0, N, samples)
        Y = gen.integers(0, N, samples)
    bad = lam_arr[X & Y] + lam_arr[X | Y] > lam_arr[X] + lam_arr[Y]
    if not bad.any():
        return []
    i = np.argwhere(bad)[0]
    x, y = (int(X[i[0], 0]), int(Y[0, i[1]])) if rng is None else (int(X[i[0]]), int(Y[i[0]]))
    return [f"lambda not submodular at X={M.fmt(x)}, Y={M.fmt(y)}"]


def check_lambda_duality(M: Matroid) -> list[str]:
    lam_m = lambda_array(M)
    lam_d = lambda_array(_independent_dual(M))
    out = []
    if not np.array_equal(lam_m, lam_d):
        X = int(np.argwhere(lam_m != lam_d)[0][0])
        out.append(f"lambda differs from the dual at {M.fmt(X)}")
    if not np.array_equal(lam_m, lam_m[::-1]):
        out.append("lambda(X) != lambda(E - X)")
    return out


def check_minor_monotone(M: Matroid, rng: random.Random, chain: int = 3) -> list[str]:
    """lambda of a minor never exceeds lambda in M, along a random minor chain."""
    out = []
    lam_m = lambda_array(M)
    idx = np.arange(1 << M.n, dtype=np.int64)
    current, kept = M, list(range(M.n))
    for _ in range(chain):
        if current.n <= 1:
            break
        j = rng.randrange(current.n)
        current = current.delete(1 << j) if rng.random() < 0.5 else current.contract(1 << j)
        kept.pop(j)
        comp = np.zeros_like(idx)
        for pos, e in enumerate(kept):
            comp |= ((idx >> e) & 1) << pos
        bad = lambda_array(current)[comp] > lam_m
        if bad.any():
            X = int(np.argwhere(bad)[0][0])
            out.append(f"minor on {current.labels} raises lambda at {M.fmt(X)}")
    return out


def check_guts(M: Matroid) -> list[str]:
    """For each partition (X, Y, z) with lambda(X) = lambda(Y): z in the guts xor the coguts."""
    t = M.table
    ts = _independent_dual(M).table
    lam_arr = lambda_array(M)
    out = []
    for z in range(M.n):
        bz = 1 << z
        rest = M.full & ~bz
        X = deposit_indices([i for i in range(M.n) if i != z])
        Y = rest ^ X
        equal = lam_arr[X] == lam_arr[Y]
        guts = (t[X | bz] == t[X]) & (t[Y | bz] == t[Y])
        coguts = (ts[X | bz] == ts[X]) & (ts[Y | bz] == ts[Y])
        bad = equal & ~(guts ^ coguts)
        if bad.any():
            x = int(X[np.argwhere(bad)[0][0]])
            out.append(f"z={M.labels[z]}, X={M.fmt(x)}: guts={bool(guts[bad][0])} coguts={bool(coguts[bad][0])}")
    return out


def check_cosegment_absorption(M: Matroid) -> list[str]:
    """X exactly 3-separating: cl*(X) - X, when it has >= 3 elements, is a cosegment."""
    dual_t = _independent_dual(M).table
    cocl = _closure_bits(dual_t, M.n)
    lam_arr = lambda_array(M)
    idx = np.arange(1 << M.n, dtype=np.int64)
    A = cocl & ~idx
    pc = popcount_array(M.n)
    cand = np.nonzero((lam_arr == 2) & (pc[A] >= 3))[0]
    seen: dict[int, bool] = {}
    out = []
    for X in cand:
        a = int(A[X])
        if a not in seen:
            seen[a] = is_cosegment(M, a)
        if not seen[a]:
            out.append(f"X={M.fmt(int(X))}: {M.fmt(a)} in cl*(X) is not a cosegment")
    return out


def check_vertical_closure(M: Matroid, rng: random.Random | None = None, limit: int = 64) -> list[str]:
    out = []
    for x in range(M.n):
        for vp in ordered_vertical_3_partitions(M, x):
            C = closure(M, vp.X2 | (1 << x)) & vp.X1
            subs = list(submasks(C))
            if len(subs) > limit:
                subs = (rng or random.Random(0)).sample(subs, limit)
            for S in subs:
                if not is_vertical_partition(M, vp.X1 & ~S, vp.X2 | S, x):
                    out.append(f"{vp.describe(M)} with A={M.fmt(S)} is no longer vertical")
    return out


def check_vertical_iff_si(M: Matroid) -> list[str]:
    """si(M / x) fails to be 3-connected exactly when x has a vertical 3-partition."""
    out = []
    if M.r < 2:  # every contraction is all loops, and no side can have rank 3
        return out
    for x in range(M.n):
        bad_si = not three_connected(si(M.contract(1 << x)))
        has_vp = bool(vertical_3_partitions(M, x, check=False))
        if bad_si != has_vp:
            out.append(f"x={M.labels[x]}: si(M/x) 3-connected={not bad_si}, vertical partitions={has_vp}")
    return out


def check_local_connectivity_identity(M: Matroid, rng: random.Random | None = None, samples: int = 3000) -> list[str]:
    t = M.table.tolist()
    r = M.r
    full = M.full

    def lam_(X: int) -> int:
        return t[X] + t[full & ~X] - r

    def sq(A: int, B: int) -> int:
        return t[A] + t[B] - t[A | B]

    out = []
    for A, B in _pairs(M.n, rng, samples):
        C = full & ~(A | B)
        if sq(A, B) + lam_(C) != sq(A, C) + lam_(B):
            out.append(f"A={M.fmt(A)}, B={M.fmt(B)}")
            if len(out) >= MAX_REPORTED:
                break
    return out


def check_exact_3_partition(M: Matroid, rng: random.Random | None = None, samples: int = 3000) -> list[str]:
    t = M.table.tolist()
    r = M.r
    full = M.full
    out = []
    for X, Y in _pairs(M.n, rng, samples):
        Z = full & ~(X | Y)
        if any(t[S] + t[full & ~S] - r != 2 for S in (X, Y, Z)):
            continue
        vals = {t[P] + t[Q] - t[P | Q] for P, Q in ((X, Y), (X, Z), (Y, Z))}
        if len(vals) != 1:
            out.append(f"exact 3-partition {M.fmt(X)} | {M.fmt(Y)} | {M.fmt(Z)}: local connectivities {sorted(vals)}")
    return out


def check_rank_one_meet(M: Matroid, rng: random.Random | None = None, samples: int = 3000) -> list[str]:
    t = M.table.tolist()
    cl = _closure_bits(M.table, M.n).tolist()
    out = []
    for X, Y in _pairs(M.n, rng, samples):
        if t[X] + t[Y] - t[X | Y] == 1 and t[X & cl[Y]] > 1:
            out.append(f"X={M.fmt(X)}, Y={M.fmt(Y)}: X & cl(Y) has rank {t[X & cl[Y]]}")
    return out


def check_bixby(M: Matroid) -> list[str]:
    if M.n < 4:
        return []
    return [f"x={M.labels[x]}: neither" for x in range(M.n) if bixby_check(M, x) is BixbyOutcome.NEITHER]


def check_parallel_connection_minors(M1: Matroid, M2: Matroid, p: str) -> list[str]:
    """P(M1, M2) \\ e = P(M1 \\ e, M2) and P(M1, M2) / e = P(M1 / e, M2)."""
    P = parallel_connection(M1, M2, p, p)
    out = []
    for e in range(M1.n):
        if M1.labels[e] == p:
            continue
        lab = M1.labels[e]
        be = 1 << P.index(lab)
        if not P.delete(be).same_as(parallel_connection(M1.delete(1 << e), M2, p, p)):
            out.append(f"deletion of {lab}")
        if not P.contract(be).same_as(parallel_connection(M1.contract(1 << e), M2, p, p)):
            out.append(f"contraction of {lab}")
    return out


def check_two_sum_roundtrip(M: Matroid, limit: int | None = None) -> tuple[list[str], int]:
    out = []
    seps = [s for s in low_order_separations(M) if s.k == 2 and s.exact]
    if limit is not None:
        seps = seps[:limit]
    for s in seps:
        M1, M2, p = decompose_2_separation(M, s.X)
        if not two_sum(M1, M2, p, p).same_as(M):
            out.append(f"2-sum along {M.fmt(s.X)} does not recompose")
    return out, len(seps)


# -- segment-cosegment pairs -----------------------------------------------------------


def check_seg_coseg(M: Matroid) -> dict[str, tuple[list[str], int]]:
    """Partner cosegment, contracted closure, unique spore and co(si) isomorphism for every pair of a 3-connected M."""
    res: dict[str, tuple[list[str], int]] = {k: ([], 0) for k in ("partner-cosegment", "contract-closure", "unique-spore", "co-si-isomorphism")}

    def note(key: str, bad: str | None) -> None:
        vs, c = res[key]
        res[key] = (vs + ([bad] if bad else []), c + 1)

    contracted: dict[int, Matroid] = {}
    for pair in seg_coseg_pairs(M):
        desc = pair.describe(M)
        note("partner-cosegment", None if is_cosegment(M, pair.Lstar) else f"{desc}: L* not a cosegment")
        cl_L = closure(M, pair.L)
        if cl_L not in contracted:
            contracted[cl_L] = M.contract(cl_L)
        McL = contracted[cl_L]
        conn = three_connected(McL)
        note("contract-closure", None if conn else f"{desc}: M/cl(L) not 3-connected")
        if (M.full & ~cl_L).bit_count() < 4:
            continue
        for x, y in zip(pair.xs, pair.ys):
            Mx = M.contract(1 << x)
            sp = is_3conn_up_to_unique_spore(Mx)
            want = (sorted(M.names(cl_L & ~(1 << x))), M.labels[y])
            got = None if sp is None else (sorted(Mx.names(sp.P)), Mx.labels[sp.s])
            note("unique-spore", None if got == want else f"{desc}, x={M.labels[x]}: spore {got}, expected {want}")
            if conn:
                iso = is_isomorphic(co(si(Mx)), McL)
                note("co-si-isomorphism", None if iso is not None else f"{desc}, x={M.labels[x]}: co(si(M/x)) not isomorphic to M/cl(L)")
    return res


# -- vertical and minimal partitions -------------------------------------------------------


def _crossing_checks(M: Matroid, X: VerticalPartition, Y: VerticalPartition) -> list[str]:
    X1, X2, x = X.X1, X.X2, X.x
    Y1, Y2, y = Y.X1, Y.X2, Y.x
    bx, by = 1 << x, 1 << y
    out = []
    if not all(P & Q for P in (X1, X2) for Q in (Y1, Y2)):
        out.append("(i) some X_i & Y_j is empty")
    for S in (X1 & Y2, (X1 & Y2) | by, X2 & Y1, (X2 & Y1) | bx, X2 & Y2):
        if lam(M, S) >= 3:
            out.append(f"(ii) {M.fmt(S)} not 3-separating")
    core = (X1 & Y1) | bx | by
    if lam(M, core) >= 4:
        out.append("(iii) (X1 & Y1) + x + y not 4-separating")
    clX2, clY1, clY2 = closure(M, X2), closure(M, Y1), closure(M, Y2)
    if (X1 & Y1) & ~clX2 == 0 or (X1 & Y2) & ~clX2 == 0:
        out.append("(iv) a part of X1 lies in cl(X2)")
    if (X1 & Y1) & ~clY2 == 0:
        out.append("(iv) X1 & Y1 lies in cl(Y2)")
    if (X1 & Y2) & ~clY1 == 0:
        out.append("(iv) X1 & Y2 lies in cl(Y1)")
    if M.rank((X1 & Y2) | by) != 2:
        out.append("(v) r((X1 & Y2) + y) != 2")
    if lam(M, core) < 3 and M.rank(core) != 2:
        out.append("(vi) 3-separating core without rank 2")
    return out


def _crossing_extras(M: Matroid, X: VerticalPartition, Y: VerticalPartition) -> tuple[list[str], list[str]]:
    X1, x = X.X1, X.x
    Y1, Y2, y = Y.X1, Y.X2, Y.x
    bx, by = 1 << x, 1 << y
    S = X1 & Y2
    a = local_connectivity(M, (X1 & Y1) | bx | by, S)
    b = local_connectivity(M, (X1 & Y1) | by, S)
    local = [] if a == b == 1 else [f"local connectivities {a}, {b}"]
    spans = [] if closure(M, (X1 & Y1) | bx) >> y & 1 else ["y not in cl((X1 & Y1) + x)"]
    return local, spans


@dataclass
class PartitionStats:
    results: dict[str, CheckResult] = field(default_factory=dict)

    def get(self, name: str) -> CheckResult:
        if name not in self.results:
            self.results[name] = CheckResult(name)
        return self.results[name]


def check_partitions(M: Matroid, name: str, stats: PartitionStats, sets: list[int] | None = None) -> None:
    """Cocircuit sides, minimal partitions and the crossing-partition facts on M.

    `sets` are the sets A that minimal partitions are taken with respect to;
    by default every cocircuit plus the whole ground set.
    """
    cocs = cocircuits(M)
    sets = sets if sets is not None else cocs + [M.full]
    by_x = {x: ordered_vertical_3_partitions(M, x) for x in range(M.n)}
    if not any(by_x.values()):
        return
    si_bad = {x: bool(by_x[x]) for x in range(M.n)}  # vertical partition <=> si(M/x) not 3-connected, checked separately

    res = stats.get("cocircuit-meets-sides")
    for C in cocs:
        for x in iter_bits(C):
            for vp in by_x[x]:
                clX1, clX2 = closure(M, vp.X1), closure(M, vp.X2)
                ok = C & vp.X1 & ~clX2 and C & vp.X2 & ~clX1
                res.add(name, [] if ok else [f"C*={M.fmt(C)}, {vp.describe(M)}"])

    coc_set = set(cocs)
    for A in sets:
        minimal = [vp for x in iter_bits(A) for vp in by_x[x] if is_minimal_partition(M, A, vp)]
        res = stats.get("minimal")
        for x in iter_bits(A):
            for seed in by_x[x]:
                got = find_minimal_partition(M, A, seed)
                Z = seed.X1 & ~closure(M, seed.X2)
                ok = got in minimal and got.X1 & ~Z == 0 and ((Z | (1 << x)) >> got.x) & 1
                res.add(name, [] if ok else [f"A={M.fmt(A)}, seed {seed.describe(M)} -> {got.describe(M)}"])
        for X in minimal:
            res = stats.get("minimal-flat")
            res.add(name, [] if is_flat(M, X.X2 | (1 << X.x)) else [f"{X.describe(M)}: X2 + x not a flat"])
            hyp_single = A in coc_set and all(si_bad[x0] for x0 in iter_bits(A & X.X1))
            for y in iter_bits(A & X.X1):
                for Y in by_x[y]:
                    if not (Y.X1 >> X.x) & 1:
                        continue
                    where = f"{name} A={M.fmt(A)} X={X.describe(M)} Y={Y.describe(M)}"
                    stats.get("crossing").add(where, _crossing_checks(M, X, Y))
                    if (X.X1 & Y.X2).bit_count() >= 2:
                        local, spans = _crossing_extras(M, X, Y)
                        stats.get("crossing-local").add(where, local)
                        stats.get("crossing-closure").add(where, spans)
                    if hyp_single:
                        k = (X.X1 & Y.X2).bit_count()
                        stats.get("single-crossing").add(where, [] if k == 1 else [f"|X1 & Y2| = {k}"])


# -- corpora and suites ----------------------------------------------------------------


def random_matroid(rng: random.Random, n: int) -> BasisMatroid:
    p = rng.choice((2, 3, 5, 7))
    r = rng.randint(1, n - 1)
    return random_gf_matroid(n, r, p, rng)


def small_corpus(rng: random.Random, count: int = 40) -> list[tuple[str, Matroid]]:
    """Catalogue members with n <= 8 (3-connected or not) plus random GF(p) matroids."""
    from .catalogue import default_catalogue

    out = [(nm, M) for nm, M in default_catalogue(include_skipped=True) if M.n <= 8]
    for i in range(count):
        out.append((f"rand{i}", random_matroid(rng, rng.randint(4, 8))))
    return out


def _timed(res: CheckResult, fn: Callable[[], None]) -> None:
    start = time.perf_counter()
    fn()
    res.seconds += time.perf_counter() - start


CONNECTIVITY_CHECKS = (
    "submodularity",
    "lambda-duality",
    "minor-monotone",
    "guts-coguts",
    "cosegment-absorption",
    "vertical-closure",
    "vertical-iff-si",
    "local-connectivity-identity",
    "exact-3-partition",
    "rank-one-meet",
    "bixby",
    "parallel-connection-minors",
    "two-sum",
)


def _connectivity_on(M: Matroid, name: str, rng: random.Random, exhaustive: bool, results: dict[str, CheckResult]) -> None:
    sample_rng = None if exhaustive else rng

    def run(key: str, fn: Callable[[], list[str]]) -> None:
        _timed(results[key], lambda: results[key].add(name, fn()))

    run("submodularity", lambda: check_submodularity(M, sample_rng))
    run("lambda-duality", lambda: check_lambda_duality(M))
    run("minor-monotone", lambda: check_minor_monotone(M, rng))
    run("guts-coguts", lambda: check_guts(M))
    run("local-connectivity-identity", lambda: check_local_connectivity_identity(M, sample_rng))
    run("rank-one-meet", lambda: check_rank_one_meet(M, sample_rng))
    if M.n >= 4:
        res = results["two-sum"]
        start = time.perf_counter()
        found, k = check_two_sum_roundtrip(M, limit=None if exhaustive else 3)
        res.add(name, found, cases=k)
        res.seconds += time.perf_counter() - start
    if three_connected(M):
        run("cosegment-absorption", lambda: check_cosegment_absorption(M))
        run("vertical-closure", lambda: check_vertical_closure(M, rng))
        run("vertical-iff-si", lambda: check_vertical_iff_si(M))
        run("exact-3-partition", lambda: check_exact_3_partition(M, sample_rng))
        run("bixby", lambda: check_bixby(M))


def _parallel_connection_trial(rng: random.Random, results: dict[str, CheckResult]) -> None:
    n1 = rng.randint(2, 6)
    n2 = rng.randint(2, 6)
    M1 = random_matroid(rng, n1).relabel([f"a{i}" for i in range(n1 - 1)] + ["p"])
    M2 = random_matroid(rng, n2).relabel(["p"] + [f"b{i}" for i in range(n2 - 1)])
    res = results["parallel-connection-minors"]
    _timed(res, lambda: res.add(f"P({n1},{n2})", check_parallel_connection_minors(M1, M2, "p")))


def run_connectivity_suite(seed: int = 0, trials: int = 200, small: int = 40) -> list[CheckResult]:
    """Exhaustive checks on n <= 8, then `trials` random matroids with 9 <= n <= 12."""
    rng = random.Random(seed)
    results = {k: CheckResult(k) for k in CONNECTIVITY_CHECKS}
    for name, M in small_corpus(rng, small):
        _connectivity_on(M, name, rng, True, results)
    for _ in range(small):
        _parallel_connection_trial(rng, results)
    for i in range(trials):
        n = rng.randint(9, 12)
        # every other trial insists on 3-connectivity so the lemmas with that hypothesis get exercised
        M = (random_three_connected(rng, n) if i % 2 else None) or random_matroid(rng, n)
        _connectivity_on(M, f"trial{i}(n={n})", rng, False, results)
        _parallel_connection_trial(rng, results)
    return list(results.values())


def structure_corpus(seed: int = 0) -> list[tuple[str, Matroid]]:
    """3-connected matroids in which seg-coseg pairs and vertical partitions occur."""
    from .catalogue import default_catalogue

    out = list(default_catalogue(seed))
    for r in (3, 4):
        T = theta(r, seed)
        out += [(f"theta{r}", T), (f"theta{r}*", T.dual())]
    td4 = theta_double(4, seed)
    out += [("theta_double4", td4), ("theta_double4*", td4.dual())]
    return [(nm, M) for nm, M in out if three_connected(M)]


def run_segcoseg_suite(seed: int = 0) -> list[CheckResult]:
    results = {k: CheckResult(k) for k in ("partner-cosegment", "contract-closure", "unique-spore", "co-si-isomorphism")}
    for name, M in structure_corpus(seed):
        start = time.perf_counter()
        found = check_seg_coseg(M)
        for key, (vs, c) in found.items():
            results[key].add(name, vs, cases=c)
        results["partner-cosegment"].seconds += time.perf_counter() - start
    return list(results.values())


PARTITION_CHECKS = ("cocircuit-meets-sides", "minimal", "minimal-flat", "crossing", "crossing-local", "crossing-closure", "single-crossing")


def run_partition_suite(seed: int = 0) -> list[CheckResult]:
    stats = PartitionStats({k: CheckResult(k) for k in PARTITION_CHECKS})
    for name, M in structure_corpus(seed):
        start = time.perf_counter()
        check_partitions(M, name, stats)
        stats.results["cocircuit-meets-sides"].seconds += time.perf_counter() - start
    return list(stats.results.values())


def random_three_connected(rng: random.Random, n: int, tries: int = 50) -> Matroid | None:
    for _ in range(tries):
        M = random_gf_matroid(n, rng.randint(3, n - 3), rng.choice((3, 5, 7)), rng)
        if three_connected(M):
            return M
    return None
