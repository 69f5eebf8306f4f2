"""Named checks for the worked examples and the property suites.

Each suite is a generator of :class:`Check` records.  ``run_suites`` drives
them, turning an exception inside a check into a failing record that names
the check, so a single broken fixture does not hide the others.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from .bits import subsets_of_size
from .catalogue import default_catalogue, default_targets
from .connectivity import VerticalPartition, find_minimal_partition, is_minimal_partition, ordered_vertical_3_partitions, three_connected
from .constructions import (
    complete,
    fig1_graph,
    fig2_graph,
    k5_minus_e,
    k5_minus_e_graph,
    theta,
    theta_double,
    theta_double_circuit,
)
from .core import co, cocircuits, is_circuit, is_cocircuit, parallel_classes, series_classes, si
from .graphic import GraphicMatroid, complete_graph
from .isomorphism import is_isomorphic
from .minors import MinorOracle, graph_has_minor, has_minor, naive_has_minor
from .oracles import brute_all_vertical_partitions, brute_is_3_connected, brute_minimal_partitions
from .properties import CheckResult, run_connectivity_suite, run_segcoseg_suite, run_partition_suite, structure_corpus
from .structures import Fan, fans
from .theorem import (
    BranchKind,
    classify_dual,
    classify_dual_via_thm1,
    classify_main,
    classify_thm1,
    sweep_catalogue,
)

FIG1_CHECKSUM = "a63674375912088789691aca518c3adcd5a5062f6999ba497f7fe51f604a7f44"
FIG1_K6_EDGES = ("ab", "ac", "ad", "ae", "af")


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" -- {self.detail}" if self.detail and not self.passed else ""
        return f"{status} [{self.suite}] {self.name}{tail}"

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed, "detail": self.detail}


def _from_results(suite: str, results: list[CheckResult]) -> Iterator[Check]:
    for r in results:
        detail = "; ".join(r.violations[:3]) if r.violations else f"{r.cases} cases"
        yield Check(suite, r.name, r.passed and r.cases > 0, detail, r.seconds)


# -- the K5 minus an edge example ----------------------------------------------------------


def fig2_checks() -> Iterator[Check]:
    s = "fig2"
    g = fig2_graph()
    yield Check(s, "fixture matches the built-in K5\\e", sorted(g.edges) == sorted(k5_minus_e_graph().edges))
    M = k5_minus_e()
    Md = M.dual()
    K4 = complete(4)
    C = M.mask(["a", "b", "c", "d"])
    yield Check(s, "M and M* are 3-connected", three_connected(M) and three_connected(Md))
    yield Check(s, "C={a,b,c,d} is a circuit of M", is_circuit(M, C))
    yield Check(s, "C is a cocircuit of M*", is_cocircuit(Md, C))
    for x in M.names(C):
        bx = M.mask(x)
        Mdx = Md.contract(bx)
        yield Check(s, f"M*/{x} has an M(K4)-minor", has_minor(Mdx, K4) is not None)
        S = si(Mdx)
        yield Check(s, f"si(M*/{x}) is not 3-connected", not three_connected(S))
        CS = co(S)
        yield Check(s, f"co(si(M*/{x})) is 3-connected", three_connected(CS))
        yield Check(s, f"co(si(M*/{x})) has an M(K4)-minor", has_minor(CS, K4) is not None)
        v = classify_thm1(Md, K4, C, M.index(x))
        holds = v.statements()
        yield Check(s, f"cocircuit form at x0={x}: (ii) holds, (i) does not", 2 in holds and 1 not in holds, str(sorted(holds)))
    a = M.index("a")
    direct = classify_dual(M, K4, C, a)
    via = classify_dual_via_thm1(M, K4, C, a)
    yield Check(s, "circuit form: statement (ii) holds", 2 in direct.statements(), str(sorted(direct.statements())))
    yield Check(s, "circuit form agrees with the dualized cocircuit form", direct.holds == via.holds)
    parallel = all(any(c.bit_count() >= 2 for c in parallel_classes(co(M.delete(M.mask(x))))) for x in M.names(C))
    yield Check(s, "co(M\\x) has a parallel pair for every x in C", parallel)


# -- the theta family -------------------------------------------------------------------


def theta_checks(seed: int = 0) -> Iterator[Check]:
    s = "theta"
    for r in (3, 4):
        T = theta(r, seed)
        yield Check(s, f"theta({r}) is self-dual", is_isomorphic(T, T.dual()) is not None)
        M = theta_double(r, seed)
        yield Check(s, f"C is a circuit of theta_double({r})", is_circuit(M, theta_double_circuit(r)))
    M = theta_double(3, seed)
    yield Check(s, "theta_double(3) is isomorphic to M(K5\\e)", is_isomorphic(M, k5_minus_e()) is not None)
    Md = M.dual()
    A = M.mask(["a1", "a2", "a3"])
    for r in (3, 4):
        Mr = M if r == 3 else theta_double(4, seed)
        Ar = Mr.mask([f"a{i}" for i in range(1, r + 1)])
        ok = all(is_circuit(Mr.dual(), T) for T in subsets_of_size(Ar, 3))
        yield Check(s, f"every 3-subset of A is a circuit of theta_double({r})*", ok)
    C = theta_double_circuit(3)
    yield Check(s, "C is a cocircuit of M*", is_cocircuit(Md, C))
    T3 = theta(3, seed)
    for x in Md.names(C & A):
        Mdx = Md.contract(Md.mask(x))
        S = si(Mdx)
        pairs = [c for c in series_classes(S) if c.bit_count() >= 2]
        unique = len(pairs) == 1 and pairs[0].bit_count() == 2
        yield Check(s, f"si(M*/{x}) has a unique series pair", unique, f"series classes {[S.fmt(c) for c in pairs]}")
        yield Check(s, f"si(M*/{x}) is not 3-connected", not three_connected(S))
        CS = co(S)
        yield Check(s, f"co(si(M*/{x})) is 3-connected", three_connected(CS))
        yield Check(s, f"co(si(M*/{x})) has a theta(3)-minor", has_minor(CS, T3) is not None)
    for x in Md.names(C):
        yield Check(s, f"M*/{x} has a theta(3)-minor", has_minor(Md.contract(Md.mask(x)), T3) is not None)
    K4 = complete(4)
    v = classify_main(Md, K4, C, Md.index("a2"))
    kinds = v.kinds()
    yield Check(
        s,
        "main classifier on M*: a seg-coseg branch and neither (i) nor (ii)",
        bool(kinds & {BranchKind.SEG_COSEG_FLAT, BranchKind.SEG_COSEG_WITH_E})
        and not kinds & {BranchKind.SI_OK, BranchKind.FAN},
        str(sorted(k.value for k in kinds)),
    )


# -- the 24-edge graph with a fan -----------------------------------------------------------


def fig1_fixture_problems(g) -> list[str]:
    out = []
    names = [g.vertex_name(v) for v in range(g.n_vertices)]
    canon = sorted("-".join(sorted((names[u], names[v]))) for u, v, _ in g.edges)
    digest = hashlib.sha256(",".join(canon).encode()).hexdigest()
    if digest != FIG1_CHECKSUM:
        out.append(f"edge-list checksum {digest[:12]}... does not match the transcription")
    for u, v, lab in g.edges:
        if lab != "".join(sorted((names[u], names[v]))):
            out.append(f"edge {lab} joins {names[u]} and {names[v]}")
    return out


def fig1_checks(text: str | None = None) -> Iterator[Check]:
    s = "fig1"
    g = fig1_graph(text)
    problems = fig1_fixture_problems(g)
    yield Check(s, "transcription checksum", not problems, "; ".join(problems))
    if problems:
        return
    M = GraphicMatroid(g)
    K6 = complete_graph(6)
    MK6 = GraphicMatroid(K6)
    yield Check(s, "M(G) is 3-connected", three_connected(M))
    Cstar = M.mask([lab for lab in M.labels if lab.startswith("a")])
    yield Check(s, "edges at a form a cocircuit", is_cocircuit(M, Cstar))
    with_k6 = []
    for x in M.names(Cstar):
        if graph_has_minor(M.contract(M.mask(x)).graph, K6) is not None:
            with_k6.append(x)
    yield Check(s, "K6-minor after contracting exactly a-{b,c,d,e,f}", tuple(with_k6) == FIG1_K6_EDGES, str(with_k6))
    for x in FIG1_K6_EDGES:
        S = si(M.contract(M.mask(x)))
        yield Check(s, f"si(M/{x}) is not 3-connected", not three_connected(S))
        yield Check(s, f"co(si(M/{x})) is not 3-connected", not three_connected(co(S)))
    fan = Fan(*(M.index(lab) for lab in ("ad", "cd", "ac", "bc")))
    yield Check(s, "fan (ad, cd, ac, bc) detected", fan in fans(M))
    yield Check(s, "ad and ac lie in C*", bool((Cstar >> fan.x1) & 1 and (Cstar >> fan.x3) & 1))
    ad = M.index("ad")
    seeds = ordered_vertical_3_partitions(M, ad)
    results = [find_minimal_partition(M, Cstar, seed) for seed in seeds]
    ok = bool(seeds) and all(is_minimal_partition(M, Cstar, vp) for vp in results)
    yield Check(s, "minimal partitions from every seed at ad pass the exhaustive check", ok, f"{len(seeds)} seeds")
    oracle = MinorOracle(MK6)
    S = si(M.contract(M.mask("cd")))
    yield Check(s, "si(M/cd) is 3-connected", three_connected(S))
    yield Check(s, "si(M/cd) has an M(K6)-minor", oracle.find(S) is not None)
    v = classify_main(M, MK6, Cstar, M.index("ad"))
    fan_found = any(b.kind is BranchKind.FAN and b.fan == fan for b in v.branches)
    yield Check(s, "main classifier returns the fan branch with (ad, cd, ac, bc)", fan_found, str(sorted({b.kind.value for b in v.branches})))
    t1 = classify_thm1(M, MK6, Cstar, M.index("ad"))
    yield Check(s, "cocircuit form: statement (iii) with (ad, cd, ac, bc)", fan.elements in t1.holds[3])


# -- property suites, oracles and the sweep ----------------------------------------------------


def connectivity_checks(seed: int = 0, trials: int = 200) -> Iterator[Check]:
    yield from _from_results("connectivity", run_connectivity_suite(seed, trials))


def segcoseg_checks(seed: int = 0) -> Iterator[Check]:
    yield from _from_results("segcoseg", run_segcoseg_suite(seed))


def partition_checks(seed: int = 0) -> Iterator[Check]:
    yield from _from_results("partitions", run_partition_suite(seed))


def oracle_checks(seed: int = 0, minor_instances: int = 30) -> Iterator[Check]:
    s = "oracle"
    mismatches = []
    minimal_checked = 0
    for name, M in structure_corpus(seed):
        if not brute_is_3_connected(M):
            mismatches.append(f"{name}: brute force says not 3-connected")
            continue
        table = brute_all_vertical_partitions(M)
        for x in range(M.n):
            fast = sorted((vp.X1, vp.X2, vp.x) for vp in ordered_vertical_3_partitions(M, x))
            if fast != table[x]:
                mismatches.append(f"{name}: vertical partitions differ at {M.labels[x]}")
        for A in [M.full] + cocircuits(M):
            minimal = set(brute_minimal_partitions(M, A, table))
            for x in range(M.n):
                if not (A >> x) & 1:
                    continue
                for X1, X2, _ in table[x]:
                    got = find_minimal_partition(M, A, VerticalPartition(X1, X2, x))
                    minimal_checked += 1
                    if (got.X1, got.X2, got.x) not in minimal:
                        mismatches.append(f"{name}: {got.describe(M)} not minimal by brute force")
    yield Check(s, "vertical and minimal partitions agree with brute force", not mismatches and minimal_checked > 0, "; ".join(mismatches[:3]) or f"{minimal_checked} seeds")

    bad = []
    count = 0
    cat = [(nm, M) for nm, M in default_catalogue(seed) if M.n <= 9]
    for mn, M in cat[:minor_instances]:
        for nn, N in default_targets():
            for x in range(M.n):
                if M.n - 1 < N.n:
                    continue
                for minor in (M.contract(1 << x), M.delete(1 << x)):
                    fast = has_minor(minor, N) is not None
                    slow = naive_has_minor(minor, N) is not None
                    count += 1
                    if fast != slow:
                        bad.append(f"{mn}/{nn} at {M.labels[x]}: fast={fast} naive={slow}")
    yield Check(s, "has_minor agrees with the naive search (n <= 9)", not bad and count > 0, "; ".join(bad[:3]) or f"{count} cases")


def sweep_checks(seed: int = 0, jobs: int = 1) -> Iterator[Check]:
    rep = sweep_catalogue(default_catalogue(seed), default_targets(), jobs=jobs)
    checked = sum(len(r.verdicts) for r in rep.instances)
    yield Check("sweep", "every valid instance has a branch; all witnesses replay", not rep.violations and checked > 0, "; ".join(rep.violations[:3]) or f"{checked} cocircuits, histogram {rep.histogram}")


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "fig1": fig1_checks,
    "fig2": fig2_checks,
    "theta": theta_checks,
    "connectivity": connectivity_checks,
    "segcoseg": segcoseg_checks,
    "partitions": partition_checks,
    "oracle": oracle_checks,
    "sweep": sweep_checks,
}


def run_suites(
    only: list[str] | None = None,
    on_check: Callable[[Check], None] | None = None,
    suites: dict[str, Callable] | None = None,
) -> list[Check]:
    suites = suites or SUITES
    names = only or list(suites)
    out = []
    for name in names:
        gen = suites[name]()
        start = time.perf_counter()
        while True:
            try:
                chk = next(gen)
            except StopIteration:
                break
            except Exception as exc:  # a crashing check is a failing check
                chk = Check(name, f"suite aborted: {type(exc).__name__}", False, str(exc))
                out.append(chk)
                if on_check:
                    on_check(chk)
                break
            chk.seconds = time.perf_counter() - start
            start = time.perf_counter()
            out.append(chk)
            if on_check:
                on_check(chk)
    return out
