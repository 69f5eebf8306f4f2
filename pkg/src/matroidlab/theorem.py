"""Branch classifiers for the cocircuit-contraction theorem and its relatives.

Given 3-connected M and N (|E(N)| >= 4), a cocircuit C* of M and x0 in C*
with an N-minor in M / x0, :func:`classify_main` reports every outcome that
holds among

  (i)   some x in C* with si(M / x) 3-connected with an N-minor;
  (ii)  a four-element fan (x1, x2, x3, x4) with x1, x3 in C* and
        si(M / x2) 3-connected with an N-minor;
  (iii) a seg-coseg pair with L inside C* and cl(L) - L = {e};
  (iv)  a seg-coseg pair with L a flat and |L - C*| <= 1;

each with a witness that can be replayed.  For (iii)/(iv) the attached
consequences (3-connectivity and N-minors of the relevant contractions,
unique spores of M / x_i) are checked as well; a pair whose consequences do
not all hold is kept as an unconfirmed candidate instead of a branch.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from .bits import iter_bits
from .connectivity import three_connected
from .core import Matroid, MatroidError, closure, co, cocircuits, is_circuit, is_cocircuit, si
from .minors import GENERIC_MINOR_CAP, MinorOracle, MinorWitness, oracle_for
from .structures import Fan, SegCosegPair, fans, is_3conn_up_to_unique_spore, seg_coseg_pairs, triads, triangles


class HypothesisViolated(MatroidError):
    def __init__(self, which: str):
        super().__init__(which)
        self.which = which


class BranchKind(str, Enum):
    SI_OK = "SiOk"
    FAN = "Fan"
    SEG_COSEG_WITH_E = "SegCosegWithE"
    SEG_COSEG_FLAT = "SegCosegFlat"


@dataclass
class Branch:
    kind: BranchKind
    element: int | None = None  # x for SiOk, e for SegCosegWithE
    fan: Fan | None = None
    pair: SegCosegPair | None = None
    minor: MinorWitness | None = None  # N-minor of the contraction that matters
    claims: dict = field(default_factory=dict)
    small_complement: bool = False  # |E - cl(L)| < 4, flagged for review

    def to_json(self, M: Matroid) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.element is not None:
            out["element"] = M.labels[self.element]
        if self.fan is not None:
            out["fan"] = self.fan.names(M)
        if self.pair is not None:
            out["L"] = [M.labels[x] for x in self.pair.xs]
            out["Lstar"] = [M.labels[y] for y in self.pair.ys]
        if self.claims:
            out["claims"] = dict(self.claims)
        if self.small_complement:
            out["flag"] = "|E - cl(L)| < 4"
        return out


@dataclass
class TheoremVerdict:
    M_name: str
    N_name: str
    cstar: int
    x0: int
    branches: list[Branch]
    candidates: list[Branch] = field(default_factory=list)  # structure present, consequences failed

    def kinds(self) -> set[BranchKind]:
        return {b.kind for b in self.branches}

    @property
    def ok(self) -> bool:
        return bool(self.branches)

    def to_json(self, M: Matroid) -> dict:
        return {
            "M": self.M_name,
            "N": self.N_name,
            "cocircuit": M.names(self.cstar),
            "x0": M.labels[self.x0],
            "branches": [b.to_json(M) for b in self.branches],
            "unconfirmed": [b.to_json(M) for b in self.candidates],
        }


class InstanceContext:
    """Per-(M, N) caches for contractions, simplifications and minor tests."""

    def __init__(self, M: Matroid, N: Matroid, oracle: MinorOracle | None = None):
        self.M = M
        self.N = N
        self.oracle = oracle or oracle_for(N)
        self._contract: dict[int, Matroid] = {}
        self._si: dict[int, Matroid] = {}
        self._cosi: dict[int, Matroid] = {}

    def contract(self, C: int) -> Matroid:
        if C not in self._contract:
            self._contract[C] = self.M.contract(C)
        return self._contract[C]

    def si_contract(self, x: int) -> Matroid:
        if x not in self._si:
            self._si[x] = si(self.contract(1 << x))
        return self._si[x]

    def co_si_contract(self, x: int) -> Matroid:
        if x not in self._cosi:
            self._cosi[x] = co(self.si_contract(x))
        return self._cosi[x]

    def good(self, minor: Matroid) -> tuple[bool, MinorWitness | None]:
        """(3-connected and has an N-minor, the minor witness)."""
        if not three_connected(minor):
            return False, None
        w = self.oracle.find(minor)
        return w is not None, w

    def has_n_minor(self, minor: Matroid) -> bool:
        return self.oracle.find(minor) is not None


def check_hypotheses(ctx: InstanceContext, cstar: int, x0: int) -> None:
    M, N = ctx.M, ctx.N
    if not three_connected(M):
        raise HypothesisViolated("M is not 3-connected")
    if not three_connected(N):
        raise HypothesisViolated("N is not 3-connected")
    if N.n < 4:
        raise HypothesisViolated("|E(N)| < 4")
    if not is_cocircuit(M, cstar):
        raise HypothesisViolated("C* is not a cocircuit of M")
    if not (cstar >> x0) & 1:
        raise HypothesisViolated("x0 is not in C*")
    if not ctx.has_n_minor(ctx.contract(1 << x0)):
        raise HypothesisViolated("M / x0 has no N-minor")


def _spore_claim(ctx: InstanceContext, x: int, P: int, y: int) -> bool:
    """Is M / x 3-connected up to the unique spore (P - x, y)?  P, y in M's indexing."""
    M = ctx.M
    Mx = ctx.contract(1 << x)
    sp = is_3conn_up_to_unique_spore(Mx)
    if sp is None:
        return False
    want = set(M.names(P & ~(1 << x)))
    return set(Mx.names(sp.P)) == want and Mx.labels[sp.s] == M.labels[y]


def _pair_claims(ctx: InstanceContext, pair: SegCosegPair, cl_L: int) -> dict:
    out = {}
    for x, y in zip(pair.xs, pair.ys):
        out[f"unique spore in M/{ctx.M.labels[x]}"] = _spore_claim(ctx, x, cl_L, y)
    return out


def classify_main(
    M: Matroid,
    N: Matroid,
    cstar: int,
    x0: int,
    *,
    ctx: InstanceContext | None = None,
    short_circuit: bool = False,
    names: tuple[str, str] = ("M", "N"),
    hypotheses: bool = True,
) -> TheoremVerdict:
    ctx = ctx or InstanceContext(M, N)
    if hypotheses:
        check_hypotheses(ctx, cstar, x0)
    verdict = TheoremVerdict(names[0], names[1], cstar, x0, [])

    # (i)
    for x in iter_bits(cstar):
        ok, w = ctx.good(ctx.si_contract(x))
        if ok:
            verdict.branches.append(Branch(BranchKind.SI_OK, element=x, minor=w))
    if short_circuit and verdict.branches:
        return verdict

    # (ii)
    for fan in fans(M):
        if (cstar >> fan.x1) & 1 and (cstar >> fan.x3) & 1:
            ok, w = ctx.good(ctx.si_contract(fan.x2))
            if ok:
                verdict.branches.append(Branch(BranchKind.FAN, fan=fan, minor=w))
    if short_circuit and verdict.branches:
        return verdict

    # (iii) and (iv)
    for pair in seg_coseg_pairs(M):
        L = pair.L
        cl_L = closure(M, L)
        extra = cl_L & ~L
        small = (M.full & ~cl_L).bit_count() < 4
        if L & ~cstar == 0 and extra.bit_count() == 1:
            e = extra.bit_length() - 1
            claims = {"e not in C*": not (cstar >> e) & 1}
            ok_e, _ = ctx.good(ctx.si_contract(e))
            claims["si(M/e) 3-connected with N-minor"] = ok_e
            ok_cl, w = ctx.good(ctx.contract(cl_L))
            claims["M/cl(L) 3-connected with N-minor"] = ok_cl
            claims.update(_pair_claims(ctx, pair, cl_L))
            b = Branch(BranchKind.SEG_COSEG_WITH_E, element=e, pair=pair, minor=w, claims=claims, small_complement=small)
            (verdict.branches if all(claims.values()) else verdict.candidates).append(b)
        if extra == 0 and (L & ~cstar).bit_count() <= 1:
            claims = {}
            ok_l, w = ctx.good(ctx.contract(L))
            claims["M/L 3-connected with N-minor"] = ok_l
            claims.update(_pair_claims(ctx, pair, L))
            b = Branch(BranchKind.SEG_COSEG_FLAT, pair=pair, minor=w, claims=claims, small_complement=small)
            (verdict.branches if all(claims.values()) else verdict.candidates).append(b)
        if short_circuit and verdict.branches:
            return verdict
    return verdict


def replay_branch(M: Matroid, N: Matroid, cstar: int, b: Branch) -> bool:
    """Independently re-check a reported branch from scratch."""
    oracle = MinorOracle(N)

    def good(minor: Matroid) -> bool:
        return three_connected(minor) and oracle.find(minor) is not None

    if b.kind is BranchKind.SI_OK:
        return bool((cstar >> b.element) & 1) and good(si(M.contract(1 << b.element)))
    if b.kind is BranchKind.FAN:
        f = b.fan
        return f.verify(M) and (cstar >> f.x1) & 1 == 1 and (cstar >> f.x3) & 1 == 1 and good(si(M.contract(1 << f.x2)))
    pair = b.pair
    if not pair.verify(M):
        return False
    ctx = InstanceContext(M, N, oracle)
    cl_L = closure(M, pair.L)
    if b.kind is BranchKind.SEG_COSEG_WITH_E:
        extra = cl_L & ~pair.L
        if pair.L & ~cstar or extra != 1 << b.element or (cstar >> b.element) & 1:
            return False
        if not good(si(M.contract(extra))) or not good(M.contract(cl_L)):
            return False
    else:
        if cl_L != pair.L or (pair.L & ~cstar).bit_count() > 1 or not good(M.contract(pair.L)):
            return False
    return all(_spore_claim(ctx, x, cl_L, y) for x, y in zip(pair.xs, pair.ys))


# -- the three-statement form ---------------------------------------------------------


@dataclass
class StatementVerdict:
    """Which numbered statements hold, each with its witnesses."""

    holds: dict[int, list] = field(default_factory=lambda: {1: [], 2: [], 3: []})

    def statements(self) -> set[int]:
        return {k for k, v in self.holds.items() if v}


def _sequences(M: Matroid) -> list[tuple[int, int, int, int]]:
    """(x1, x2, x3, x4) with {x1,x2,x3} a circuit and {x2,x3,x4} a cocircuit.

    Unlike :func:`fans`, x4 == x1 is allowed here.
    """
    out = []
    tds = triads(M)
    for T in triangles(M):
        els = list(iter_bits(T))
        for x1 in els:
            for x2 in els:
                for x3 in els:
                    if len({x1, x2, x3}) != 3:
                        continue
                    pair = (1 << x2) | (1 << x3)
                    for D in tds:
                        if D & pair == pair:
                            out.append((x1, x2, x3, (D & ~pair).bit_length() - 1))
    return sorted(set(out))


def classify_thm1(M: Matroid, N: Matroid, cstar: int, x0: int, *, ctx: InstanceContext | None = None) -> StatementVerdict:
    ctx = ctx or InstanceContext(M, N)
    check_hypotheses(ctx, cstar, x0)
    v = StatementVerdict()
    for x in iter_bits(cstar):
        if ctx.good(ctx.si_contract(x))[0]:
            v.holds[1].append(x)
        if ctx.good(ctx.co_si_contract(x))[0]:
            v.holds[2].append(x)
    for seq in _sequences(M):
        x1, x2, x3, _ = seq
        if (cstar >> x1) & 1 and (cstar >> x3) & 1 and ctx.good(ctx.si_contract(x2))[0]:
            v.holds[3].append(seq)
    return v


def classify_dual(M: Matroid, N: Matroid, circuit: int, x0: int) -> StatementVerdict:
    """The circuit/deletion form, evaluated directly on M."""
    oracle = oracle_for(N)
    if not three_connected(M) or not three_connected(N) or N.n < 4:
        raise HypothesisViolated("M and N must be 3-connected with |E(N)| >= 4")
    if not is_circuit(M, circuit) or not (circuit >> x0) & 1:
        raise HypothesisViolated("C is not a circuit of M containing x0")
    if oracle.find(M.delete(1 << x0)) is None:
        raise HypothesisViolated("M \\ x0 has no N-minor")

    def good(minor: Matroid) -> bool:
        return three_connected(minor) and oracle.find(minor) is not None

    v = StatementVerdict()
    co_del: dict[int, Matroid] = {}
    for x in iter_bits(circuit):
        co_del[x] = co(M.delete(1 << x))
        if good(co_del[x]):
            v.holds[1].append(x)
        if good(si(co_del[x])):
            v.holds[2].append(x)
    for y1, y2, y3, y4 in _sequences(M):
        if (circuit >> y2) & 1 and (circuit >> y4) & 1:
            if y3 not in co_del:
                co_del[y3] = co(M.delete(1 << y3))
            if good(co_del[y3]):
                v.holds[3].append((y1, y2, y3, y4))
    return v


def classify_dual_via_thm1(M: Matroid, N: Matroid, circuit: int, x0: int) -> StatementVerdict:
    """The same verdict obtained by dualizing and running the cocircuit form."""
    inner = classify_thm1(M.dual(), N.dual(), circuit, x0)
    v = StatementVerdict()
    v.holds[1] = list(inner.holds[1])
    v.holds[2] = list(inner.holds[2])
    v.holds[3] = sorted((x4, x3, x2, x1) for x1, x2, x3, x4 in inner.holds[3])
    return v


def thm1_bridge_violations(M: Matroid, N: Matroid, verdict: TheoremVerdict, thm1: StatementVerdict) -> list[str]:
    """A seg-coseg branch with |E - cl(L)| >= 4 must give statement (ii) of the three-statement form."""
    out = []
    for b in verdict.branches:
        if b.kind in (BranchKind.SEG_COSEG_WITH_E, BranchKind.SEG_COSEG_FLAT) and not b.small_complement:
            if not thm1.holds[2]:
                out.append(f"{b.kind.value} branch without statement (ii)")
    return out


# -- catalogue sweep ------------------------------------------------------------------


@dataclass
class InstanceReport:
    M_name: str
    N_name: str
    skipped: str | None = None
    verdicts: list[dict] = field(default_factory=list)
    histogram: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class SweepReport:
    instances: list[InstanceReport] = field(default_factory=list)

    @property
    def histogram(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.instances:
            for k, v in r.histogram.items():
                out[k] = out.get(k, 0) + v
        return out

    @property
    def violations(self) -> list[str]:
        return [f"{r.M_name}/{r.N_name}: {v}" for r in self.instances for v in r.violations]

    @property
    def flags(self) -> list[str]:
        return [f"{r.M_name}/{r.N_name}: {f}" for r in self.instances for f in r.flags]

    def merge(self, other: "SweepReport") -> "SweepReport":
        return SweepReport(self.instances + other.instances)

    def to_json(self) -> dict:
        return {
            "instances": [
                {
                    "M": r.M_name,
                    "N": r.N_name,
                    "skipped": r.skipped,
                    "verdicts": r.verdicts,
                    "histogram": r.histogram,
                    "violations": r.violations,
                    "flags": r.flags,
                    "seconds": round(r.seconds, 4),
                }
                for r in self.instances
            ],
            "histogram": self.histogram,
            "violations": self.violations,
            "flags": self.flags,
            "checked": sum(len(r.verdicts) for r in self.instances),
        }


def sweep_instance(M_name: str, M: Matroid, N_name: str, N: Matroid, cap: int = GENERIC_MINOR_CAP) -> InstanceReport:
    """Classify every (C*, x0) of one (M, N) pair.

    The branch search does not depend on x0 beyond the hypothesis, so each
    cocircuit is classified once and the qualifying x0 values are recorded.
    """
    start = time.perf_counter()
    rep = InstanceReport(M_name, N_name)
    if not three_connected(M):
        rep.skipped = "M not 3-connected"
        return rep
    if not three_connected(N) or N.n < 4:
        rep.skipped = "N not 3-connected with at least four elements"
        return rep
    ctx = InstanceContext(M, N, MinorOracle(N, cap))
    for cstar in cocircuits(M):
        if M.n - 1 < N.n:
            break
        x0s = [x for x in iter_bits(cstar) if ctx.has_n_minor(ctx.contract(1 << x))]
        if not x0s:
            continue
        verdict = classify_main(M, N, cstar, x0s[0], ctx=ctx, names=(M_name, N_name), hypotheses=False)
        record = verdict.to_json(M)
        record["x0"] = [M.labels[x] for x in x0s]
        rep.verdicts.append(record)
        for b in verdict.branches:
            rep.histogram[b.kind.value] = rep.histogram.get(b.kind.value, 0) + 1
            if b.small_complement:
                rep.flags.append(f"C*={M.fmt(cstar)}: {b.kind.value} fired with |E - cl(L)| < 4")
            if not replay_branch(M, N, cstar, b):
                rep.violations.append(f"C*={M.fmt(cstar)}: {b.kind.value} witness failed to replay")
        if not verdict.branches:
            rep.violations.append(f"C*={M.fmt(cstar)}, x0 in {M.names(sum(1 << x for x in x0s))}: no branch holds")
    rep.seconds = time.perf_counter() - start
    return rep


def _sweep_job(job):
    return sweep_instance(*job)


def sweep_catalogue(
    catalogue: list[tuple[str, Matroid]],
    targets: list[tuple[str, Matroid]],
    jobs: int = 1,
    cap: int = GENERIC_MINOR_CAP,
) -> SweepReport:
    work = [(mn, M, nn, N, cap) for mn, M in catalogue for nn, N in targets]
    if jobs > 1 and len(work) > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            reports = pool.map(_sweep_job, work)
    else:
        reports = [_sweep_job(w) for w in work]
    return SweepReport(reports)
