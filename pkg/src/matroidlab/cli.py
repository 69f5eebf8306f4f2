"""Command-line entry point: ``matroidlab <command> ...``.

Matroid arguments are either a file (matroid JSON, or a graph edge list) or
a built-in name such as ``uniform:2,4``, ``wheel:4``, ``complete:4``,
``k5e``, ``fig1``, ``fig2``, ``theta:3`` or ``theta-double:3``; append ``*``
for the dual.

Exit codes: 0 success, 1 a check or classification failed, 2 bad usage or
unreadable input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Callable

from . import constructions as cons
from .catalogue import default_catalogue, default_targets
from .connectivity import is_3_connected, low_order_separations, vertical_3_partitions
from .core import Matroid, MatroidError, ParseError, circuits, cocircuits, matroid_from_json, matroid_to_json
from .graphic import GraphicMatroid, format_graph, parse_graph
from .minors import GENERIC_MINOR_CAP, MinorOracle
from .structures import fans, maximal_segments, seg_coseg_pairs, spores, triads, triangles

log = logging.getLogger("matroidlab")


class UsageError(Exception):
    pass


# -- loading ----------------------------------------------------------------------------


def _ints(arg: str, count: int, name: str) -> list[int]:
    try:
        vals = [int(v) for v in arg.split(",")] if arg else []
    except ValueError:
        raise UsageError(f"{name} needs integer parameters, got {arg!r}") from None
    if len(vals) != count:
        raise UsageError(f"{name} needs {count} parameter(s), got {arg!r}")
    return vals


def builtin(spec: str, seed: int = 0) -> Matroid:
    name, _, arg = spec.partition(":")
    if name == "uniform":
        r, n = _ints(arg, 2, name)
        return cons.uniform(r, n)
    if name == "wheel":
        return cons.wheel(*_ints(arg, 1, name))
    if name == "complete":
        return cons.complete(*_ints(arg, 1, name))
    if name == "k5e":
        return cons.k5_minus_e()
    if name == "fig1":
        return GraphicMatroid(cons.fig1_graph())
    if name == "fig2":
        return GraphicMatroid(cons.fig2_graph())
    if name == "theta":
        return cons.theta(*_ints(arg, 1, name), seed=seed)
    if name == "theta-double":
        return cons.theta_double(*_ints(arg, 1, name), seed=seed)
    raise UsageError(f"unknown matroid {spec!r} (not a file or a built-in name)")


def load(spec: str, seed: int = 0) -> Matroid:
    dual = spec.endswith("*")
    base = spec[:-1] if dual else spec
    if os.path.exists(base):
        with open(base, encoding="utf-8") as fh:
            text = fh.read()
        M: Matroid = matroid_from_json(text) if text.lstrip().startswith("{") else GraphicMatroid(parse_graph(text))
    else:
        M = builtin(base, seed)
    return M.dual() if dual else M


def parse_set(M: Matroid, arg: str) -> int:
    try:
        return M.mask([s.strip() for s in arg.split(",") if s.strip()])
    except KeyError as exc:
        raise UsageError(str(exc)) from None


# -- output helpers -----------------------------------------------------------------------


def emit(args, data: dict, text: Callable[[], str]) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text())


def _family(M: Matroid, sets: list[int]) -> list[list[str]]:
    return [M.names(X) for X in sets]


def _braces(names: list[str]) -> str:
    return "{" + ",".join(names) + "}"


# -- commands ------------------------------------------------------------------------------


def cmd_build(args) -> int:
    M = load(args.matroid, args.seed)
    if args.graph:
        if not isinstance(M, GraphicMatroid):
            raise UsageError("--graph only applies to graphic matroids")
        out = format_graph(M.graph)
    else:
        if not M.has_table or M.n > 16:
            raise UsageError(f"{M.n} elements is too many for a bases listing; use --graph")
        out = json.dumps(matroid_to_json(M), indent=None) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def _inspect_data(M: Matroid, max_size: int) -> dict:
    ok, sep = is_3_connected(M)
    data: dict = {"n": M.n, "rank": M.r, "labels": list(M.labels), "3-connected": ok}
    if sep is not None:
        data["separation"] = {"order": sep.k, "side": M.names(sep.X), "other": M.names(M.full & ~sep.X)}
    if M.n <= 16:
        data["circuits"] = _family(M, [C for C in circuits(M) if C.bit_count() <= max_size])
        data["cocircuits"] = _family(M, [C for C in cocircuits(M) if C.bit_count() <= max_size])
    data["triangles"] = _family(M, triangles(M))
    data["triads"] = _family(M, triads(M))
    data["fans"] = [f.names(M) for f in fans(M)]
    data["segments"] = _family(M, maximal_segments(M))
    data["cosegments"] = _family(M, maximal_segments(M.dual())) if M.n <= 16 else None
    data["seg_coseg_pairs"] = [
        {"L": [M.labels[x] for x in p.xs], "Lstar": [M.labels[y] for y in p.ys]} for p in seg_coseg_pairs(M)
    ]
    data["spores"] = [{"P": M.names(sp.P), "s": M.labels[sp.s]} for sp in spores(M)]
    return data


def cmd_inspect(args) -> int:
    M = load(args.matroid, args.seed)
    data = _inspect_data(M, args.max_size)

    def text() -> str:
        lines = [f"elements: {M.n}; rank: {M.r}"]
        conn = "yes" if data["3-connected"] else "no"
        if "separation" in data:
            s = data["separation"]
            conn += f" ({s['order']}-separation {_braces(s['side'])} | {_braces(s['other'])})"
        lines.append(f"3-connected: {conn}")
        for key in ("circuits", "cocircuits", "triangles", "triads", "segments", "cosegments"):
            fam = data.get(key)
            if fam is None:
                continue
            shown = "; ".join(_braces(X) for X in fam) or "none"
            bound = f" (size <= {args.max_size})" if key in ("circuits", "cocircuits") else ""
            lines.append(f"{key}{bound}: {shown}")
        lines.append(f"fans: {len(data['fans'])}")
        lines.append(f"seg-coseg pairs: {len(data['seg_coseg_pairs'])}")
        lines.append(f"spores: {len(data['spores'])}")
        return "\n".join(lines)

    emit(args, data, text)
    return 0


DETECTORS = ("triangles", "triads", "fans", "segments", "cosegments", "seg-coseg", "spores", "separations", "vertical")


def cmd_detect(args) -> int:
    M = load(args.matroid, args.seed)
    kind = args.kind
    if kind == "triangles":
        items = [_braces(X) for X in _family(M, triangles(M))]
    elif kind == "triads":
        items = [_braces(X) for X in _family(M, triads(M))]
    elif kind == "fans":
        items = ["(" + ", ".join(f.names(M)) + ")" for f in fans(M)]
    elif kind == "segments":
        items = [_braces(X) for X in _family(M, maximal_segments(M))]
    elif kind == "cosegments":
        items = [_braces(X) for X in _family(M, maximal_segments(M.dual()))]
    elif kind == "seg-coseg":
        items = [p.describe(M) for p in seg_coseg_pairs(M)]
    elif kind == "spores":
        items = [sp.describe(M) for sp in spores(M)]
    elif kind == "separations":
        items = [s.describe(M) for s in low_order_separations(M)]
    else:
        if args.element is None:
            raise UsageError("--element is required for vertical partitions")
        x = M.index(args.element) if args.element in M.labels else None
        if x is None:
            raise UsageError(f"no element labelled {args.element!r}")
        items = [vp.describe(M) for vp in vertical_3_partitions(M, x)]
    emit(args, {"kind": kind, "found": items}, lambda: "\n".join(items) if items else f"no {kind} found")
    return 0


def cmd_classify(args) -> int:
    from .theorem import InstanceContext, classify_dual, classify_dual_via_thm1, classify_main, classify_thm1

    M = load(args.matroid, args.seed)
    N = load(args.target, args.seed)
    S = parse_set(M, args.set)
    if args.x0 not in M.labels:
        raise UsageError(f"no element labelled {args.x0!r}")
    x0 = M.index(args.x0)
    if args.form == "main":
        ctx = InstanceContext(M, N, MinorOracle(N, args.cap))
        v = classify_main(M, N, S, x0, ctx=ctx, short_circuit=args.short_circuit, names=(args.matroid, args.target))
        data = v.to_json(M)

        def text() -> str:
            lines = [f"branches holding: {len(v.branches)}"]
            for b in v.branches:
                lines.append("  " + json.dumps(b.to_json(M)))
            if v.candidates:
                lines.append(f"unconfirmed seg-coseg candidates: {len(v.candidates)}")
            return "\n".join(lines)

        emit(args, data, text)
        return 0 if v.branches else 1
    if args.form == "thm1":
        sv = classify_thm1(M, N, S, x0)
    else:
        sv = classify_dual(M, N, S, x0)
        if sv.holds != classify_dual_via_thm1(M, N, S, x0).holds:
            print("circuit form disagrees with the dualized cocircuit form", file=sys.stderr)
            return 1

    def show(w) -> object:
        return M.labels[w] if isinstance(w, int) else [M.labels[e] for e in w]

    data = {str(k): [show(w) for w in ws] for k, ws in sv.holds.items()}

    def text() -> str:
        lines = []
        for k, ws in sv.holds.items():
            roman = {1: "i", 2: "ii", 3: "iii"}[k]
            lines.append(f"({roman}) {'holds' if ws else 'fails'}" + (f": {data[str(k)]}" if ws else ""))
        return "\n".join(lines)

    emit(args, data, text)
    return 0 if sv.statements() else 1


def cmd_sweep(args) -> int:
    from .properties import run_connectivity_suite, run_segcoseg_suite, run_partition_suite
    from .theorem import sweep_catalogue

    rep = sweep_catalogue(default_catalogue(args.seed), default_targets(), jobs=args.jobs, cap=args.cap)
    data = rep.to_json()
    failed = bool(rep.violations)
    if not args.no_properties:
        props = run_connectivity_suite(args.seed, args.trials) + run_segcoseg_suite(args.seed) + run_partition_suite(args.seed)
        data["properties"] = [p.to_json() for p in props]
        failed |= not all(p.passed for p in props)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)

    def text() -> str:
        lines = [f"instances: {len(rep.instances)}; cocircuits classified: {data['checked']}"]
        lines.append("branch histogram: " + ", ".join(f"{k}={v}" for k, v in sorted(rep.histogram.items())))
        lines.append(f"violations: {len(rep.violations)}")
        lines += ["  " + v for v in rep.violations[:20]]
        lines.append(f"flags: {len(rep.flags)}")
        for p in data.get("properties", []):
            lines.append(f"{'PASS' if p['passed'] else 'FAIL'} property {p['name']} ({p['cases']} cases)")
        return "\n".join(lines)

    emit(args, data, text)
    return 1 if failed else 0


def cmd_verify_paper(args) -> int:
    from . import named_checks

    only = None
    if args.only:
        only = [s.strip() for part in args.only for s in part.split(",") if s.strip()]
        unknown = [s for s in only if s not in named_checks.SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {unknown}; choose from {sorted(named_checks.SUITES)}")
    suites = dict(named_checks.SUITES)
    if args.fixture:
        with open(args.fixture, encoding="utf-8") as fh:
            fixture_text = fh.read()
        suites["fig1"] = lambda: named_checks.fig1_checks(fixture_text)
    printer = None if args.format == "json" else (lambda c: print(c.line(), flush=True))
    checks = named_checks.run_suites(only, printer, suites)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        print(json.dumps({"checks": [c.to_json() for c in checks], "passed": not failed}, indent=2))
    else:
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        print(f"first failing check: [{failed[0].suite}] {failed[0].name}", file=sys.stderr)
        return 1
    return 0


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for the theta realizations")
    common.add_argument("--cap", type=int, default=GENERIC_MINOR_CAP, help="element cap for the generic minor search")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="matroidlab", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="write a built-in matroid to JSON or an edge list")
    b.add_argument("matroid")
    b.add_argument("-o", "--output")
    b.add_argument("--graph", action="store_true", help="write the graph edge list instead of bases")
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("inspect", parents=[common], help="rank, connectivity and structures")
    i.add_argument("matroid")
    i.add_argument("--max-size", type=int, default=4, help="largest circuit/cocircuit to list")
    i.set_defaults(func=cmd_inspect)

    d = sub.add_parser("detect", parents=[common], help="run one structure detector")
    d.add_argument("matroid")
    d.add_argument("--kind", choices=DETECTORS, required=True)
    d.add_argument("--element", help="apex for vertical partitions")
    d.set_defaults(func=cmd_detect)

    c = sub.add_parser("classify", parents=[common], help="classify a (M, N, C*, x0) instance")
    c.add_argument("matroid")
    c.add_argument("target", help="the matroid N")
    c.add_argument("--set", required=True, help="comma-separated labels of the cocircuit (or circuit for --form dual)")
    c.add_argument("--x0", required=True)
    c.add_argument("--form", choices=("main", "thm1", "dual"), default="main")
    c.add_argument("--short-circuit", action="store_true", help="stop at the first branch that holds")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sweep", parents=[common], help="classify the whole catalogue")
    s.add_argument("-o", "--output", help="write the JSON report here")
    s.add_argument("--trials", type=int, default=200, help="random trials for the property suite")
    s.add_argument("--no-properties", action="store_true")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify-paper", parents=[common], help="run every named check")
    v.add_argument("--only", action="append", help="suite name(s), comma-separated")
    v.add_argument("--fixture", help="alternative edge list for the 24-edge graph")
    v.set_defaults(func=cmd_verify_paper)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MatroidError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
