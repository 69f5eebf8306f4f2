"""Acceptance gate: the eight named suites, each under its wall-clock budget.

Every test prints one ``PASS``/``FAIL`` line for its criterion (with output
capture disabled so the line shows up in a plain ``pytest -v`` run).
"""

import time

import pytest

from matroidlab.named_checks import run_suites

CRITERIA = [
    # (criterion, suite, seconds)
    ("1 fig2 worked example", "fig2", 10),
    ("2 theta construction", "theta", 60),
    ("3 fig1 fan example", "fig1", 5 * 60),
    ("4 main-theorem sweep", "sweep", 30 * 60),
    ("5 connectivity property suites", "connectivity", 10 * 60),
    ("6 segment-cosegment property suite", "segcoseg", 10 * 60),
    ("7 vertical partition property suite", "partitions", 15 * 60),
    ("8 oracle equivalence", "oracle", 5 * 60),
]


@pytest.mark.parametrize("criterion,suite,budget", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(criterion, suite, budget, capsys):
    start = time.perf_counter()
    checks = run_suites([suite])
    elapsed = time.perf_counter() - start
    failed = [c for c in checks if not c.passed]
    ok = bool(checks) and not failed and elapsed < budget
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n{status} criterion {criterion}: {len(checks) - len(failed)}/{len(checks)} checks, "
              f"{elapsed:.1f}s (budget {budget}s)")
        for c in failed:
            print("    " + c.line())
    assert checks, f"suite {suite} produced no checks"
    assert not failed, "; ".join(c.line() for c in failed)
    assert elapsed < budget, f"{suite} took {elapsed:.1f}s, budget {budget}s"
