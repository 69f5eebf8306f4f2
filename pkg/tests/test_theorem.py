import re

import pytest

from matroidlab.catalogue import default_catalogue
from matroidlab.constructions import complete, fig1_graph, k5_minus_e, theta_double, theta_double_circuit, uniform, wheel
from matroidlab.core import cocircuits, iter_bits
from matroidlab.graphic import GraphicMatroid
from matroidlab.theorem import (
    BranchKind,
    HypothesisViolated,
    SweepReport,
    classify_dual,
    classify_dual_via_thm1,
    classify_main,
    classify_thm1,
    replay_branch,
    sweep_catalogue,
)


def _strip_times(report: SweepReport) -> dict:
    js = report.to_json()
    for inst in js["instances"]:
        inst.pop("seconds")
    return js


def test_theta_double_dual_gives_seg_coseg_branch():
    D = theta_double(3).dual()
    C = theta_double_circuit(3)
    K4 = complete(4)
    for x0 in iter_bits(C):
        v = classify_main(D, K4, C, x0)
        assert v.kinds() & {BranchKind.SEG_COSEG_WITH_E, BranchKind.SEG_COSEG_FLAT}
        assert BranchKind.SI_OK not in v.kinds()
        assert BranchKind.FAN not in v.kinds()
        assert all(replay_branch(D, K4, C, b) for b in v.branches)


def test_fig1_gives_fan_branch():
    M = GraphicMatroid(fig1_graph())
    K6 = complete(6)
    star = M.mask([lab for u, v, lab in M.graph.edges if 0 in (u, v)])
    v = classify_main(M, K6, star, M.index("ad"))
    assert BranchKind.FAN in v.kinds()
    assert BranchKind.SI_OK not in v.kinds()
    fans = [b.fan.names(M) for b in v.branches if b.kind == BranchKind.FAN]
    assert ["ad", "cd", "ac", "bc"] in fans


def test_u36_gives_si_ok_everywhere():
    U = uniform(3, 6)
    N = uniform(2, 4)
    for cstar in cocircuits(U):
        v = classify_main(U, N, cstar, (cstar & -cstar).bit_length() - 1)
        si_ok = {b.element for b in v.branches if b.kind == BranchKind.SI_OK}
        assert si_ok == set(iter_bits(cstar))


def test_short_circuit_stops_after_first_branch_kind():
    D = theta_double(3).dual()
    C = theta_double_circuit(3)
    x0 = (C & -C).bit_length() - 1
    full = classify_main(D, complete(4), C, x0)
    quick = classify_main(D, complete(4), C, x0, short_circuit=True)
    assert len(quick.branches) == 1
    assert quick.branches[0] in full.branches


@pytest.mark.parametrize(
    "M,N,cstar,x0,which",
    [
        (uniform(1, 4), uniform(2, 4), 0b1111, 0, "3-connected"),
        (wheel(4), uniform(2, 3), None, 0, "|E(N)|"),
        (uniform(3, 6), uniform(2, 4), 0b000111, 0, "cocircuit"),
        (uniform(3, 6), uniform(3, 5), 0b001111, 0, "N-minor"),
    ],
)
def test_hypotheses_enforced(M, N, cstar, x0, which):
    if cstar is None:
        cstar = cocircuits(M)[0]
        x0 = (cstar & -cstar).bit_length() - 1
    with pytest.raises(HypothesisViolated, match=re.escape(which)):
        classify_main(M, N, cstar, x0)


def test_x0_outside_cocircuit():
    U = uniform(3, 6)
    cstar = 0b001111
    with pytest.raises(HypothesisViolated, match="x0"):
        classify_main(U, uniform(2, 4), cstar, 5)


def test_thm1_examples():
    D = k5_minus_e().dual()
    C = D.mask(list("abcd"))
    v = classify_thm1(D, complete(4), C, D.index("a"))
    assert 1 not in v.statements()
    assert sorted(v.holds[2]) == sorted(iter_bits(C))

    U = uniform(3, 6)
    v = classify_thm1(U, uniform(2, 4), 0b001111, 0)
    assert v.holds[1] == [0, 1, 2, 3]


def test_thm1_fig1_sequence():
    M = GraphicMatroid(fig1_graph())
    star = M.mask([lab for u, v, lab in M.graph.edges if 0 in (u, v)])
    v = classify_thm1(M, complete(6), star, M.index("ad"))
    assert v.statements() == {3}
    seqs = [[M.labels[e] for e in s] for s in v.holds[3]]
    assert ["ad", "cd", "ac", "bc"] in seqs


def test_circuit_form_examples():
    M = k5_minus_e()
    C = M.mask(list("abcd"))
    v = classify_dual(M, complete(4), C, M.index("a"))
    assert 1 not in v.statements() and 2 in v.statements()
    assert v.holds == classify_dual_via_thm1(M, complete(4), C, M.index("a")).holds

    Ud = uniform(3, 6).dual()
    v = classify_dual(Ud, uniform(2, 4), 0b001111, 0)
    assert v.holds[1] == [0, 1, 2, 3]


def test_circuit_form_fig1_dual():
    M = GraphicMatroid(fig1_graph()).dual()
    K6d = complete(6).dual()
    star = M.mask([lab for u, v, lab in fig1_graph().edges if 0 in (u, v)])
    v = classify_dual(M, K6d, star, M.index("ad"))
    assert v.statements() == {3}
    seqs = [[M.labels[e] for e in s] for s in v.holds[3]]
    assert ["bc", "ac", "cd", "ad"] in seqs
    assert v.holds == classify_dual_via_thm1(M, K6d, star, M.index("ad")).holds


def test_circuit_form_needs_a_circuit():
    U = uniform(3, 6)
    with pytest.raises(HypothesisViolated):
        classify_dual(U, uniform(2, 4), 0b000111, 0)


def test_sweep_empty_catalogue():
    rep = sweep_catalogue([], [("U2,4", uniform(2, 4))])
    assert rep.to_json()["instances"] == [] and rep.histogram == {} and rep.violations == []


def test_sweep_repeated_instance_is_idempotent():
    one = sweep_catalogue([("W4", wheel(4))], [("M(K4)", complete(4))])
    two = sweep_catalogue([("W4", wheel(4)), ("W4", wheel(4))], [("M(K4)", complete(4))])
    a, b = _strip_times(one), _strip_times(two)
    assert b["instances"] == a["instances"] * 2
    assert b["histogram"] == {k: 2 * v for k, v in a["histogram"].items()}
    assert not two.violations


def test_sweep_merge_is_concatenation():
    a = sweep_catalogue([("W3", wheel(3))], [("U2,4", uniform(2, 4))])
    b = sweep_catalogue([("W4", wheel(4))], [("U2,4", uniform(2, 4))])
    both = sweep_catalogue([("W3", wheel(3)), ("W4", wheel(4))], [("U2,4", uniform(2, 4))])
    assert _strip_times(a.merge(b)) == _strip_times(both)


def test_sweep_skips_non_three_connected():
    cands = default_catalogue(include_skipped=True)
    bad = [(n, M) for n, M in cands if n == "U1,4"]
    rep = sweep_catalogue(bad, [("U2,4", uniform(2, 4))])
    assert rep.instances[0].skipped


def test_sweep_parallel_matches_serial():
    cat = [("W4", wheel(4)), ("U3,6", uniform(3, 6))]
    tg = [("U2,4", uniform(2, 4))]
    assert _strip_times(sweep_catalogue(cat, tg, jobs=2)) == _strip_times(sweep_catalogue(cat, tg))
