"""Invariants as property tests, plus checks that the checkers can fail."""

import random

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import small_matroids
from matroidlab.connectivity import three_connected
from matroidlab.constructions import complete, k5_minus_e, theta_double, uniform
from matroidlab.core import BasisMatroid, is_circuit
from matroidlab.graphic import Graph, GraphicMatroid
from matroidlab.properties import (
    PartitionStats,
    check_bixby,
    check_vertical_iff_si,
    check_cosegment_absorption,
    check_exact_3_partition,
    check_local_connectivity_identity,
    check_guts,
    check_lambda_duality,
    check_minor_monotone,
    check_partitions,
    check_parallel_connection_minors,
    check_rank_one_meet,
    check_seg_coseg,
    check_submodularity,
    check_two_sum_roundtrip,
    check_vertical_closure,
    random_three_connected,
    run_segcoseg_suite,
)
from matroidlab.theorem import classify_dual, classify_dual_via_thm1, HypothesisViolated


@st.composite
def three_connected_matroids(draw, lo=6, hi=8):
    n = draw(st.integers(lo, hi))
    seed = draw(st.integers(0, 10**6))
    M = random_three_connected(random.Random(seed), n)
    assume(M is not None)
    return M


@given(small_matroids())
def test_lambda_submodular_and_self_dual(M):
    assert check_submodularity(M) == []
    assert check_lambda_duality(M) == []


@given(small_matroids(min_n=2), st.integers(0, 1000))
def test_lambda_monotone_under_minors(M, seed):
    assert check_minor_monotone(M, random.Random(seed)) == []


@given(small_matroids())
def test_guts_coguts_dichotomy(M):
    assert check_guts(M) == []


@given(small_matroids())
def test_local_connectivity_identities(M):
    assert check_local_connectivity_identity(M) == []
    assert check_rank_one_meet(M) == []


@given(small_matroids())
def test_two_sum_round_trip(M):
    assert check_two_sum_roundtrip(M)[0] == []


@given(three_connected_matroids())
@settings(max_examples=25)
def test_three_connected_partition_properties(M):
    assert check_cosegment_absorption(M) == []
    assert check_exact_3_partition(M) == []
    assert check_vertical_closure(M) == []
    assert check_vertical_iff_si(M) == []
    assert check_bixby(M) == []
    stats = PartitionStats()
    check_partitions(M, "M", stats)
    assert all(not r.violations for r in stats.results.values())


@given(three_connected_matroids(6, 8))
@settings(max_examples=15)
def test_circuit_form_matches_dualized_route(M):
    N = uniform(2, 4)
    for C in sorted(c for c in range(1, 1 << M.n) if is_circuit(M, c))[:3]:
        x0 = (C & -C).bit_length() - 1
        try:
            direct = classify_dual(M, N, C, x0)
        except HypothesisViolated:
            continue
        assert direct.holds == classify_dual_via_thm1(M, N, C, x0).holds


def test_partition_checks_are_not_vacuous():
    stats = PartitionStats()
    check_partitions(theta_double(3).dual(), "td3*", stats)
    for key in ("cocircuit-meets-sides", "minimal", "minimal-flat", "crossing"):
        assert stats.results[key].cases > 0, key
        assert stats.results[key].passed, key


def test_parallel_connection_minors_on_fixtures():
    tri = GraphicMatroid(Graph.from_edges([(0, 1, "x"), (1, 2, "y"), (0, 2, "a")]))
    assert check_parallel_connection_minors(tri, k5_minus_e(), "a") == []
    assert check_parallel_connection_minors(complete(4), uniform(2, 4, labels=["01", "q", "r", "s"]), "01") == []


def test_seg_coseg_properties_on_theta_double_dual():
    res = check_seg_coseg(theta_double(3).dual())
    for name, (bad, cases) in res.items():
        assert bad == [], name
        assert cases > 0, name


def test_segcoseg_suite_passes():
    assert all(r.passed and r.cases for r in run_segcoseg_suite())


# -- the checkers notice broken input --------------------------------------------------


def _bogus(n, table):
    return BasisMatroid.from_table([str(i) for i in range(n)], np.array(table))


def test_submodularity_checker_flags_bad_table():
    # r({0}) = r({1}) = 0 but r({0,1}) = 1 with n = 2
    assert check_submodularity(_bogus(2, [0, 0, 0, 1])) != []


def test_local_connectivity_checker_flags_bad_table():
    rng = random.Random(3)
    t = list(uniform(2, 5).table)
    t[0b00111] = 3  # a 3-set of full rank in a rank-2 matroid
    M = _bogus(5, t)
    assert check_local_connectivity_identity(M, rng) or check_rank_one_meet(M, rng) or check_submodularity(M)


def test_cosegment_checker_flags_non_cosegment():
    # outside its hypothesis the absorption property can fail, and the checker reports it
    M = BasisMatroid.from_table(list("abcde"), uniform(2, 4).table.tolist() + [x + 1 for x in uniform(2, 4).table.tolist()])
    assert not three_connected(M)
    assert check_cosegment_absorption(M) != []
