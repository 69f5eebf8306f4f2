import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroidlab.constructions import complete, fig1_graph, k5_minus_e, random_gf_matroid, uniform, wheel
from matroidlab.core import CapExceeded
from matroidlab.graphic import GraphicMatroid, complete_graph
from matroidlab.minors import MinorOracle, graph_has_minor, has_minor, naive_has_minor

FIG1_K6_EDGES = {"ab", "ac", "ad", "ae", "af"}


def test_identity_witness():
    M = k5_minus_e()
    w = has_minor(M, M)
    assert w is not None and w.delete == 0 and w.contract == 0
    assert w.verify(M, M)


def test_rank_too_big():
    assert has_minor(uniform(2, 4), uniform(3, 4)) is None


def test_fig2_dual_contractions_have_k4():
    D = k5_minus_e().dual()
    K4 = complete(4)
    for x in "abcd":
        w = has_minor(D.contract(D.mask(x)), K4)
        assert w is not None
        assert w.verify(D.contract(D.mask(x)), K4)


def test_wheels_have_k4_but_k4_has_no_w4():
    assert has_minor(wheel(5), complete(4)) is not None
    assert has_minor(complete(4), wheel(4)) is None


def test_k6_has_k5_graph_minor():
    w = graph_has_minor(complete_graph(6), complete_graph(5))
    assert w is not None and w.verify()


def test_fig1_k6_minors_exactly_at_the_named_edges():
    g = fig1_graph()
    M = GraphicMatroid(g)
    star = [lab for u, v, lab in g.edges if 0 in (u, v)]
    K6 = complete_graph(6)
    for lab in star:
        Mx = M.contract(M.mask(lab))
        w = graph_has_minor(Mx.graph, K6)
        assert (w is not None) == (lab in FIG1_K6_EDGES), lab
        if w is not None:
            assert w.verify()
            mw = w.matroid_witness(Mx, GraphicMatroid(K6))
            assert mw.verify(Mx, GraphicMatroid(K6))


def test_graph_minor_cap():
    with pytest.raises(CapExceeded):
        graph_has_minor(fig1_graph(), complete_graph(4), cap=5)


def test_generic_cap():
    big = random_gf_matroid(15, 5, 3, random.Random(0))
    with pytest.raises(CapExceeded):
        has_minor(big, uniform(2, 4))


def test_graphic_path_beyond_cap():
    # 24 elements is over the generic cap; the graph route still answers
    M = GraphicMatroid(fig1_graph())
    assert MinorOracle(complete(4)).has(M)


@given(st.integers(5, 9), st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
@settings(max_examples=25)
def test_agrees_with_naive_search(n, seed, p):
    rng = random.Random(seed)
    M = random_gf_matroid(n, rng.randint(2, n - 2), p, rng)
    for N in (uniform(2, 4), complete(4)):
        fast = has_minor(M, N)
        slow = naive_has_minor(M, N)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert fast.verify(M, N)
