import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matroidlab.connectivity import _is_3_connected
from matroidlab.core import BasisMatroid, ParseError, ValidationError
from matroidlab.constructions import fig1_graph, uniform
from matroidlab.graphic import (
    Graph,
    GraphicMatroid,
    complete_graph,
    format_graph,
    graph_is_3_connected_matroid,
    parse_graph,
    wheel_graph,
)
from matroidlab.oracles import brute_is_3_connected


def test_triangle_is_u23():
    M = GraphicMatroid(Graph.from_edges([(0, 1), (1, 2), (0, 2)]))
    assert M.to_basis() == uniform(2, 3, labels=M.labels)


def test_fig1_size_and_rank():
    M = GraphicMatroid(fig1_graph())
    assert (M.n, M.r) == (24, 10)


def test_parse_format_round_trip():
    g = wheel_graph(4)
    assert parse_graph(format_graph(g)) == Graph(g.n_vertices, g.edges)


@pytest.mark.parametrize(
    "text",
    ["0 1 a\n", "vertices x\n0 1 a\n", "vertices 3\n0 1\n", "vertices 3\n0 q a\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_graph(text)


def test_duplicate_labels_rejected():
    with pytest.raises(ValidationError):
        Graph(2, ((0, 1, "a"), (0, 1, "a")))


def test_delete_matches_edge_deleted_graph():
    g = fig1_graph()
    M = GraphicMatroid(g)
    e = g.labels[5]
    assert M.delete(M.mask(e)).to_basis() == GraphicMatroid(g.delete_edges([e])).to_basis()


def test_contraction_stays_graphic():
    M = GraphicMatroid(complete_graph(5))
    assert isinstance(M.contract(1), GraphicMatroid)


@st.composite
def small_graphs(draw):
    nv = draw(st.integers(2, 6))
    m = draw(st.integers(1, 9))
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    edges = [(rng.randrange(nv), rng.randrange(nv), f"e{i}") for i in range(m)]
    return Graph(nv, tuple(edges))


@given(small_graphs())
def test_union_find_rank_matches_table(g):
    M = GraphicMatroid(g)
    B = BasisMatroid.from_table(M.labels, M.table)
    for X in range(1 << M.n):
        assert M.rank(X) == B.rank(X)


@given(small_graphs())
def test_graph_connectivity_fast_path_agrees(g):
    M = GraphicMatroid(g)
    if M.n < 4:
        return
    ok, X = graph_is_3_connected_matroid(g)
    assert ok == brute_is_3_connected(M) == _is_3_connected(M.to_basis())[0]
    if not ok:
        assert X is not None
