import numpy as np
import pytest

from matroidlab.connectivity import three_connected
from matroidlab.constructions import (
    BadParams,
    BasepointDegenerate,
    TooLarge,
    complete,
    fig1_graph,
    flats_mask,
    k5_minus_e,
    parallel_connection,
    rank_table_from_flats,
    theta,
    theta_double,
    theta_double_circuit,
    two_sum,
    uniform,
)
from matroidlab.core import BasisMatroid, circuits, is_circuit, loops
from matroidlab.graphic import Graph, GraphicMatroid, complete_graph
from matroidlab.isomorphism import is_isomorphic
from matroidlab.minors import graph_has_minor, has_minor
from matroidlab.structures import Fan


def tri(a, b, p):
    return GraphicMatroid(Graph.from_edges([(0, 1, a), (1, 2, b), (0, 2, p)]))


def test_uniform_examples():
    assert len(uniform(2, 4).bases) == 6
    assert uniform(0, 3).bases == (0,)
    assert three_connected(uniform(3, 6))


@pytest.mark.parametrize("r,n", [(-1, 3), (4, 3), (2, 17)])
def test_uniform_bad_params(r, n):
    with pytest.raises(BadParams):
        uniform(r, n)


def test_k5_minus_e_is_k5_minus_an_edge():
    g = complete_graph(5)
    K5e = GraphicMatroid(Graph(g.n_vertices, g.edges[1:]))
    M = k5_minus_e()
    assert M.r == 4 and M.n == 9
    assert is_isomorphic(M, K5e) is not None
    assert is_circuit(M, M.mask(list("abcd")))


def test_parallel_connection_of_triangles():
    P = parallel_connection(tri("a", "b", "p"), tri("c", "d", "p"), "p", "p")
    assert (P.n, P.r) == (5, 3)
    assert P.mask(["a", "b", "c", "d"]) in circuits(P)


def test_parallel_connection_deletion_identity():
    M1, M2 = tri("x", "y", "p"), k5_minus_e()
    M2 = BasisMatroid.from_table(["p" if x == "a" else x for x in M2.labels], M2.table)
    P = parallel_connection(M1, M2, "p", "p")
    lhs = P.delete(P.mask("x"))
    rhs = parallel_connection(M1.delete(M1.mask("x")), M2, "p", "p")
    assert lhs.same_as(rhs)


def test_parallel_connection_at_a_loop():
    M1 = BasisMatroid(["x", "p"], [[0]])  # p is a loop
    M2 = tri("c", "d", "p")
    P = parallel_connection(M1, M2, "p", "p")
    assert (loops(P) >> P.index("p")) & 1
    # M2 / p is a parallel pair {c, d}
    assert P.mask(["c", "d"]) in circuits(P)
    assert P.r == M1.r + 1


def test_parallel_connection_limits():
    with pytest.raises(TooLarge):
        parallel_connection(uniform(2, 10), uniform(2, 10, labels=[f"y{i}" for i in range(10)]), 0, 0)
    with pytest.raises(BadParams):
        parallel_connection(tri("a", "b", "p"), tri("a", "d", "p"), "p", "p")


def test_two_sum_of_triangles_is_the_four_circuit():
    S = two_sum(tri("a", "b", "p"), tri("c", "d", "p"), "p", "p")
    assert circuits(S) == [S.full]


def test_two_sum_degenerate_basepoint():
    coloop = BasisMatroid(["a", "p"], [[0, 1]])
    with pytest.raises(BasepointDegenerate):
        two_sum(coloop, tri("c", "d", "p"), "p", "p")


@pytest.mark.parametrize("r", [3, 4])
def test_theta_self_dual_and_segment(r):
    T = theta(r)
    assert is_isomorphic(T, T.dual()) is not None
    B = T.mask([f"b{i}" for i in range(1, r + 1)])
    assert T.rank(B) == 2


def test_theta_bad_params():
    with pytest.raises(BadParams):
        theta(2)
    with pytest.raises(BadParams):
        theta_double(5)


def test_theta_double_examples():
    assert is_isomorphic(theta_double(3), k5_minus_e()) is not None
    for r in (3, 4):
        M = theta_double(r)
        assert is_circuit(M, theta_double_circuit(r))


def test_theta_double_dual_contractions_have_theta_minor():
    M = theta_double(3)
    D = M.dual()
    T = theta(3)
    C = theta_double_circuit(3)
    for x in range(M.n):
        if (C >> x) & 1:
            assert has_minor(D.contract(1 << x), T) is not None


def test_flats_rule_reproduces_rank_table():
    # rebuilding any matroid from its own flats gives the same ranks back
    for M in (k5_minus_e(), theta(3), uniform(2, 5)):
        table = rank_table_from_flats(M.n, flats_mask(M))
        assert np.array_equal(table, M.table)


def test_fig1_fixture():
    g = fig1_graph()
    assert (g.n_vertices, len(g.edges)) == (11, 24)
    M = GraphicMatroid(g)
    assert Fan(*(M.index(e) for e in ("ad", "cd", "ac", "bc"))).verify(M)
    Mab = M.contract(M.mask("ab"))
    assert graph_has_minor(Mab.graph, complete_graph(6)) is not None


def test_complete_small():
    assert (complete(4).n, complete(4).r) == (6, 3)
