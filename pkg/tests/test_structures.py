from itertools import permutations

from hypothesis import given

from conftest import small_matroids
from matroidlab.constructions import (
    complete,
    fig1_graph,
    theta,
    theta_double,
    theta_double_circuit,
    uniform,
)
from matroidlab.core import closure, is_circuit, is_cocircuit
from matroidlab.graphic import Graph, GraphicMatroid
from matroidlab.structures import (
    Fan,
    SegCosegPair,
    Spore,
    cosegments,
    fans,
    is_3conn_up_to_unique_spore,
    is_cosegment,
    is_segment,
    seg_coseg_pairs,
    segments,
    spores,
    triads,
    triangles,
)


def test_triangle_counts():
    assert len(triangles(uniform(2, 4))) == 4
    assert triangles(uniform(3, 6)) == []
    assert len(triads(uniform(2, 4))) == 4


def test_fig1_triangle_and_fan():
    M = GraphicMatroid(fig1_graph())
    assert M.mask(["ad", "cd", "ac"]) in triangles(M)
    f = Fan(*(M.index(e) for e in ("ad", "cd", "ac", "bc")))
    assert f in fans(M)


def test_u24_fans_are_all_orderings():
    U = uniform(2, 4)
    # every ordering of four distinct elements is a fan since every 3-set is both
    assert {f.elements for f in fans(U)} == set(permutations(range(4)))


def test_u36_has_no_fans():
    assert fans(uniform(3, 6)) == []


def test_segments_examples():
    assert segments(uniform(2, 4)) == [0b1111]
    for r in (3, 4):
        T = theta(r)
        B = T.mask([f"b{i}" for i in range(1, r + 1)])
        assert is_segment(T, B)
        assert B in segments(T)
    K = complete(4)
    assert sorted(segments(K)) == sorted(triangles(K))


def test_cosegments_are_dual_segments():
    T = theta(3)
    assert cosegments(T) == segments(T.dual())


def test_seg_coseg_theta_double_dual():
    D = theta_double(3).dual()
    C = theta_double_circuit(3)
    pairs = seg_coseg_pairs(D)
    assert pairs
    assert all(p.verify(D) for p in pairs)
    assert any((p.L & ~C).bit_count() <= 1 for p in pairs)


def test_u24_has_no_seg_coseg_pair():
    assert seg_coseg_pairs(uniform(2, 4)) == []


def test_k4_seg_coseg_pairs_follow_definition():
    K = complete(4)
    pairs = seg_coseg_pairs(K)
    # a triangle together with the three spokes at the opposite vertex
    assert len(pairs) == 4
    for p in pairs:
        assert is_circuit(K, p.L)
        for x, y in zip(p.xs, p.ys):
            assert is_cocircuit(K, (p.L & ~(1 << x)) | (1 << y))


@given(small_matroids(max_n=7))
def test_seg_coseg_pairs_match_brute_force(M):
    found = {(p.xs, p.ys) for p in seg_coseg_pairs(M)}
    brute = set()
    for L in range(1 << M.n):
        if not is_segment(M, L):
            continue
        xs = tuple(i for i in range(M.n) if (L >> i) & 1)
        cl = closure(M, L)
        outside = [y for y in range(M.n) if not (cl >> y) & 1]
        for ys in permutations(outside, len(xs)):
            if all(is_cocircuit(M, (cl & ~(1 << x)) | (1 << y)) for x, y in zip(xs, ys)):
                brute.add((xs, ys))
    assert found == brute


def test_is_cosegment_on_dual_segment():
    U = uniform(2, 5)
    assert is_cosegment(U.dual(), U.full)
    assert not is_cosegment(U, U.full)


def _one_spore_graph():
    # K4 plus a vertex w joined by a doubled edge to u and one edge to v
    return Graph.from_edges(
        [(0, 1, "uv"), (0, 2, "ux"), (0, 3, "uy"), (1, 2, "vx"), (1, 3, "vy"), (2, 3, "xy"),
         (4, 0, "e"), (4, 0, "e'"), (4, 1, "f")]
    )


def test_spore_in_hand_built_fixture():
    M = GraphicMatroid(_one_spore_graph()).to_basis()
    assert spores(M) == [Spore(M.mask(["e", "e'"]), M.index("f"))]
    assert spores(M)[0].verify(M)


def test_simple_three_connected_has_no_spores():
    for M in (uniform(3, 6), complete(4), theta_double(3)):
        assert spores(M) == []
        assert is_3conn_up_to_unique_spore(M) is None


def test_two_spores_is_not_unique():
    tri = GraphicMatroid(Graph.from_edges([(0, 1, "e"), (0, 1, "e'"), (1, 2, "f"), (0, 2, "g")]))
    assert len(spores(tri)) > 1
    assert is_3conn_up_to_unique_spore(tri) is None


def test_contracting_a_segment_element_leaves_the_spore():
    D = theta_double(3).dual()
    p = seg_coseg_pairs(D)[0]
    cl = closure(D, p.L)
    for x, y in zip(p.xs, p.ys):
        Mx = D.contract(1 << x)
        got = is_3conn_up_to_unique_spore(Mx)
        want_P = Mx.mask([D.labels[i] for i in range(D.n) if (cl >> i) & 1 and i != x])
        assert got == Spore(want_P, Mx.index(D.labels[y]))


def test_seg_coseg_pair_verify_rejects_overlap():
    U = uniform(2, 4)
    assert not SegCosegPair((0, 1, 2), (3, 3, 3)).verify(U)
