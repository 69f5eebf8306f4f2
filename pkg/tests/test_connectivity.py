import pytest
from hypothesis import given, settings

from conftest import small_matroids
from matroidlab.catalogue import default_catalogue
from matroidlab.connectivity import (
    BixbyOutcome,
    NotA2Separation,
    NotThreeConnected,
    SeedInvalid,
    VerticalPartition,
    bixby_check,
    decompose_2_separation,
    find_minimal_partition,
    is_3_connected,
    is_minimal_partition,
    lam,
    local_connectivity,
    ordered_vertical_3_partitions,
    vertical_3_partitions,
)
from matroidlab.constructions import k5_minus_e, theta_double, two_sum, uniform, wheel
from matroidlab.core import BasisMatroid, closure, is_flat
from matroidlab.graphic import Graph, GraphicMatroid
from matroidlab.isomorphism import is_isomorphic
from matroidlab.oracles import (
    brute_all_vertical_partitions,
    brute_is_3_connected,
    brute_minimal_partitions,
    brute_vertical_partitions,
)


def test_lambda_examples():
    U = uniform(2, 4)
    assert lam(U, 0b0011) == 2
    M = k5_minus_e()
    C = M.mask(list("abcd"))
    assert lam(M, C) == M.rank(C) + M.rank(M.full & ~C) - 4


def test_local_connectivity_examples():
    U = uniform(2, 4)
    assert local_connectivity(U, 0b0011, 0) == 0
    assert local_connectivity(U, 0b0011, 0b1100) == 2


def test_three_connected_examples():
    assert is_3_connected(uniform(2, 4))[0]
    assert is_3_connected(k5_minus_e())[0]
    loopy = BasisMatroid("abc", [[0], [1]])
    ok, sep = is_3_connected(loopy)
    assert not ok and sep.k == 1


def test_separation_reported_is_genuine():
    M = two_sum(uniform(2, 4), uniform(2, 4, labels="0xyz"), "0", "0")
    ok, sep = is_3_connected(M)
    assert not ok
    assert lam(M, sep.X) < sep.k


@given(small_matroids(max_n=7))
@settings(max_examples=60)
def test_three_connected_matches_brute_force(M):
    assert is_3_connected(M)[0] == brute_is_3_connected(M)


def test_vertical_partitions_examples():
    U = uniform(2, 4)
    assert all(vertical_3_partitions(U, x) == [] for x in range(4))
    D = k5_minus_e().dual()
    assert vertical_3_partitions(D, D.index("a"))


def test_vertical_partitions_require_3_connected():
    with pytest.raises(NotThreeConnected):
        vertical_3_partitions(BasisMatroid("abc", [[0], [1]]), 0)


@pytest.mark.parametrize("name,M", [m for m in default_catalogue() if m[1].n <= 10][::3])
def test_vertical_partitions_match_brute_force(name, M):
    for x in range(M.n):
        ours = sorted((vp.X1, vp.X2, vp.x) for vp in ordered_vertical_3_partitions(M, x))
        assert ours == brute_vertical_partitions(M, x), name


def _minimal_cases():
    out = []
    for M in (theta_double(3).dual(), wheel(4), theta_double(3)):
        table = brute_all_vertical_partitions(M)
        for x, parts in table.items():
            for X1, X2, _ in parts:
                out.append((M, VerticalPartition(X1, X2, x)))
    return out


def test_minimal_seed_is_fixed_point():
    seen = 0
    for M, seed in _minimal_cases():
        A = M.full
        if is_minimal_partition(M, A, seed):
            seen += 1
            assert find_minimal_partition(M, A, seed).X1 & ~seed.X1 == 0
    assert seen


def test_find_minimal_partition_against_brute_force():
    D = theta_double(3).dual()
    A = D.mask(["a2", "a3", "a2'", "a3'"])
    table = brute_all_vertical_partitions(D)
    minimal = set(brute_minimal_partitions(D, A, table))
    tried = 0
    for x in range(D.n):
        if not (A >> x) & 1:
            continue
        for X1, X2, _ in table[x]:
            got = find_minimal_partition(D, A, VerticalPartition(X1, X2, x))
            assert (got.X1, got.X2, got.x) in minimal
            assert is_flat(D, got.X2 | (1 << got.x))
            Z = X1 & ~closure(D, X2)
            assert got.X1 & ~Z == 0
            tried += 1
    assert tried


def test_find_minimal_partition_rejects_bad_seed():
    D = theta_double(3).dual()
    vp = vertical_3_partitions(D, D.index("a2"))[0]
    with pytest.raises(SeedInvalid):
        find_minimal_partition(D, D.full & ~(1 << vp.x), vp)
    with pytest.raises(SeedInvalid):
        find_minimal_partition(D, D.full, VerticalPartition(vp.X1 | vp.X2, 0, vp.x))


def test_two_triangles_round_trip():
    tri = GraphicMatroid(Graph.from_edges([(0, 1, "a"), (1, 2, "b"), (0, 2, "p")]))
    tri2 = GraphicMatroid(Graph.from_edges([(0, 1, "c"), (1, 2, "d"), (0, 2, "p")]))
    M = two_sum(tri, tri2, "p", "p")
    assert is_isomorphic(M, uniform(3, 4)) is not None  # the 4-cycle
    M1, M2, p = decompose_2_separation(M, M.mask(["a", "b"]))
    assert two_sum(M1, M2, p, p).same_as(M)


def test_decompose_rejects_non_separation():
    U = uniform(2, 4)
    with pytest.raises(NotA2Separation):
        decompose_2_separation(U, 0b0011)
    with pytest.raises(NotA2Separation):
        decompose_2_separation(U, 0b0001)


def test_decompose_contraction_round_trip():
    D = k5_minus_e().dual()
    a = D.index("a")
    Mx = D.contract(1 << a).to_basis()
    vp = vertical_3_partitions(D, a)[0]
    keep = [i for i in range(D.n) if i != a]
    X1 = sum(1 << keep.index(i) for i in range(D.n) if (vp.X1 >> i) & 1)
    M1, M2, p = decompose_2_separation(Mx, X1)
    assert two_sum(M1, M2, p, p).same_as(Mx)


def test_bixby_examples():
    D = k5_minus_e().dual()
    assert bixby_check(D, D.index("a")) == BixbyOutcome.CO_OK
    assert bixby_check(uniform(2, 4), 0) in (BixbyOutcome.SI_OK, BixbyOutcome.BOTH)


def test_bixby_never_neither_on_catalogue():
    for name, M in default_catalogue():
        if M.n < 4:
            continue
        for x in range(M.n):
            assert bixby_check(M, x) != BixbyOutcome.NEITHER, (name, x)
