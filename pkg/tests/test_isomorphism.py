import random

from hypothesis import given
from hypothesis import strategies as st

from conftest import small_matroids
from matroidlab.constructions import complete, k5_minus_e, theta_double, uniform, wheel
from matroidlab.core import BasisMatroid
from matroidlab.isomorphism import check_isomorphism, is_isomorphic


def relabel(M, perm, prefix="z"):
    """M with element i renamed and moved to position perm[i]."""
    labels = [None] * M.n
    for i, j in enumerate(perm):
        labels[j] = f"{prefix}{i}"
    bases = [[perm[i] for i in range(M.n) if (B >> i) & 1] for B in M.bases]
    return BasisMatroid(labels, bases)


def test_identity():
    M = k5_minus_e()
    m = is_isomorphic(M, M)
    assert m is not None and check_isomorphism(M, M, m)


def test_theta_double_is_k5_minus_e():
    assert is_isomorphic(theta_double(3), k5_minus_e()) is not None


def test_rank_mismatch():
    assert is_isomorphic(uniform(2, 4), uniform(3, 4)) is None


def test_wheel_w3_is_k4():
    assert is_isomorphic(wheel(3), complete(4)) is not None


def test_bad_map_rejected():
    U = uniform(2, 4)
    assert not check_isomorphism(U, U, {"0": "0", "1": "0", "2": "2", "3": "3"})


@given(small_matroids(), st.integers(0, 10**6))
def test_relabelled_copies_are_isomorphic(M, seed):
    perm = list(range(M.n))
    random.Random(seed).shuffle(perm)
    M2 = relabel(M, perm)
    m = is_isomorphic(M, M2)
    assert m is not None
    assert check_isomorphism(M, M2, m)


@given(small_matroids(min_n=3, max_n=6))
def test_uniform_recognised_by_basis_count(M):
    # only U(r, n) has all r-subsets as bases
    if M.r == 0 or M.r == M.n:
        return
    other = uniform(M.r, M.n)
    same = len(M.bases) == len(other.bases)
    assert (is_isomorphic(M, other) is not None) == same
