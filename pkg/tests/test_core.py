import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_matroids
from matroidlab.bits import iter_bits, subsets_of_size
from matroidlab.constructions import complete, k5_minus_e, uniform
from matroidlab.core import (
    BasisMatroid,
    EmptyGroundSet,
    ParseError,
    ValidationError,
    Witness,
    WitnessKind,
    circuits,
    closure,
    co,
    cocircuits,
    coloops,
    is_circuit,
    is_cocircuit,
    is_flat,
    loops,
    matroid_from_json,
    matroid_to_json,
    parallel_classes,
    series_classes,
    si,
    simplify,
)
from matroidlab.graphic import cycle_edge_sets


def test_uniform_basics():
    U = uniform(2, 4)
    assert U.r == 2
    assert len(U.bases) == 6
    assert U.rank(0b0111) == 2
    assert closure(U, 0b0011) == 0b1111
    assert len(circuits(U)) == 4
    assert all(c.bit_count() == 3 for c in cocircuits(U))


def test_rank_of_empty_set_is_zero():
    assert uniform(3, 5).rank(0) == 0


def test_circuits_match_graph_cycles():
    M = k5_minus_e()
    assert sorted(circuits(M)) == sorted(cycle_edge_sets(M.graph))


def test_fig2_circuit_and_cocircuit():
    M = k5_minus_e()
    C = M.mask(list("abcd"))
    assert is_circuit(M, C)
    assert is_cocircuit(M.dual(), C)


def test_loops_and_coloops():
    # bases {0}: element 1 is a loop, 0 a coloop
    M = BasisMatroid("ab", [[0]])
    assert loops(M) == 0b10
    assert coloops(M) == 0b01


def test_json_round_trip():
    M = complete(4).to_basis()
    again = matroid_from_json(json.dumps(matroid_to_json(M)))
    assert again == M


@pytest.mark.parametrize(
    "payload,err",
    [
        ("{not json", ParseError),
        ('{"n": 3, "labels": ["a", "b"], "bases": [[0]]}', ValidationError),
        ('{"n": 2, "bases": [["x"]]}', ParseError),
        ('{"n": 3, "bases": [[1, 0]]}', ValidationError),
        ('{"n": 4, "bases": [[0, 1], [2, 3]]}', ValidationError),
        ("[1, 2]", ParseError),
    ],
)
def test_json_rejects_bad_input(payload, err):
    with pytest.raises(err):
        matroid_from_json(payload)


def test_exchange_failure_names_the_pair():
    with pytest.raises(ValidationError, match="B1=.*B2="):
        BasisMatroid("abcd", [[0, 1], [2, 3]])


def test_empty_minor_rejected():
    with pytest.raises(EmptyGroundSet):
        uniform(1, 1).delete(1)


def test_simplify_mapping():
    # a parallel pair {0,1} and a loop 2 inside U(2,4)-like data
    M = BasisMatroid("abcd", [[0, 3], [1, 3]])
    S, mapping = simplify(M)
    assert S.labels == ("a", "d")
    assert mapping == {"b": "a", "c": None}  # untouched elements are omitted


def test_series_classes_of_a_circuit():
    M = uniform(3, 4)
    assert series_classes(M) == [0b1111]
    assert co(M).n == 1


def test_witness_verify():
    M = k5_minus_e()
    assert Witness(WitnessKind.CIRCUIT, (M.mask(list("abcd")),)).verify(M)
    assert not Witness(WitnessKind.COCIRCUIT, (M.mask(list("abcd")),)).verify(M)
    w = Witness(WitnessKind.SEPARATION, (M.mask(["a", "b", "12"]),), order=3)
    assert w.verify(M) == (M.rank(M.mask(["a", "b", "12"])) + M.rank(M.full & ~M.mask(["a", "b", "12"])) - M.r < 3)


# -- properties --------------------------------------------------------------------


@given(small_matroids())
def test_rank_axioms(M):
    t = M.table.astype(int)
    idx = np.arange(1 << M.n)
    assert t[0] == 0
    for e in range(M.n):
        grow = t[idx | (1 << e)] - t
        assert ((grow == 0) | (grow == 1)).all()


@given(small_matroids())
def test_dual_of_dual_and_rank_formula(M):
    D = M.dual()
    assert D.dual() == M
    for X in range(1 << M.n):
        assert D.rank(X) == X.bit_count() + M.rank(M.full & ~X) - M.r


@given(small_matroids(min_n=2), st.data())
def test_delete_contract_duality(M, data):
    e = data.draw(st.integers(0, M.n - 1))
    b = 1 << e
    assert M.delete(b).dual() == M.dual().contract(b)
    assert M.contract(b).dual() == M.dual().delete(b)


@given(small_matroids(min_n=3), st.data())
def test_minor_operations_commute(M, data):
    e, f = data.draw(st.lists(st.integers(0, M.n - 1), min_size=2, max_size=2, unique=True))
    a = M.delete(1 << e).contract(1 << M.delete(1 << e).index(M.labels[f]))
    b = M.contract(1 << f).delete(1 << M.contract(1 << f).index(M.labels[e]))
    assert a == b


@given(small_matroids())
def test_circuits_and_cocircuits_are_minimal(M):
    for C in circuits(M):
        assert M.rank(C) == C.bit_count() - 1
        assert all(M.rank(C & ~(1 << e)) == C.bit_count() - 1 for e in iter_bits(C))
    assert cocircuits(M) == circuits(M.dual())


@given(small_matroids())
def test_closure_is_a_flat(M):
    for X in range(0, 1 << M.n, 3):
        assert is_flat(M, closure(M, X))


@given(small_matroids())
def test_si_is_simple(M):
    if M.r == 0:
        return
    S = si(M)
    assert loops(S) == 0
    assert all(c.bit_count() == 1 for c in parallel_classes(S))
    assert S.r == M.r


def test_three_subsets_helper():
    assert len(list(subsets_of_size(0b11111, 3))) == 10
