import pytest

from conftest import path
from stablecut.graph import Digraph, TerminalPairs, UndirectedGraph
from stablecut.oracles import (
    OracleLimitError,
    brute_stable_dfvs,
    is_pair_cut,
    oracle_independent_sets,
    oracle_minimal_multicuts,
    oracle_minimal_pair_cuts,
)

K3 = UndirectedGraph.complete(3)


def test_independent_sets_triangle():
    assert set(oracle_independent_sets(K3, 2)) == {frozenset(), frozenset({0}), frozenset({1}), frozenset({2})}


def test_independent_sets_edgeless():
    sets = oracle_independent_sets(UndirectedGraph.from_edges(3, []), 2)
    assert len(sets) == 1 + 3 + 3


def test_independent_sets_path_has_ends():
    assert frozenset({0, 2}) in oracle_independent_sets(path(3), 2)


def test_caps():
    with pytest.raises(OracleLimitError):
        oracle_independent_sets(UndirectedGraph.from_edges(17, []), 1)
    with pytest.raises(OracleLimitError):
        oracle_independent_sets(K3, 5)


def test_minimal_multicuts_examples():
    assert oracle_minimal_multicuts(path(3), TerminalPairs(()), 2) == {frozenset()}
    assert oracle_minimal_multicuts(path(3), TerminalPairs(((0, 2),)), 1) == {frozenset({0}), frozenset({1}), frozenset({2})}
    assert oracle_minimal_multicuts(K3, TerminalPairs(((0, 1), (0, 2), (1, 2))), 1) == set()


def test_pair_cut_definition():
    # s -> y <- t, y -> r: the only minimal pair cut of size 1 is {y}
    d = Digraph.from_arcs(4, [(0, 2), (1, 2), (2, 3)])
    assert is_pair_cut(d, [(0, 1)], 3, {2})
    assert not is_pair_cut(d, [(0, 1)], 3, set())
    assert oracle_minimal_pair_cuts(d, [(0, 1)], 3, 1) == {frozenset({0}), frozenset({1}), frozenset({2})}


def test_dfvs_oracle_reads_arcs_as_adjacency():
    # 2-cycle 0<->1 plus arc 1->2: a solution {0} is fine, {0, 1} is not independent
    d = Digraph.from_arcs(3, [(0, 1), (1, 0), (1, 2)])
    assert brute_stable_dfvs(d, 1) == frozenset({0})
