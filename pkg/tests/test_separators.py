from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bidirected, digraphs, path
from stablecut.graph import Digraph, UndirectedGraph
from stablecut.oracles import oracle_important_separators, separates
from stablecut.separators import (
    NoSeparator,
    SeparatorQuery,
    enumerate_important_separators,
    important_separators_between,
    is_minimal_separator,
    max_disjoint_paths,
    min_st_separator,
    st_query,
)

DIAMOND = UndirectedGraph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])  # s=0, a=1, b=2, t=3


def brute_min_separator(g, X, Y, deletable, cap):
    for size in range(cap + 1):
        for c in combinations(sorted(deletable), size):
            if not (set(c) & (set(X) | set(Y))) or True:
                if separates(g, X, Y, c):
                    return size
    return None


class TestMinSeparator:
    def test_path(self):
        res = min_st_separator(st_query(path(3), 0, 2, 1, {1}))
        assert res.vertices == {1}

    def test_one_path_forbidden(self):
        res = min_st_separator(st_query(DIAMOND, 0, 3, 2, {1}))
        assert isinstance(res, NoSeparator)
        assert res.reason == "no separator uses only deletable vertices"

    def test_diamond(self):
        res = min_st_separator(st_query(DIAMOND, 0, 3, 2))
        assert res.vertices == {1, 2}
        assert res.reach == {0}

    def test_budget(self):
        assert min_st_separator(st_query(DIAMOND, 0, 3, 1)).reason == "budget exceeded"

    def test_intersecting(self):
        q = SeparatorQuery(path(3), frozenset({0, 1}), frozenset({1}), 3, frozenset())
        assert min_st_separator(q).reason == "sets intersect"

    def test_empty_separator_is_truthy(self):
        g = UndirectedGraph.from_edges(3, [(0, 1)])
        res = min_st_separator(st_query(g, 0, 2, 0))
        assert res and res.vertices == frozenset()

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_n=10), st.data())
    def test_size_matches_brute_force(self, d, data):
        if d.n < 2:
            return
        s, t = data.draw(st.lists(st.integers(0, d.n - 1), min_size=2, max_size=2, unique=True))
        allowed = frozenset(data.draw(st.sets(st.integers(0, d.n - 1)))) - {s, t}
        res = min_st_separator(SeparatorQuery(d, frozenset([s]), frozenset([t]), d.n, allowed))
        expect = brute_min_separator(d, [s], [t], allowed, len(allowed))
        if expect is None:
            assert not res
        else:
            assert len(res.vertices) == expect
            assert is_minimal_separator(d, [s], [t], res.vertices)


class TestDisjointPaths:
    def test_star_into_root(self):
        d = Digraph.from_arcs(5, [(i, 4) for i in range(4)])
        count, paths = max_disjoint_paths(d, {0, 1, 2, 3}, 4)
        assert count == 4 and sorted(p[0] for p in paths) == [0, 1, 2, 3]

    def test_single_cut_vertex(self):
        d = Digraph.from_arcs(5, [(0, 3), (1, 3), (2, 3), (3, 4)])
        assert max_disjoint_paths(d, {0, 1, 2}, 4)[0] == 1

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_n=10), st.data())
    def test_menger(self, d, data):
        if d.n < 2:
            return
        r = data.draw(st.integers(0, d.n - 1))
        X = data.draw(st.sets(st.integers(0, d.n - 1).filter(lambda v: v != r), min_size=1))
        count, paths = max_disjoint_paths(d, X, r)
        inner = [v for p in paths for v in p if v != r]
        assert len(inner) == len(set(inner)) and len(paths) == count
        for p in paths:
            assert p[0] in X and p[-1] == r
            assert all(d.has_arc(a, b) for a, b in zip(p, p[1:]))
        deletable = set(range(d.n)) - {r}
        assert count == brute_min_separator(d, X, [r], deletable, len(deletable))


class TestImportantSeparators:
    def test_disconnected(self):
        d = Digraph.from_arcs(3, [(0, 1)])
        assert [s.vertices for s in enumerate_important_separators(d, {0}, {2}, 0)] == [frozenset()]

    def test_path_farthest_wins(self):
        d = bidirected(path(4))
        assert [s.vertices for s in important_separators_between(d, 0, 3, 2)] == [frozenset({2})]
        assert oracle_important_separators(d, {1}, {2}, 2, exclude={0, 3}) == {frozenset({2})}

    def test_diamond(self):
        d = bidirected(DIAMOND)
        assert [s.vertices for s in enumerate_important_separators(d, {0}, {3}, 2, )] != []
        got = {s.vertices for s in important_separators_between(d, 0, 3, 2)}
        assert got == {frozenset({1, 2})}
        assert got == oracle_important_separators(d, {1, 2}, {1, 2}, 2, exclude={0, 3})

    @settings(max_examples=150, deadline=None)
    @given(digraphs(max_n=9), st.integers(0, 3), st.data())
    def test_matches_definition(self, d, k, data):
        verts = st.integers(0, d.n - 1)
        X = data.draw(st.sets(verts, min_size=1, max_size=3))
        Y = data.draw(st.sets(verts, min_size=1, max_size=3))
        exclude = data.draw(st.sets(verts, max_size=1))
        got = enumerate_important_separators(d, X, Y, k, exclude)
        assert {s.vertices for s in got} == oracle_important_separators(d, X, Y, k, exclude)
        assert len(got) <= 4**k
        for s in got:
            assert separates(d, set(X) - exclude, set(Y) - exclude, s.vertices | exclude)
