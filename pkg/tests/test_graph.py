from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import bidirected, cycle, degenerate_graphs, digraphs, path
from stablecut.graph import (
    Digraph,
    GraphFormatError,
    TerminalPairs,
    UndirectedGraph,
    bidirect_with_root,
    degeneracy_order,
    delete_vertices,
    format_graph,
    format_terminals,
    induced_subgraph,
    internally_disjoint_path_count,
    parse_graph,
    parse_terminals,
    reverse,
    vertex_connectivity,
)


def brute_connectivity(g: UndirectedGraph) -> int:
    for size in range(g.n - 1):
        for cut in combinations(range(g.n), size):
            rest, _ = delete_vertices(g, cut)
            if rest.n >= 2 and not nx.is_connected(_nx(rest)):
                return size
    return g.n - 1


def _nx(g: UndirectedGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestParse:
    def test_path(self):
        g = parse_graph("3 2\n0 1\n1 2\n")
        assert isinstance(g, UndirectedGraph)
        assert g.edges == {(0, 1), (1, 2)}

    def test_self_loop_names_line(self):
        with pytest.raises(GraphFormatError, match="line 2"):
            parse_graph("2 1\n0 0\n")

    def test_complete(self):
        text = "4 6\n" + "".join(f"{u} {v}\n" for u, v in combinations(range(4), 2))
        assert parse_graph(text) == UndirectedGraph.complete(4)

    def test_out_of_range(self):
        with pytest.raises(GraphFormatError, match="out of range"):
            parse_graph("2 1\n0 5\n")

    def test_malformed_line(self):
        with pytest.raises(GraphFormatError, match="line 3"):
            parse_graph("# comment\n3 1\n0 x\n")

    def test_duplicates_collapse_and_directed(self):
        g = parse_graph("3 3 directed\n0 1\n0 1\n1 0\n")
        assert isinstance(g, Digraph) and g.arcs == {(0, 1), (1, 0)}

    def test_round_trip(self):
        g = cycle(5)
        assert parse_graph(format_graph(g)) == g
        t = TerminalPairs(((0, 2), (3, 1)))
        assert parse_terminals(format_terminals(t), 5) == t

    def test_terminals_reject_equal(self):
        with pytest.raises(GraphFormatError):
            parse_terminals("1 1\n", 3)


class TestDegeneracy:
    @pytest.mark.parametrize("g, d", [(UndirectedGraph.complete(5), 4), (cycle(6), 2),
                                      (UndirectedGraph.from_edges(10, [(0, i) for i in range(1, 10)]), 1)])
    def test_examples(self, g, d):
        assert degeneracy_order(g).degeneracy == d

    @settings(max_examples=80, deadline=None)
    @given(degenerate_graphs(max_n=14))
    def test_order_properties(self, g):
        o = degeneracy_order(g)
        assert sorted(o.order) == list(range(g.n))
        assert all(len(f) <= o.degeneracy for f in o.forward_neighbors)
        if g.n:
            assert o.degeneracy == max(nx.core_number(_nx(g)).values())
        # tight: some vertex has exactly d neighbours later in the order
        assert g.n == 0 or any(len(f) == o.degeneracy for f in o.forward_neighbors)

    @settings(max_examples=40, deadline=None)
    @given(degenerate_graphs(max_n=12, min_n=2))
    def test_induced_subgraph_not_more_degenerate(self, g):
        sub, old = induced_subgraph(g, range(0, g.n, 2))
        assert degeneracy_order(sub).degeneracy <= degeneracy_order(g).degeneracy
        assert all(g.has_edge(old[u], old[v]) for u, v in sub.edges)


class TestTransforms:
    def test_bidirect_edge(self):
        d = bidirect_with_root(UndirectedGraph.from_edges(2, [(0, 1)]), {1})
        assert d.arcs == {(0, 1), (1, 0), (1, 2)}

    def test_bidirect_single_vertex(self):
        assert bidirect_with_root(UndirectedGraph.from_edges(1, []), {0}).arcs == {(0, 1)}

    def test_bidirect_triangle(self):
        d = bidirect_with_root(UndirectedGraph.complete(3), {0, 1, 2})
        assert d.m == 9 and d.out_neighbors(3) == ()

    @pytest.mark.parametrize("arcs", [[(0, 1), (1, 2)], [(0, 1), (1, 0)], [(0, 1), (0, 2), (1, 2)]])
    def test_reverse_involution(self, arcs):
        d = Digraph.from_arcs(3, arcs)
        assert reverse(d).arcs == {(v, u) for u, v in arcs}
        assert reverse(reverse(d)) == d

    @settings(max_examples=40, deadline=None)
    @given(digraphs())
    def test_reverse_property(self, d):
        assert reverse(reverse(d)) == d


class TestConnectivity:
    @pytest.mark.parametrize("g, k", [(UndirectedGraph.complete(6), 5), (path(5), 1), (cycle(5), 2)])
    def test_examples(self, g, k):
        assert vertex_connectivity(g) == k

    def test_path_counts(self):
        assert internally_disjoint_path_count(UndirectedGraph.complete(4), 0, 1, 5) == 3
        tree = UndirectedGraph.from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
        assert internally_disjoint_path_count(tree, 0, 4, 5) == 1
        assert internally_disjoint_path_count(UndirectedGraph.from_edges(3, [(0, 1)]), 0, 2, 5) == 0

    @settings(max_examples=60, deadline=None)
    @given(degenerate_graphs(max_n=8, max_d=5, min_n=2))
    def test_matches_brute_force(self, g):
        assert vertex_connectivity(g) == brute_connectivity(g)
        nonadj = [internally_disjoint_path_count(g, u, v, g.n) for u, v in combinations(range(g.n), 2)
                  if not g.has_edge(u, v)]
        assert vertex_connectivity(g) == (min(nonadj) if nonadj else g.n - 1)

    @settings(max_examples=40, deadline=None)
    @given(degenerate_graphs(max_n=9, max_d=4, min_n=2))
    def test_path_count_against_networkx(self, g):
        h = _nx(g)
        for u, v in combinations(range(g.n), 2):
            expect = len(list(nx.node_disjoint_paths(h, u, v))) if nx.has_path(h, u, v) else 0
            assert internally_disjoint_path_count(g, u, v, g.n) == expect


def test_terminal_pairs_validation():
    with pytest.raises(ValueError):
        TerminalPairs(((1, 1),))
    with pytest.raises(ValueError):
        TerminalPairs(((1, 2), (2, 1)))
    assert TerminalPairs(((3, 1),)).pairs == ((1, 3),)


def test_bidirected_helper_matches():
    assert bidirected(path(3)).arcs == {(0, 1), (1, 0), (1, 2), (2, 1)}
