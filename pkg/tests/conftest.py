import numpy as np
import pytest
from hypothesis import strategies as st

from stablecut.generators import random_degenerate, random_digraph
from stablecut.graph import Digraph, UndirectedGraph


def path(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> UndirectedGraph:
    return UndirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def bidirected(g: UndirectedGraph) -> Digraph:
    return Digraph.from_arcs(g.n, [a for u, v in g.edges for a in ((u, v), (v, u))])


@st.composite
def degenerate_graphs(draw, max_n=10, max_d=3, min_n=1):
    n = draw(st.integers(min_n, max_n))
    d = draw(st.integers(0, max_d))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_degenerate(n, d, np.random.default_rng(seed))


@st.composite
def digraphs(draw, max_n=9, max_d=3):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, max_d))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_digraph(n, d, np.random.default_rng(seed))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
