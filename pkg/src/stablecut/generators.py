"""Seeded instance generators, including the lower-bound families for covering."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from stablecut.graph import Digraph, TerminalPairs, UndirectedGraph

GENERATORS = ("cliques", "degenerate", "digraph", "k2m", "stars")


@dataclass(frozen=True)
class InstanceSpec:
    generator: str
    n: int = 12
    k: int = 2
    d: int = 2
    count: int = 1
    pairs: int = 0
    seed: int = 0


@dataclass(frozen=True)
class Instance:
    graph: UndirectedGraph | Digraph
    terminals: TerminalPairs | None = None


def disjoint_cliques(k: int, size: int) -> UndirectedGraph:
    """``k`` disjoint cliques on ``size`` vertices each; clique ``i`` is ``[i*size, (i+1)*size)``."""
    if k < 1 or size < 1:
        raise ValueError("need k >= 1 and size >= 1")
    edges = [(i * size + a, i * size + b) for i in range(k) for a, b in combinations(range(size), 2)]
    return UndirectedGraph.from_edges(k * size, edges)


def clique_transversals(k: int, size: int) -> list[frozenset[int]]:
    """One vertex from each clique: the ``size^k`` maximal independent sets of :func:`disjoint_cliques`."""
    return [frozenset(i * size + c for i, c in enumerate(choice)) for choice in product(range(size), repeat=k)]


def disjoint_stars(k: int, leaves: int) -> UndirectedGraph:
    edges = [(i * (leaves + 1), i * (leaves + 1) + j) for i in range(k) for j in range(1, leaves + 1)]
    return UndirectedGraph.from_edges(k * (leaves + 1), edges)


def k2m_union(count: int, m: int) -> UndirectedGraph:
    """``count`` disjoint copies of ``K_{2,m}``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    block = m + 2
    edges = [(i * block + a, i * block + 2 + j) for i in range(count) for a in (0, 1) for j in range(m)]
    return UndirectedGraph.from_edges(count * block, edges)


def random_degenerate(n: int, d: int, rng: np.random.Generator) -> UndirectedGraph:
    """Each vertex joins at most ``d`` earlier vertices, so the degeneracy is at most ``d``."""
    edges = []
    for v in range(1, n):
        take = int(rng.integers(0, min(v, d) + 1))
        for u in rng.choice(v, size=take, replace=False):
            edges.append((int(u), v))
    return UndirectedGraph.from_edges(n, edges)


def random_digraph(n: int, d: int, rng: np.random.Generator) -> Digraph:
    """Orient a random ``d``-degenerate graph; each edge becomes one arc or a 2-cycle."""
    arcs = []
    for u, v in random_degenerate(n, d, rng).edges:
        roll = rng.random()
        if roll < 0.4:
            arcs.append((u, v))
        elif roll < 0.8:
            arcs.append((v, u))
        else:
            arcs += [(u, v), (v, u)]
    return Digraph.from_arcs(n, arcs)


def random_pairs(n: int, count: int, rng: np.random.Generator) -> TerminalPairs:
    if n < 2:
        return TerminalPairs(())
    seen: set[tuple[int, int]] = set()
    for _ in range(count):
        s, t = (int(x) for x in rng.choice(n, size=2, replace=False))
        seen.add((min(s, t), max(s, t)))
    return TerminalPairs(tuple(sorted(seen)))


def generate(spec: InstanceSpec) -> Instance:
    rng = np.random.default_rng(spec.seed)
    if spec.generator == "cliques":
        if spec.n % spec.k:
            raise ValueError("n must be divisible by k for the clique family")
        g = disjoint_cliques(spec.k, spec.n // spec.k)
    elif spec.generator == "degenerate":
        g = random_degenerate(spec.n, spec.d, rng)
    elif spec.generator == "digraph":
        return Instance(random_digraph(spec.n, spec.d, rng))
    elif spec.generator == "k2m":
        g = k2m_union(spec.count, spec.n)
    elif spec.generator == "stars":
        g = disjoint_stars(spec.k, spec.n)
    else:
        raise ValueError(f"unknown generator {spec.generator!r}; choose from {', '.join(GENERATORS)}")
    terms = random_pairs(g.n, spec.pairs, rng) if spec.pairs else None
    return Instance(g, terms)
