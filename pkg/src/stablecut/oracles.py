"""Exhaustive reference implementations used to check the real algorithms.

Nothing here calls into the flow, covering, separator, or solver code; only the
graph containers are shared.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator

from stablecut.graph import Digraph, TerminalPairs, UndirectedGraph

MAX_N = 16
MAX_K = 4


class OracleLimitError(RuntimeError):
    pass


def _check_caps(n: int, k: int, max_n: int, max_k: int) -> None:
    if n > max_n or k > max_k:
        raise OracleLimitError(f"oracle refuses n={n}, k={k} (caps n<={max_n}, k<={max_k})")


def _reach(graph, starts: Iterable[int], blocked: set[int]) -> set[int]:
    seen = {s for s in starts if s not in blocked}
    q = deque(seen)
    while q:
        u = q.popleft()
        for w in graph.out_neighbors(u):
            if w not in seen and w not in blocked:
                seen.add(w)
                q.append(w)
    return seen


def subsets_upto(items: Iterable[int], k: int) -> Iterator[frozenset[int]]:
    items = sorted(items)
    for size in range(min(k, len(items)) + 1):
        for c in combinations(items, size):
            yield frozenset(c)


def oracle_independent_sets(g: UndirectedGraph, k: int, max_n: int = MAX_N, max_k: int = MAX_K) -> list[frozenset[int]]:
    _check_caps(g.n, k, max_n, max_k)
    out: list[frozenset[int]] = []

    def grow(start: int, current: list[int]) -> None:
        out.append(frozenset(current))
        if len(current) == k:
            return
        for v in range(start, g.n):
            if all(not g.has_edge(v, u) for u in current):
                current.append(v)
                grow(v + 1, current)
                current.pop()

    grow(0, [])
    return out


# -- predicates recomputed from scratch ---------------------------------------

def separates(graph, sources: Iterable[int], sinks: Iterable[int], cut: Iterable[int]) -> bool:
    cut = set(cut)
    return not (_reach(graph, sources, cut) & (set(sinks) - cut))


def is_multicut(g: UndirectedGraph, pairs: Iterable[tuple[int, int]], cut: Iterable[int]) -> bool:
    cut = set(cut)
    for s, t in pairs:
        if s in cut or t in cut:
            continue
        if t in _reach(g, [s], cut):
            return False
    return True


def is_bipartite_after(g: UndirectedGraph, cut: Iterable[int]) -> bool:
    cut = set(cut)
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in cut or s in color:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if w in cut:
                    continue
                if w not in color:
                    color[w] = 1 - color[u]
                    q.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def is_acyclic_after(d: Digraph, cut: Iterable[int]) -> bool:
    cut = set(cut)
    indeg = {v: 0 for v in range(d.n) if v not in cut}
    for v in indeg:
        for w in d.out_adj[v]:
            if w in indeg:
                indeg[w] += 1
    q = deque(v for v, c in indeg.items() if c == 0)
    seen = 0
    while q:
        v = q.popleft()
        seen += 1
        for w in d.out_adj[v]:
            if w in indeg:
                indeg[w] -= 1
                if indeg[w] == 0:
                    q.append(w)
    return seen == len(indeg)


def _independent(adjacent, vs: frozenset[int]) -> bool:
    return all(not adjacent(u, v) for u, v in combinations(sorted(vs), 2))


# -- brute-force solvers ------------------------------------------------------

def _first(candidates: Iterable[frozenset[int]], ok) -> frozenset[int] | None:
    for c in candidates:
        if ok(c):
            return c
    return None


def brute_stable_st_separator(g: UndirectedGraph, s: int, t: int, k: int) -> frozenset[int] | None:
    others = [v for v in range(g.n) if v not in (s, t)]
    return _first((c for c in subsets_upto(others, k) if g.is_independent(c)),
                  lambda c: separates(g, [s], [t], c))


def brute_stable_oct(g: UndirectedGraph, k: int) -> frozenset[int] | None:
    return _first((c for c in subsets_upto(range(g.n), k) if g.is_independent(c)),
                  lambda c: is_bipartite_after(g, c))


def brute_stable_dfvs(d: Digraph, k: int) -> frozenset[int] | None:
    def adjacent(u, v):
        return d.has_arc(u, v) or d.has_arc(v, u)
    return _first((c for c in subsets_upto(range(d.n), k) if _independent(adjacent, c)),
                  lambda c: is_acyclic_after(d, c))


def brute_stable_multicut(g: UndirectedGraph, pairs, k: int) -> frozenset[int] | None:
    pairs = list(pairs)
    return _first((c for c in subsets_upto(range(g.n), k) if g.is_independent(c)),
                  lambda c: is_multicut(g, pairs, c))


def brute_min_size(candidates: Iterable[frozenset[int]], ok) -> int | None:
    best = None
    for c in candidates:
        if (best is None or len(c) < best) and ok(c):
            best = len(c)
    return best


# -- minimal multicuts --------------------------------------------------------

def oracle_minimal_multicuts(g: UndirectedGraph, T: TerminalPairs | Iterable[tuple[int, int]], k: int,
                             max_n: int = MAX_N, max_k: int = MAX_K) -> set[frozenset[int]]:
    """All inclusion-minimal multicuts of size at most ``k`` (terminals may be cut)."""
    _check_caps(g.n, k, max_n, max_k)
    pairs = list(T)
    cuts = [c for c in subsets_upto(range(g.n), k) if is_multicut(g, pairs, c)]
    found = set(cuts)
    # subsets of a small multicut are small too, so minimality is checked inside ``found``
    return {c for c in cuts if all((c - {v}) not in found for v in c)}


# -- important separators -----------------------------------------------------

def oracle_important_separators(d, X: Iterable[int], Y: Iterable[int], k: int,
                                exclude: Iterable[int] = (),
                                max_n: int = MAX_N, max_k: int = MAX_K) -> set[frozenset[int]]:
    """Important X-Y separators of size at most ``k`` straight from the definition."""
    _check_caps(d.n, k, max_n, max_k)
    exclude = set(exclude)
    X = set(X) - exclude
    Y = set(Y) - exclude
    verts = [v for v in range(d.n) if v not in exclude]

    def reach(cut: frozenset[int]) -> frozenset[int]:
        return frozenset(_reach(d, X, set(cut) | exclude))

    seps = {}
    for c in subsets_upto(verts, k):
        r = reach(c)
        if not (r & (Y - c)):
            seps[c] = r
    minimal = [c for c in seps if all((c - {v}) not in seps for v in c)]
    out = set()
    for c in minimal:
        rc = seps[c]
        if not any(len(o) <= len(c) and rc < ro for o, ro in seps.items()):
            out.add(c)
    return out


# -- digraph pair cuts ----------------------------------------------------------

def is_pair_cut(d: Digraph, pairs, r: int, cut: Iterable[int]) -> bool:
    cut = set(cut)
    for s, t in pairs:
        s_ok = s in cut or r not in _reach(d, [s], cut)
        t_ok = t in cut or r not in _reach(d, [t], cut)
        if not (s_ok or t_ok):
            return False
    return True


def oracle_minimal_pair_cuts(d: Digraph, pairs, r: int, k: int,
                             max_n: int = MAX_N + 8, max_k: int = MAX_K) -> set[frozenset[int]]:
    _check_caps(d.n, k, max_n, max_k)
    pairs = list(pairs)
    verts = [v for v in range(d.n) if v != r]
    cuts = {c for c in subsets_upto(verts, k) if is_pair_cut(d, pairs, r, c)}
    return {c for c in cuts if all((c - {v}) not in cuts for v in c)}
