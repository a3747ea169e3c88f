"""Exact and stable solvers: s-t separator, odd cycle transversal, DFVS, multicut.

Each stable solver runs its annotated version (solution restricted to a vertex
set ``Y``) once per member of an independence covering family, or once per
random cover draw.  Every answer is re-checked before it is returned.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np

from stablecut.covering import DEFAULT_CAP, build_family, draw_random_cover, stream_rng
from stablecut.graph import Digraph, TerminalPairs, UndirectedGraph, degeneracy_order
from stablecut.separators import SeparatorQuery, min_st_separator, st_query
from stablecut.sparsifier import DEFAULT_THRESHOLDS, Thresholds, degeneracy_reduce

PROBLEMS = ("st-separator", "oct", "dfvs", "multicut")


@dataclass(frozen=True)
class SolveResult:
    verdict: bool
    solution: frozenset[int] | None = None
    notes: dict = field(default_factory=dict, compare=False)
    stats: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {
            "verdict": "yes" if self.verdict else "no",
            "solution": sorted(self.solution) if self.solution is not None else None,
            "notes": self.notes,
            "stats": self.stats,
        }


def _yes(solution: Iterable[int], **notes) -> SolveResult:
    return SolveResult(True, frozenset(solution), notes)


NO = SolveResult(False)


def _normalize_mode(mode: str) -> str:
    table = {"det": "det", "deterministic": "det", "rand": "rand", "randomized": "rand"}
    try:
        return table[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; use 'det' or 'rand'") from None


# -- predicates ---------------------------------------------------------------------

def _reach(graph, starts: Iterable[int], removed: set[int]) -> set[int]:
    seen = {s for s in starts if s not in removed}
    q = deque(seen)
    while q:
        u = q.popleft()
        for w in graph.out_neighbors(u):
            if w not in seen and w not in removed:
                seen.add(w)
                q.append(w)
    return seen


def two_coloring(g: UndirectedGraph, removed: Iterable[int] = ()) -> dict[int, int] | None:
    """Proper 2-coloring of ``g - removed`` (lowest id colored 0 per component), or ``None``."""
    removed = set(removed)
    color: dict[int, int] = {}
    for s in range(g.n):
        if s in removed or s in color:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if w in removed:
                    continue
                if w not in color:
                    color[w] = 1 - color[u]
                    q.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_acyclic(d: Digraph, removed: Iterable[int] = ()) -> bool:
    return _shortest_cycle(d, set(removed)) is None


def is_multicut(g: UndirectedGraph, pairs: Iterable[tuple[int, int]], cut: Iterable[int]) -> bool:
    return _violated_path(g, list(pairs), set(cut)) is None


def _minimize(solution: Iterable[int], ok: Callable[[set[int]], bool]) -> frozenset[int]:
    sol = set(solution)
    for v in sorted(sol):
        if ok(sol - {v}):
            sol.discard(v)
    return frozenset(sol)


# -- replication --------------------------------------------------------------------

@dataclass(frozen=True)
class ReplicatedGraph:
    """``graph`` with every vertex outside ``Y`` replaced by ``k+1`` twins.

    ``blocks[v]`` lists the twins of an outside vertex ``v``; ``origin`` maps
    each new id back to its original vertex.
    """

    graph: UndirectedGraph | Digraph
    blocks: dict[int, tuple[int, ...]]
    origin: tuple[int, ...]
    copies: tuple[tuple[int, ...], ...]

    def block_vertices(self) -> set[int]:
        return {x for b in self.blocks.values() for x in b}


def replicate_outside(g: UndirectedGraph | Digraph, Y: Iterable[int], k: int) -> ReplicatedGraph:
    Y = set(Y)
    copies: list[tuple[int, ...]] = []
    origin: list[int] = []
    for v in range(g.n):
        count = 1 if v in Y else k + 1
        copies.append(tuple(range(len(origin), len(origin) + count)))
        origin.extend([v] * count)
    blocks = {v: copies[v] for v in range(g.n) if v not in Y}
    if isinstance(g, Digraph):
        arcs = [(a, b) for u, w in g.arcs for a in copies[u] for b in copies[w]]
        new = Digraph.from_arcs(len(origin), arcs)
    else:
        edges = [(a, b) for u, w in g.edges for a in copies[u] for b in copies[w]]
        new = UndirectedGraph.from_edges(len(origin), edges)
    return ReplicatedGraph(new, blocks, tuple(origin), tuple(copies))


def _solve_replicated(rep: ReplicatedGraph, solver: Callable[[], frozenset[int] | None],
                      ok: Callable[[set[int]], bool]) -> frozenset[int] | None:
    sol = solver()
    if sol is None:
        return None
    sol = _minimize(sol, ok)
    assert not (sol & rep.block_vertices()), "a minimal solution uses a replicated vertex"
    return frozenset(rep.origin[v] for v in sol)


# -- s-t separator ------------------------------------------------------------------

def _check_st(g, s: int, t: int) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"terminal out of range for n={g.n}")
    if s == t:
        raise ValueError("s and t must differ")


def _annotated_st(g: UndirectedGraph, s: int, t: int, Y: Iterable[int] | None, k: int) -> frozenset[int] | None:
    sep = min_st_separator(st_query(g, s, t, k, Y))
    return sep.vertices if sep else None


def annotated_st_separator(g: UndirectedGraph, s: int, t: int, Y: Iterable[int], k: int) -> SolveResult:
    """An s-t separator inside ``Y`` of size at most ``k``."""
    _check_st(g, s, t)
    sol = _annotated_st(g, s, t, Y, k)
    return NO if sol is None else _yes(sol)


# -- odd cycle transversal ----------------------------------------------------------

def _compress(g: UndirectedGraph, present: set[int], S: list[int], k: int,
              deletable: set[int] | None) -> set[int] | None:
    """Turn the odd cycle transversal ``S`` of ``g[present]`` into one of size ``<= k``."""
    absent = set(range(g.n)) - present
    base = two_coloring(g, absent | set(S))
    assert base is not None
    rest = present - set(S)
    can = (lambda v: True) if deletable is None else (lambda v: v in deletable)
    for labels in product((0, 1, 2), repeat=len(S)):
        # 0: deleted, 1: side L, 2: side R; fix the first kept vertex on L
        kept = [x for x in labels if x]
        if kept and kept[0] != 1:
            continue
        D = [v for v, x in zip(S, labels) if x == 0]
        if len(D) > k or not all(can(v) for v in D):
            continue
        L = {v for v, x in zip(S, labels) if x == 1}
        R = {v for v, x in zip(S, labels) if x == 2}
        if any(u in L for v in L for u in g.adj[v]) or any(u in R for v in R for u in g.adj[v]):
            continue
        forced, flip, keep = set(), set(), set()
        for u in rest:
            nb = g.neighbor_set(u)
            need = ({1} if nb & L else set()) | ({0} if nb & R else set())
            if len(need) == 2:
                forced.add(u)
            elif need:
                (flip if need.pop() != base[u] else keep).add(u)
        budget = k - len(D) - len(forced)
        if budget < 0 or not all(can(v) for v in forced):
            continue
        allowed = None if deletable is None else frozenset(deletable & rest)
        sep = min_st_separator(SeparatorQuery(g, frozenset(flip), frozenset(keep), budget, allowed,
                                              frozenset(absent | set(S) | forced)))
        if sep:
            return set(D) | forced | set(sep.vertices)
    return None


def _oct(g: UndirectedGraph, k: int, deletable: set[int] | None = None) -> frozenset[int] | None:
    """Iterative compression over the vertices in id order."""
    S: set[int] = set()
    present: set[int] = set()
    for i in range(g.n):
        present.add(i)
        absent = set(range(g.n)) - present
        if two_coloring(g, absent | S) is not None:
            continue
        if len(S) < k and (deletable is None or i in deletable):
            S.add(i)
            continue
        new = _compress(g, present, sorted(S | {i}), k, deletable)
        if new is None:
            return None
        S = new
    return frozenset(S)


def oct_solve(g: UndirectedGraph, k: int) -> SolveResult:
    """At most ``k`` vertices whose removal leaves ``g`` bipartite."""
    sol = _oct(g, k)
    if sol is None:
        return NO
    return _yes(sol, coloring=two_coloring(g, sol))


def _annotated_oct(g: UndirectedGraph, Y: Iterable[int], k: int, method: str) -> frozenset[int] | None:
    Y = set(Y)
    if method == "direct":
        sol = _oct(g, k, Y)
        return None if sol is None else _minimize(sol, lambda c: two_coloring(g, c) is not None)
    if method != "replicate":
        raise ValueError(f"unknown method {method!r}")
    rep = replicate_outside(g, Y, k)
    return _solve_replicated(rep, lambda: _oct(rep.graph, k),
                             lambda c: two_coloring(rep.graph, c) is not None)


def annotated_oct(g: UndirectedGraph, Y: Iterable[int], k: int, method: str = "direct") -> SolveResult:
    """OCT of size ``<= k`` inside ``Y``.

    ``method="replicate"`` solves plain OCT after giving each outside vertex
    ``k+1`` twins; ``"direct"`` forbids deleting outside vertices inside the
    compression step.  Both are exact.
    """
    sol = _annotated_oct(g, Y, k, method)
    return NO if sol is None else _yes(sol)


# -- directed feedback vertex set ---------------------------------------------------

def _shortest_cycle(d: Digraph, removed: set[int]) -> list[int] | None:
    best: list[int] | None = None
    for s in range(d.n):
        if s in removed:
            continue
        parent = {s: None}
        q = deque([s])
        found = None
        while q and found is None:
            u = q.popleft()
            for w in d.out_adj[u]:
                if w in removed:
                    continue
                if w == s:
                    found = u
                    break
                if w not in parent:
                    parent[w] = u
                    q.append(w)
        if found is None:
            continue
        cyc = [found]
        while cyc[-1] != s:
            cyc.append(parent[cyc[-1]])
        if best is None or len(cyc) < len(best):
            best = cyc[::-1]
            if len(best) == 2:
                break
    return best


def _dfvs(d: Digraph, k: int, can: Callable[[int], bool], removed: frozenset[int]) -> frozenset[int] | None:
    cyc = _shortest_cycle(d, set(removed))
    if cyc is None:
        return frozenset()
    if k == 0:
        return None
    for v in sorted(cyc):
        if can(v):
            sub = _dfvs(d, k - 1, can, removed | {v})
            if sub is not None:
                return sub | {v}
    return None


def dfvs_solve(d: Digraph, k: int) -> SolveResult:
    """Branch on the vertices of a shortest cycle; every feedback set hits it."""
    sol = _dfvs(d, k, lambda v: True, frozenset())
    return NO if sol is None else _yes(sol)


def _annotated_dfvs(d: Digraph, Y: Iterable[int], k: int, method: str) -> frozenset[int] | None:
    Y = set(Y)
    if method == "direct":
        sol = _dfvs(d, k, Y.__contains__, frozenset())
        return None if sol is None else _minimize(sol, lambda c: is_acyclic(d, c))
    if method != "replicate":
        raise ValueError(f"unknown method {method!r}")
    rep = replicate_outside(d, Y, k)
    return _solve_replicated(rep, lambda: _dfvs(rep.graph, k, lambda v: True, frozenset()),
                             lambda c: is_acyclic(rep.graph, c))


def annotated_dfvs(d: Digraph, Y: Iterable[int], k: int, method: str = "direct") -> SolveResult:
    sol = _annotated_dfvs(d, Y, k, method)
    return NO if sol is None else _yes(sol)


# -- multicut -----------------------------------------------------------------------

def _violated_path(g: UndirectedGraph, pairs: Sequence[tuple[int, int]], removed: set[int]) -> list[int] | None:
    best = None
    for s, t in pairs:
        if s in removed or t in removed:
            continue
        parent = {s: None}
        q = deque([s])
        while q and t not in parent:
            u = q.popleft()
            for w in g.adj[u]:
                if w not in removed and w not in parent:
                    parent[w] = u
                    q.append(w)
        if t in parent:
            path = [t]
            while path[-1] != s:
                path.append(parent[path[-1]])
            if best is None or len(path) < len(best):
                best = path
    return best


def _multicut(g: UndirectedGraph, pairs: Sequence[tuple[int, int]], k: int, can: Callable[[int], bool],
              removed: frozenset[int]) -> frozenset[int] | None:
    path = _violated_path(g, pairs, set(removed))
    if path is None:
        return frozenset()
    if k == 0:
        return None
    for v in sorted(path):
        if can(v):
            sub = _multicut(g, pairs, k - 1, can, removed | {v})
            if sub is not None:
                return sub | {v}
    return None


def _pairs(T) -> list[tuple[int, int]]:
    return list(T if isinstance(T, TerminalPairs) else TerminalPairs(tuple(T)))


def multicut_solve(g: UndirectedGraph, T, k: int) -> SolveResult:
    """Branch on the vertices (terminals included) of a shortest connected terminal path."""
    sol = _multicut(g, _pairs(T), k, lambda v: True, frozenset())
    return NO if sol is None else _yes(sol)


def expand_terminals(rep: ReplicatedGraph, pairs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Pairs of the replicated graph: every copy of ``s`` against every copy of ``t``."""
    return [(a, b) for s, t in pairs for a in rep.copies[s] for b in rep.copies[t]]


def _annotated_multicut(g: UndirectedGraph, pairs: list[tuple[int, int]], Y: Iterable[int], k: int,
                        method: str) -> frozenset[int] | None:
    Y = set(Y)
    if method == "direct":
        sol = _multicut(g, pairs, k, Y.__contains__, frozenset())
        return None if sol is None else _minimize(sol, lambda c: is_multicut(g, pairs, c))
    if method != "replicate":
        raise ValueError(f"unknown method {method!r}")
    rep = replicate_outside(g, Y, k)
    big = expand_terminals(rep, pairs)
    return _solve_replicated(rep, lambda: _multicut(rep.graph, big, k, lambda v: True, frozenset()),
                             lambda c: is_multicut(rep.graph, big, c))


def annotated_multicut(g: UndirectedGraph, T, Y: Iterable[int], k: int, method: str = "direct") -> SolveResult:
    sol = _annotated_multicut(g, _pairs(T), Y, k, method)
    return NO if sol is None else _yes(sol)


# -- stable wrappers ----------------------------------------------------------------

def random_draw_count(k: int, d: int) -> int:
    ell = k * (d + 1)
    return max(1, math.ceil(math.comb(ell, k) * ell))


def maximal_members(members: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    """Inclusion-maximal members, largest first; solving on a subset can never help."""
    ordered = sorted(set(members), key=lambda m: (-len(m), sorted(m)))
    kept: list[frozenset[int]] = []
    masks = np.zeros(len(ordered), dtype=np.int64)
    for m in ordered:
        x = sum(1 << v for v in m)
        if not np.any((masks[:len(kept)] & x) == x):
            masks[len(kept)] = x
            kept.append(m)
    return kept


def _stable(indep: UndirectedGraph, k: int, mode: str, seed: int | None, construction: str,
            annotated: Callable[[frozenset[int]], frozenset[int] | None],
            plain: Callable[[], frozenset[int] | None],
            check: Callable[[frozenset[int]], bool]) -> SolveResult:
    mode = _normalize_mode(mode)
    seed = 0 if seed is None else seed
    stats: dict = {"mode": mode}

    def finish(sol: frozenset[int] | None) -> SolveResult:
        if sol is None:
            return SolveResult(False, None, {}, stats)
        independent = indep.is_independent(sol)
        valid = check(sol)
        assert independent and valid and len(sol) <= k, "solver produced an invalid solution"
        return SolveResult(True, frozenset(sol), {"independent": independent, "predicate": valid}, stats)

    if plain() is None:
        stats["covers_tried"] = 0
        stats["shortcut"] = "no solution even without independence"
        return finish(None)
    if k == 0:
        stats["covers_tried"] = 1
        return finish(annotated(frozenset()))
    order = degeneracy_order(indep)
    stats["degeneracy"] = order.degeneracy
    if mode == "det":
        fam = build_family(indep, k, construction, seed, DEFAULT_CAP)
        candidates: Iterable[frozenset[int]] = maximal_members(fam.members)
        stats.update(construction=construction, family_size=len(fam), seed=seed)
    else:
        count = random_draw_count(k, order.degeneracy)
        candidates = (draw_random_cover(indep, order, stream_rng(seed, i)) for i in range(count))
        stats.update(draws=count, seed=seed)
    failed: list[int] = []
    tried = 0
    for Y in candidates:
        y = sum(1 << v for v in Y)
        if any(f & y == y for f in failed):
            continue
        tried += 1
        sol = annotated(Y)
        if sol is not None:
            stats["covers_tried"] = tried
            return finish(sol)
        failed.append(y)
    stats["covers_tried"] = tried
    return finish(None)


def stable_st_separator(g: UndirectedGraph, s: int, t: int, k: int, mode: str = "det", seed: int | None = 0,
                        construction: str = "lopsided") -> SolveResult:
    """An independent s-t separator of size at most ``k``."""
    _check_st(g, s, t)
    return _stable(g, k, mode, seed, construction,
                   lambda Y: _annotated_st(g, s, t, Y, k),
                   lambda: _annotated_st(g, s, t, None, k),
                   lambda c: s not in c and t not in c and t not in _reach(g, [s], set(c)))


def stable_oct(g: UndirectedGraph, k: int, mode: str = "det", seed: int | None = 0,
               construction: str = "lopsided", method: str = "direct") -> SolveResult:
    return _stable(g, k, mode, seed, construction,
                   lambda Y: _annotated_oct(g, Y, k, method),
                   lambda: _oct(g, k),
                   lambda c: two_coloring(g, c) is not None)


def stable_dfvs(d: Digraph, k: int, mode: str = "det", seed: int | None = 0,
                construction: str = "lopsided", method: str = "direct") -> SolveResult:
    """Independence is read on the underlying undirected graph: any arc makes two vertices adjacent."""
    return _stable(d.underlying(), k, mode, seed, construction,
                   lambda Y: _annotated_dfvs(d, Y, k, method),
                   lambda: _dfvs(d, k, lambda v: True, frozenset()),
                   lambda c: is_acyclic(d, c))


def _stable_multicut_degenerate(g: UndirectedGraph, pairs: list[tuple[int, int]], k: int, mode: str,
                                seed: int | None, construction: str, method: str) -> SolveResult:
    return _stable(g, k, mode, seed, construction,
                   lambda Y: _annotated_multicut(g, pairs, Y, k, method),
                   lambda: _multicut(g, pairs, k, lambda v: True, frozenset()),
                   lambda c: is_multicut(g, pairs, c))


def stable_multicut(g: UndirectedGraph, T, k: int, scope: str = "degenerate", mode: str = "det",
                    seed: int | None = 0, construction: str = "lopsided", method: str = "direct",
                    thresholds: Thresholds = DEFAULT_THRESHOLDS) -> SolveResult:
    """An independent multicut of size at most ``k``.

    ``scope="general"`` first deletes irrelevant vertices; every minimal
    multicut of size ``<= k`` survives, so the verdict is unchanged.
    """
    pairs = _pairs(T)
    if scope == "degenerate":
        return _stable_multicut_degenerate(g, pairs, k, mode, seed, construction, method)
    if scope != "general":
        raise ValueError(f"unknown scope {scope!r}")
    red = degeneracy_reduce(g, TerminalPairs(tuple(pairs)), k, thresholds)
    res = _stable_multicut_degenerate(red.graph, list(red.terminals), k, mode, seed, construction, method)
    stats = dict(res.stats, deleted=len(red.deleted), scope="general")
    if not res.verdict:
        return SolveResult(False, None, res.notes, stats)
    sol = red.to_original(res.solution)
    assert g.is_independent(sol) and is_multicut(g, pairs, sol)
    return SolveResult(True, sol, res.notes, stats)
