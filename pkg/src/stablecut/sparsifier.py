"""Multicut-preserving degeneracy reduction.

The pipeline finds a large highly connected vertex set ``Y``, turns the
multicut instance into a digraph pair cut instance rooted at a new vertex fed
by ``Y``, marks the in-neighbours of the root that may appear in a small
minimal pair cut, and deletes an unmarked vertex of ``Y``.  Repeating this
keeps the family of minimal multicuts of size at most ``k`` unchanged.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from stablecut.graph import (
    Digraph,
    TerminalPairs,
    UndirectedGraph,
    bidirect_with_root,
    degeneracy_order,
    delete_vertices,
    induced_subgraph,
    internally_disjoint_path_count,
    minimum_vertex_cut,
    reverse,
    vertex_connectivity,
)
from stablecut.separators import (
    SeparatorQuery,
    important_separators_between,
    important_separators_from_root,
    max_disjoint_paths,
    min_st_separator,
)


@dataclass(frozen=True)
class Thresholds:
    """Constants of the reduction; ``None`` picks the default value for the current ``k``.

    The default values keep every guarantee but make the large-connected-set
    branch unreachable on small graphs.  Tests override them to exercise every
    branch; soundness of deletions does not depend on the chosen values.
    """

    case_split: int | None = None
    relevant_bound: int | None = None
    connected_size: int | None = None
    root_separator_size: int | None = None

    def case_split_for(self, k: int) -> int:
        return self.case_split if self.case_split is not None else 16**k * 64 * (k + 1)

    def relevant_bound_for(self, k: int) -> int:
        return self.relevant_bound if self.relevant_bound is not None else 64 ** (k + 1) * (k + 1) ** 2

    def connected_size_for(self, k: int) -> int:
        return self.connected_size if self.connected_size is not None else 64 ** (k + 1) * (k + 1) ** 2

    def root_separator_size_for(self, k: int) -> int:
        size = self.root_separator_size if self.root_separator_size is not None else 2 * k + 2
        if size < 2 * k + 1:
            # the dropped-pair argument needs separators of size 2k+1
            raise ValueError(f"root separator size {size} is below 2k+1 = {2 * k + 1}")
        return size


DEFAULT_THRESHOLDS = Thresholds()


@dataclass(frozen=True)
class PairCutInstance:
    """Digraph pair cut instance: cut, for each pair, one endpoint from ``root``.

    ``origin[i]`` names the input pair that pair ``i`` stands for after
    :func:`split_terminals`.
    """

    digraph: Digraph
    terminals: tuple[tuple[int, int], ...]
    root: int
    budget: int
    origin: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.root < self.digraph.n:
            raise ValueError("root is not a vertex of the digraph")
        for s, t in self.terminals:
            if self.root in (s, t):
                raise ValueError("the root cannot be a terminal")

    @property
    def normalized(self) -> bool:
        seen = [x for p in self.terminals for x in p]
        return len(seen) == len(set(seen))


@dataclass(frozen=True)
class RelevanceReport:
    marked: frozenset[int]
    removed_pairs: tuple[tuple[int, int], ...] = ()
    case: str = "empty"


@dataclass(frozen=True)
class Deletion:
    graph: UndirectedGraph
    terminals: TerminalPairs
    vertex: int
    kept: tuple[int, ...]


@dataclass(frozen=True)
class SparsifyResult:
    graph: UndirectedGraph
    terminals: TerminalPairs
    original_ids: tuple[int, ...]
    deleted: tuple[tuple[int, str], ...] = field(default=())

    def to_original(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(self.original_ids[v] for v in vertices)

    def original_terminals(self) -> TerminalPairs:
        return TerminalPairs(tuple((self.original_ids[s], self.original_ids[t]) for s, t in self.terminals))


# -- digraph pair cuts ------------------------------------------------------------

def split_terminals(inst: PairCutInstance) -> PairCutInstance:
    """Give every pair fresh private endpoints ``s' -> s`` and ``t' -> t``."""
    d = inst.digraph
    n = d.n
    outs = [list(d.out_adj[v]) for v in range(n)]
    pairs = []
    for i, (s, t) in enumerate(inst.terminals):
        outs.append([s])
        outs.append([t])
        pairs.append((n + 2 * i, n + 2 * i + 1))
    origin = inst.origin if inst.origin is not None else tuple(inst.terminals)
    if inst.origin is not None and len(inst.origin) != len(inst.terminals):
        raise ValueError("origin does not match terminals")
    return PairCutInstance(Digraph(len(outs), tuple(tuple(o) for o in outs)), tuple(pairs),
                           inst.root, inst.budget, origin)


def _case_one_marks(d: Digraph, r: int, Z: frozenset[int], k: int) -> set[int]:
    into_root = set(d.in_neighbors(r))
    marked = Z & into_root
    for z in sorted(Z):
        for sep in important_separators_between(d, z, r, k):
            marked |= sep.vertices & into_root
    return set(marked)


def relevant_root_neighbors(inst: PairCutInstance, thresholds: Thresholds = DEFAULT_THRESHOLDS) -> RelevanceReport:
    """Superset of the root in-neighbours lying in a minimal pair cut of size ``<= budget``.

    Repeatedly either marks candidates (small terminal-root separator) or
    finds a terminal pair whose removal keeps all small minimal pair cuts, and
    drops it.
    """
    if not inst.normalized:
        raise ValueError("terminal pairs must be pairwise disjoint; run split_terminals first")
    d, r, k = inst.digraph, inst.root, inst.budget
    into_root = frozenset(d.in_neighbors(r))
    if len(into_root) <= thresholds.relevant_bound_for(k):
        return RelevanceReport(into_root, (), "few root neighbours")
    pairs = list(range(len(inst.terminals)))
    origin = inst.origin or inst.terminals
    removed: list[tuple[int, int]] = []
    while True:
        if not pairs:
            return RelevanceReport(frozenset(), tuple(removed), "no pairs")
        ends = frozenset(x for i in pairs for x in inst.terminals[i])
        sep = min_st_separator(SeparatorQuery(d, ends, frozenset([r]), d.n,
                                              frozenset(v for v in range(d.n) if v != r)))
        Z = sep.vertices
        if len(Z) <= thresholds.case_split_for(k):
            return RelevanceReport(frozenset(_case_one_marks(d, r, Z, k)), tuple(removed), "separator")
        _, paths = max_disjoint_paths(d, ends, r)
        X = sorted(p[0] for p in paths)
        partner = {}
        for i in pairs:
            s, t = inst.terminals[i]
            partner[s], partner[t] = (t, i), (s, i)
        A: set[int] = set()
        for x in X:
            if partner[x][0] not in A:
                A.add(x)
        B = {partner[a][0] for a in A}
        marked: set[int] = set()
        for sep_set in important_separators_from_root(reverse(d), r, B, thresholds.root_separator_size_for(k)):
            marked |= sep_set.vertices & B
        unmarked = sorted(B - marked)
        if not unmarked:
            # only reachable with overridden thresholds; marking is sound regardless
            return RelevanceReport(frozenset(_case_one_marks(d, r, Z, k)), tuple(removed), "fallback")
        drop = partner[unmarked[0]][1]
        pairs.remove(drop)
        removed.append(tuple(origin[drop]))


# -- highly connected sets --------------------------------------------------------

def _edge_count(g: UndirectedGraph, H: set[int]) -> int:
    return sum(1 for v in H for u in g.adj[v] if u in H) // 2


def claim_premise(g: UndirectedGraph, H: Iterable[int], d: int) -> bool:
    """``|H| >= 2d+1`` and ``|E(g[H])| >= 2d(|H| - d - 1/2)``."""
    H = set(H)
    return len(H) >= 2 * d + 1 and 2 * _edge_count(g, H) >= 2 * d * (2 * len(H) - 2 * d - 1)


def _claim_recursion(g: UndirectedGraph, H: set[int], d: int) -> frozenset[int]:
    while True:
        assert claim_premise(g, H, d), "recursion premise violated"
        sub, old = induced_subgraph(g, H)
        if sub.n >= d + 2 and vertex_connectivity(sub) >= d + 1:
            return frozenset(H)
        low = [v for v in sorted(H) if sum(1 for u in g.adj[v] if u in H) <= 2 * d]
        if low:
            H = H - {low[0]}
            continue
        cut = minimum_vertex_cut(sub)
        Z = {old[v] for v in cut}
        rest = H - Z
        start = min(rest)
        U1 = {start}
        q = deque([start])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if w in rest and w not in U1:
                    U1.add(w)
                    q.append(w)
        A = Z | U1
        B = H - U1
        H = A if claim_premise(g, A, d) else B


def mader_subgraph(g: UndirectedGraph, d: int) -> frozenset[int]:
    """Vertex set of a ``(d+1)``-connected subgraph of a graph of degeneracy ``>= 4d``."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if degeneracy_order(g).degeneracy < 4 * d:
        raise ValueError(f"degeneracy below 4d = {4 * d}")
    return _claim_recursion(g, _core(g, 4 * d), d)


def _core(g: UndirectedGraph, j: int) -> set[int]:
    """Vertices surviving repeated removal of vertices of degree below ``j``."""
    H = set(range(g.n))
    deg = {v: g.degree(v) for v in H}
    q = deque(v for v in sorted(H) if deg[v] < j)
    while q:
        v = q.popleft()
        if v not in H:
            continue
        H.discard(v)
        for u in g.adj[v]:
            if u in H:
                deg[u] -= 1
                if deg[u] == j - 1:
                    q.append(u)
    return H


def connectivity_graph(g: UndirectedGraph, k: int) -> UndirectedGraph:
    """Same vertices; ``uv`` is an edge iff ``g`` has ``k`` internally disjoint ``u``-``v`` paths."""
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)
             if internally_disjoint_path_count(g, u, v, k) >= k]
    return UndirectedGraph.from_edges(g.n, edges)


def find_k_connected_set(g: UndirectedGraph, k: int, d: int) -> frozenset[int] | None:
    """A ``k``-connected set of size ``>= d+1``, or ``None`` if none of size ``>= 4d`` exists.

    When the connectivity graph is not degenerate enough for the guarantee, its
    cores are still checked for the density premise of the extraction, so
    smaller connected sets are found whenever that is cheap to certify.
    """
    if k < 1 or k > d:
        raise ValueError(f"need 1 <= k <= d (got k={k}, d={d})")
    if g.n < d + 1:
        return None
    star = connectivity_graph(g, k)
    if d == 1:
        edges = sorted(star.edges)
        return frozenset(edges[0]) if edges else None
    degen = degeneracy_order(star).degeneracy
    if degen >= 4 * d - 1:
        return mader_subgraph(star, d - 1)
    for j in range(degen, 0, -1):
        H = _core(star, j)
        if claim_premise(star, H, d - 1):
            return _claim_recursion(star, H, d - 1)
    return None


# -- irrelevant vertices ----------------------------------------------------------

def find_irrelevant_vertex(g: UndirectedGraph, T: TerminalPairs | Sequence[tuple[int, int]], k: int,
                           thresholds: Thresholds = DEFAULT_THRESHOLDS) -> int | None:
    """A vertex in no minimal multicut of size ``<= k``, or ``None``."""
    T = T if isinstance(T, TerminalPairs) else TerminalPairs(tuple(T))
    d = thresholds.connected_size_for(k)
    if d < k + 1:
        raise ValueError(f"connected-set size {d} is below k+1 = {k + 1}")
    Y = find_k_connected_set(g, k + 1, d)
    if Y is None:
        return None
    D = bidirect_with_root(g, Y)
    inst = split_terminals(PairCutInstance(D, tuple(T), g.n, k))
    report = relevant_root_neighbors(inst, thresholds)
    survivors = Y - report.marked
    return min(survivors) if survivors else None


def delete_one_irrelevant(g: UndirectedGraph, T: TerminalPairs | Sequence[tuple[int, int]], k: int,
                          thresholds: Thresholds = DEFAULT_THRESHOLDS) -> Deletion | None:
    """Delete a vertex in no minimal multicut of size ``<= k+1``; pairs through it go too."""
    T = T if isinstance(T, TerminalPairs) else TerminalPairs(tuple(T))
    v = find_irrelevant_vertex(g, T, k + 1, thresholds)
    if v is None:
        return None
    h, kept = delete_vertices(g, [v])
    new_of = {old: i for i, old in enumerate(kept)}
    pairs = tuple((new_of[s], new_of[t]) for s, t in T if v not in (s, t))
    return Deletion(h, TerminalPairs(pairs), v, kept)


def degeneracy_reduce(g: UndirectedGraph, T: TerminalPairs | Sequence[tuple[int, int]], k: int,
                      thresholds: Thresholds = DEFAULT_THRESHOLDS) -> SparsifyResult:
    """Delete irrelevant vertices until no large ``(k+2)``-connected set remains."""
    T = T if isinstance(T, TerminalPairs) else TerminalPairs(tuple(T))
    ids = tuple(range(g.n))
    log: list[tuple[int, str]] = []
    while True:
        step = delete_one_irrelevant(g, T, k, thresholds)
        if step is None:
            return SparsifyResult(g, T, ids, tuple(log))
        log.append((ids[step.vertex], "irrelevant"))
        ids = tuple(ids[v] for v in step.kept)
        g, T = step.graph, step.terminals
