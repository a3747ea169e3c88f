"""Immutable graph types, degeneracy ordering, and the graph file format."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from stablecut import _flow


class GraphFormatError(ValueError):
    """Raised when a graph or terminal file cannot be parsed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    _adj_sets: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal vertex count")
        sets = tuple(frozenset(nb) for nb in self.adj)
        for v, nb in enumerate(sets):
            if v in nb:
                raise ValueError(f"self-loop at {v}")
            for u in nb:
                if not 0 <= u < self.n or v not in sets[u]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "_adj_sets", sets)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def complete(cls, n: int) -> "UndirectedGraph":
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adj_sets[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self._adj_sets[v] & vs) for v in vs)

    def closed_neighborhood_union(self, vertices: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for v in vertices:
            out.update(self._adj_sets[v])
        return out

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        # lets flow code treat undirected graphs as symmetric digraphs
        return self.adj[v]


@dataclass(frozen=True)
class Digraph:
    """Simple digraph; 2-cycles are allowed, self-loops are not."""

    n: int
    out_adj: tuple[tuple[int, ...], ...]
    in_adj: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if len(self.out_adj) != self.n:
            raise ValueError("adjacency length must equal vertex count")
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for u, outs in enumerate(self.out_adj):
            for v in outs:
                if u == v:
                    raise ValueError(f"self-loop at {u}")
                if not 0 <= v < self.n:
                    raise ValueError(f"arc ({u}, {v}) out of range")
                ins[v].append(u)
        object.__setattr__(self, "in_adj", tuple(tuple(sorted(x)) for x in ins))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        outs: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            outs[u].add(v)
        return cls(n, tuple(tuple(sorted(s)) for s in outs))

    @property
    def m(self) -> int:
        return sum(len(o) for o in self.out_adj)

    @property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u in range(self.n) for v in self.out_adj[u])

    def vertices(self) -> range:
        return range(self.n)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self.out_adj[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self.in_adj[v]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def underlying(self) -> UndirectedGraph:
        """Undirected graph with an edge wherever an arc exists in either direction."""
        return UndirectedGraph.from_edges(self.n, self.arcs)


Graph = UndirectedGraph | Digraph


@dataclass(frozen=True)
class DegeneracyOrder:
    order: tuple[int, ...]
    rank: tuple[int, ...]
    degeneracy: int
    forward_neighbors: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TerminalPairs:
    """Unordered terminal pairs, each stored as ``(min, max)``."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        norm = []
        for s, t in self.pairs:
            if s == t:
                raise ValueError(f"terminal pair ({s}, {t}) has equal endpoints")
            p = (min(s, t), max(s, t))
            if p in seen:
                raise ValueError(f"duplicate terminal pair {p}")
            seen.add(p)
            norm.append(p)
        object.__setattr__(self, "pairs", tuple(norm))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def vertices(self) -> set[int]:
        return {x for p in self.pairs for x in p}


def degeneracy_order(g: UndirectedGraph) -> DegeneracyOrder:
    """Peel minimum-degree vertices, lowest id first among ties."""
    deg = [g.degree(v) for v in range(g.n)]
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: list[int] = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d = max(d, dv)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    rank = [0] * g.n
    for i, v in enumerate(order):
        rank[v] = i
    fwd = tuple(tuple(u for u in g.adj[v] if rank[u] > rank[v]) for v in range(g.n))
    return DegeneracyOrder(tuple(order), tuple(rank), d, fwd)


def degeneracy(g: UndirectedGraph) -> int:
    return degeneracy_order(g).degeneracy


def induced_subgraph(g: UndirectedGraph, keep: Iterable[int]) -> tuple[UndirectedGraph, tuple[int, ...]]:
    """Return ``(g[keep], new_to_old)`` with vertices renumbered in increasing order."""
    old = tuple(sorted(set(keep)))
    new_of = {v: i for i, v in enumerate(old)}
    adj = tuple(tuple(new_of[u] for u in g.adj[v] if u in new_of) for v in old)
    return UndirectedGraph(len(old), adj), old


def delete_vertices(g: UndirectedGraph, gone: Iterable[int]) -> tuple[UndirectedGraph, tuple[int, ...]]:
    gone = set(gone)
    return induced_subgraph(g, (v for v in range(g.n) if v not in gone))


def bidirect_with_root(g: UndirectedGraph, root_in_neighbors: Iterable[int]) -> Digraph:
    """Both orientations of every edge, plus a sink root ``r = n`` fed by ``root_in_neighbors``."""
    ys = set(root_in_neighbors)
    if any(not 0 <= y < g.n for y in ys):
        raise ValueError("root in-neighbours must be vertices of g")
    r = g.n
    outs = [list(g.adj[v]) + ([r] if v in ys else []) for v in range(g.n)]
    outs.append([])
    return Digraph(g.n + 1, tuple(tuple(o) for o in outs))


def reverse(d: Digraph) -> Digraph:
    return Digraph(d.n, d.in_adj)


def internally_disjoint_path_count(g: UndirectedGraph, u: int, v: int, cap: int) -> int:
    """``min(cap, #internally vertex-disjoint u-v paths)``; an edge ``uv`` counts as one path."""
    if u == v:
        raise ValueError("u and v must differ")
    direct = 1 if g.has_edge(u, v) else 0
    if direct >= cap:
        return cap
    flow = _flow.max_vertex_disjoint(g, {u}, {v}, undeletable={u, v}, limit=cap - direct,
                                     skip_arc=(u, v) if direct else None)
    return min(cap, direct + flow)


def minimum_vertex_cut(g: UndirectedGraph) -> frozenset[int] | None:
    """A minimum vertex set whose removal disconnects ``g``; ``None`` for complete graphs.

    Uses the Esfahanian-Hakimi reduction: with ``v`` of minimum degree, a minimum
    cut either avoids ``v`` (separating it from a non-neighbour) or contains it
    (separating two non-adjacent neighbours of ``v``).
    """
    n = g.n
    if n <= 1:
        return None
    v = min(range(n), key=lambda x: (g.degree(x), x))
    best: frozenset[int] | None = None

    def consider(a: int, b: int) -> None:
        nonlocal best
        limit = (len(best) if best is not None else n) - 1
        if limit < 0:
            return
        cut = _flow.min_vertex_cut_between(g, a, b, limit)
        if cut is not None and (best is None or len(cut) < len(best)):
            best = cut

    nv = g.neighbor_set(v)
    for w in range(n):
        if w != v and w not in nv:
            consider(v, w)
    nbrs = g.adj[v]
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1:]:
            if not g.has_edge(x, y):
                consider(x, y)
    return best


def vertex_connectivity(g: UndirectedGraph) -> int:
    """Size of a minimum vertex cut; ``n - 1`` for complete graphs."""
    if g.n < 2:
        raise ValueError("vertex connectivity needs at least two vertices")
    cut = minimum_vertex_cut(g)
    return g.n - 1 if cut is None else len(cut)


def _strip_comment(line: str) -> str:
    return "" if line.lstrip().startswith("#") else line.strip()


def parse_graph(text: str) -> UndirectedGraph | Digraph:
    """Parse ``n m [directed]`` followed by ``m`` lines ``u v``."""
    lines = [(i + 1, _strip_comment(raw)) for i, raw in enumerate(text.splitlines())]
    lines = [(i, s) for i, s in lines if s]
    if not lines:
        raise GraphFormatError(1, "missing header")
    hno, header = lines[0]
    parts = header.split()
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "directed"):
        raise GraphFormatError(hno, f"bad header {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(hno, f"bad header {header!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError(hno, "negative counts")
    directed = len(parts) == 3
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(body[-1][0] if body else hno, f"expected {m} edge lines, found {len(body)}")
    pairs = []
    for no, s in body:
        u, v = _parse_pair(no, s, n)
        if u == v:
            raise GraphFormatError(no, f"self-loop at {u}")
        pairs.append((u, v))
    return Digraph.from_arcs(n, pairs) if directed else UndirectedGraph.from_edges(n, pairs)


def _parse_pair(no: int, s: str, n: int) -> tuple[int, int]:
    parts = s.split()
    if len(parts) != 2:
        raise GraphFormatError(no, f"expected two vertex ids, got {s!r}")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError(no, f"non-integer vertex id in {s!r}") from None
    for x in (u, v):
        if not 0 <= x < n:
            raise GraphFormatError(no, f"vertex id {x} out of range for n={n}")
    return u, v


def parse_terminals(text: str, n: int) -> TerminalPairs:
    pairs = []
    seen = set()
    for i, raw in enumerate(text.splitlines()):
        s = _strip_comment(raw)
        if not s:
            continue
        u, v = _parse_pair(i + 1, s, n)
        if u == v:
            raise GraphFormatError(i + 1, f"terminal pair with equal endpoints {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        pairs.append(key)
    return TerminalPairs(tuple(pairs))


def format_graph(g: UndirectedGraph | Digraph) -> str:
    if isinstance(g, Digraph):
        arcs = sorted(g.arcs)
        return "\n".join([f"{g.n} {len(arcs)} directed"] + [f"{u} {v}" for u, v in arcs]) + "\n"
    edges = sorted(g.edges)
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def format_terminals(t: TerminalPairs | Sequence[tuple[int, int]]) -> str:
    return "".join(f"{s} {u}\n" for s, u in t)
