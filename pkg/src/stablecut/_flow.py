"""Vertex-capacitated max flow on split networks.

Every vertex ``v`` becomes ``v_in = 2v -> v_out = 2v + 1`` with capacity 1 when
deletable and ``INF`` otherwise; arcs of the graph become ``INF`` arcs
``u_out -> w_in``.  Augmenting paths are found by BFS over adjacency lists built
in increasing vertex order, so every cut and path set is deterministic.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable

INF = 1 << 40


class FlowNet:
    def __init__(self, size: int):
        self.adj: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.orig: list[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.orig.append(c)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        self.orig.append(0)

    def _augment(self, s: int, t: int) -> int:
        parent = [-1] * len(self.adj)
        parent[s] = -2
        q = deque([s])
        while q:
            u = q.popleft()
            if u == t:
                break
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e] > 0 and parent[v] == -1:
                    parent[v] = e
                    q.append(v)
        if parent[t] == -1:
            return 0
        bottleneck = INF
        v = t
        while v != s:
            e = parent[v]
            bottleneck = min(bottleneck, self.cap[e])
            v = self.to[e ^ 1]
        v = t
        while v != s:
            e = parent[v]
            self.cap[e] -= bottleneck
            self.cap[e ^ 1] += bottleneck
            v = self.to[e ^ 1]
        return bottleneck

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        """Augment until no path remains or the flow exceeds ``limit``."""
        flow = 0
        while limit is None or flow <= limit:
            pushed = self._augment(s, t)
            if not pushed:
                break
            flow += pushed
            if flow >= INF:
                break
        return flow

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen

    def coreachable(self, t: int) -> set[int]:
        """Nodes with a residual path *to* ``t``."""
        seen = {t}
        q = deque([t])
        while q:
            v = q.popleft()
            for e in self.adj[v]:
                # e is v->u; its twin e^1 is u->v
                u = self.to[e]
                if self.cap[e ^ 1] > 0 and u not in seen:
                    seen.add(u)
                    q.append(u)
        return seen


class SplitNetwork:
    """Split network for a (di)graph with source set, sink set, and deletable vertices."""

    def __init__(
        self,
        n: int,
        out_neighbors: Callable[[int], Iterable[int]],
        sources: Iterable[int],
        sinks: Iterable[int],
        deletable: Callable[[int], bool],
        removed: frozenset[int] | set[int] = frozenset(),
        skip_arc: tuple[int, int] | None = None,
    ):
        self.n = n
        self.source = 2 * n
        self.sink = 2 * n + 1
        self.removed = removed
        net = FlowNet(2 * n + 2)
        for v in range(n):
            if v not in removed:
                net.add(2 * v, 2 * v + 1, 1 if deletable(v) else INF)
        skip = {skip_arc, skip_arc[::-1]} if skip_arc else set()
        for u in range(n):
            if u in removed:
                continue
            for w in out_neighbors(u):
                if w not in removed and (u, w) not in skip:
                    net.add(2 * u + 1, 2 * w, INF)
        for x in sorted(set(sources)):
            if x not in removed:
                net.add(self.source, 2 * x, INF)
        for y in sorted(set(sinks)):
            if y not in removed:
                net.add(2 * y + 1, self.sink, INF)
        self.net = net
        self.value = 0

    def run(self, limit: int | None = None) -> int:
        self.value += self.net.max_flow(self.source, self.sink, None if limit is None else limit - self.value)
        return self.value

    @property
    def infinite(self) -> bool:
        return self.value >= INF

    def closest_cut(self) -> frozenset[int]:
        reach = self.net.reachable(self.source)
        return frozenset(v for v in range(self.n) if 2 * v in reach and 2 * v + 1 not in reach)

    def farthest_cut(self) -> tuple[frozenset[int], frozenset[int]]:
        """Minimum cut nearest the sinks, with the vertices left on the source side."""
        co = self.net.coreachable(self.sink)
        cut = frozenset(v for v in range(self.n)
                        if v not in self.removed and 2 * v + 1 in co and 2 * v not in co)
        side = frozenset(v for v in range(self.n)
                         if v not in self.removed and 2 * v not in co and 2 * v + 1 not in co)
        return cut, side

    def paths(self) -> list[list[int]]:
        """Decompose the current flow into vertex paths from a source to a sink."""
        net = self.net
        flow = [net.orig[e] - net.cap[e] if net.orig[e] else 0 for e in range(len(net.to))]
        out: list[list[int]] = []
        while True:
            path: list[int] = []
            node = self.source
            while node != self.sink:
                nxt = next((e for e in net.adj[node] if flow[e] > 0), None)
                if nxt is None:
                    return out
                flow[nxt] -= 1
                node = net.to[nxt]
                if node < 2 * self.n and node % 2 == 0:
                    v = node // 2
                    if v in path:
                        # drop a flow cycle through undeletable vertices
                        del path[path.index(v) + 1:]
                    else:
                        path.append(v)
            out.append(path)


def max_vertex_disjoint(g, sources, sinks, undeletable=frozenset(), limit=None, skip_arc=None) -> int:
    undeletable = set(undeletable)
    sn = SplitNetwork(g.n, g.out_neighbors, sources, sinks, lambda v: v not in undeletable,
                      skip_arc=skip_arc)
    return sn.run(limit)


def min_vertex_cut_between(g, a: int, b: int, limit: int) -> frozenset[int] | None:
    """Minimum ``a``-``b`` vertex cut avoiding ``a`` and ``b`` if its size is at most ``limit``."""
    sn = SplitNetwork(g.n, g.out_neighbors, [a], [b], lambda v: v not in (a, b))
    if sn.run(limit) > limit:
        return None
    return sn.closest_cut()
