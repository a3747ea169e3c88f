"""Vertex separators: minimum X-Y separators, disjoint paths, important separators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from stablecut._flow import SplitNetwork
from stablecut.graph import Digraph, UndirectedGraph


@dataclass(frozen=True)
class SeparatorQuery:
    """Find a set of ``deletable`` vertices of size at most ``budget`` cutting ``sources`` from ``sinks``.

    ``deletable=None`` means every vertex may be cut.  Vertices in ``exclude``
    are treated as absent from the graph.
    """

    graph: UndirectedGraph | Digraph
    sources: frozenset[int]
    sinks: frozenset[int]
    budget: int
    deletable: frozenset[int] | None = None
    exclude: frozenset[int] = frozenset()

    def can_delete(self, v: int) -> bool:
        return self.deletable is None or v in self.deletable


@dataclass(frozen=True)
class SeparatorSet:
    vertices: frozenset[int]
    reach: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)

    def __bool__(self) -> bool:
        # an empty separator is still a found separator
        return True


@dataclass(frozen=True)
class NoSeparator:
    reason: str

    def __bool__(self) -> bool:
        return False


def reach_from(graph, sources: Iterable[int], removed: Iterable[int] = ()) -> frozenset[int]:
    """Vertices reachable from ``sources \\ removed`` in ``graph - removed``."""
    removed = set(removed)
    seen = {s for s in sources if s not in removed}
    q = deque(sorted(seen))
    while q:
        u = q.popleft()
        for w in graph.out_neighbors(u):
            if w not in seen and w not in removed:
                seen.add(w)
                q.append(w)
    return frozenset(seen)


def is_separator(graph, sources: Iterable[int], sinks: Iterable[int], cut: Iterable[int]) -> bool:
    cut = set(cut)
    return not (reach_from(graph, sources, cut) & (set(sinks) - cut))


def is_minimal_separator(graph, sources, sinks, cut) -> bool:
    cut = set(cut)
    if not is_separator(graph, sources, sinks, cut):
        return False
    return all(not is_separator(graph, sources, sinks, cut - {v}) for v in cut)


def min_st_separator(q: SeparatorQuery) -> SeparatorSet | NoSeparator:
    """Minimum separator of size at most ``q.budget`` (the cut closest to the sources)."""
    if q.budget < 0:
        return NoSeparator("negative budget")
    sn = SplitNetwork(q.graph.n, q.graph.out_neighbors, q.sources, q.sinks, q.can_delete,
                      removed=q.exclude)
    value = sn.run(q.budget)
    if sn.infinite:
        blocked = (set(q.sources) & set(q.sinks)) - set(q.exclude)
        return NoSeparator("sets intersect" if blocked else "no separator uses only deletable vertices")
    if value > q.budget:
        return NoSeparator("budget exceeded")
    cut = sn.closest_cut()
    return SeparatorSet(cut, reach_from(q.graph, q.sources, cut | q.exclude))


def st_query(graph, s: int, t: int, budget: int, deletable: Iterable[int] | None = None) -> SeparatorQuery:
    """s-t separator query; ``s`` and ``t`` themselves are never cut."""
    allowed = set(range(graph.n)) if deletable is None else set(deletable)
    allowed -= {s, t}
    return SeparatorQuery(graph, frozenset([s]), frozenset([t]), budget, frozenset(allowed))


def max_disjoint_paths(graph, sources: Iterable[int], r: int) -> tuple[int, list[list[int]]]:
    """Maximum family of source-to-``r`` paths that share no vertex except ``r``."""
    sources = set(sources)
    if r in sources:
        raise ValueError("r must not be a source")
    sn = SplitNetwork(graph.n, graph.out_neighbors, sources, [r], lambda v: v != r)
    count = sn.run()
    return count, sn.paths()


def enumerate_important_separators(
    graph: UndirectedGraph | Digraph,
    sources: Iterable[int],
    sinks: Iterable[int],
    k: int,
    exclude: Iterable[int] = (),
) -> list[SeparatorSet]:
    """All important ``sources``-``sinks`` separators of size at most ``k``.

    Branches on a vertex of the farthest minimum separator: either it is cut
    (budget drops) or it joins the source side as an uncuttable vertex (the
    minimum cut size grows).  The branching yields a superset of the important
    separators, which is then filtered with :func:`is_important`.
    """
    if k < 0:
        return []
    X = frozenset(sources) - frozenset(exclude)
    Y = frozenset(sinks) - frozenset(exclude)
    exclude = frozenset(exclude)
    candidates: set[frozenset[int]] = set()

    def branch(cut: frozenset[int], fixed: frozenset[int], budget: int) -> None:
        removed = exclude | cut
        sn = SplitNetwork(graph.n, graph.out_neighbors, X | fixed, Y, lambda v: v not in fixed,
                          removed=removed)
        value = sn.run(budget)
        if value == 0:
            candidates.add(cut)
            return
        if value > budget:
            return
        far, _ = sn.farthest_cut()
        v = min(far)
        branch(cut | {v}, fixed, budget - 1)
        branch(cut, fixed | {v}, budget)

    branch(frozenset(), frozenset(), k)
    out = []
    for cut in sorted(candidates, key=lambda c: (len(c), sorted(c))):
        if is_important(graph, X, Y, cut, exclude):
            out.append(SeparatorSet(cut, reach_from(graph, X, cut | exclude)))
    return out


def is_important(graph, sources, sinks, cut, exclude: Iterable[int] = ()) -> bool:
    """Minimal, and no separator of at most the same size reaches strictly further."""
    exclude = frozenset(exclude)
    cut = frozenset(cut)
    X = frozenset(sources) - exclude
    Y = frozenset(sinks) - exclude
    if not _is_minimal_excl(graph, X, Y, cut, exclude):
        return False
    reach = reach_from(graph, X, cut | exclude)
    # any dominating separator avoids the current reach and still has to handle X ∩ cut
    sn = SplitNetwork(graph.n, graph.out_neighbors, reach | (X & cut), Y,
                      lambda v: v not in reach, removed=exclude)
    value = sn.run(len(cut))
    if value < len(cut):
        return False
    far, _ = sn.farthest_cut()
    return reach_from(graph, X, far | exclude) == reach


def _is_minimal_excl(graph, X, Y, cut, exclude) -> bool:
    def sep(c):
        return not (reach_from(graph, X, c | exclude) & (Y - c))
    return sep(cut) and all(not sep(cut - {v}) for v in cut)


def important_separators_between(d: Digraph, s: int, t: int, k: int) -> list[SeparatorSet]:
    """Important ``N+(s)``-``N-(t)`` separators in ``d - {s, t}``."""
    return enumerate_important_separators(d, set(d.out_neighbors(s)) - {t}, set(d.in_neighbors(t)) - {s},
                                          k, exclude={s, t})


def important_separators_from_root(d: Digraph, r: int, targets: Iterable[int], k: int) -> list[SeparatorSet]:
    """Important ``N+(r)``-``targets`` separators in ``d - r``."""
    return enumerate_important_separators(d, d.out_neighbors(r), set(targets) - {r}, k, exclude={r})
