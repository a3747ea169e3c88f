"""Independence covering families for graphs of bounded degeneracy.

A covering family for ``(G, k)`` is a list of independent sets such that every
independent set of size at most ``k`` lies inside some member.  Every
construction here runs the same coloring step: given a set ``B`` of black
vertices and a degeneracy order, keep the black vertices none of whose forward
neighbours is black.  The constructions differ only in how the black sets are
chosen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from stablecut.graph import DegeneracyOrder, UndirectedGraph, degeneracy_order, delete_vertices
from stablecut.oracles import oracle_independent_sets

DEFAULT_CAP = 10**6
# exhaustive (A, B) / subset checks above this many cases are refused
VERIFY_CAP = 5 * 10**6


class ResourceLimitError(RuntimeError):
    """A construction would exceed its configured size cap."""


@dataclass(frozen=True)
class CoveringFamily:
    members: tuple[frozenset[int], ...]
    k: int
    d: int
    construction: str
    seed: int | None = None
    stats: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class LopsidedUniversalFamily:
    n: int
    p: int
    q: int
    sets: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class PerfectHashFamily:
    n: int
    ell: int
    functions: tuple[tuple[int, ...], ...]

    @property
    def range_size(self) -> int:
        return self.ell * self.ell


def stream_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for draw ``index``; parallel draws reproduce serial ones."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def cover_from_coloring(order: DegeneracyOrder, black: Iterable[int]) -> frozenset[int]:
    """Black vertices with no black forward neighbour."""
    black = set(black)
    return frozenset(v for v in black if not any(u in black for u in order.forward_neighbors[v]))


def draw_random_cover(g: UndirectedGraph, order: DegeneracyOrder, rng: np.random.Generator) -> frozenset[int]:
    p = 1.0 / (order.degeneracy + 1)
    mask = rng.random(g.n) < p
    return cover_from_coloring(order, np.flatnonzero(mask).tolist())


def single_draw_bound(k: int, d: int) -> float:
    """Lower bound on ``Pr[X ⊆ Z]`` for one draw and a fixed independent ``X``, ``|X| <= k``."""
    ell = k * (d + 1)
    return 1.0 / (math.comb(ell, k) * ell)


def _log_n(n: int) -> int:
    return max(1, math.ceil(math.log(n))) if n > 1 else 1


def random_family_size(n: int, k: int, d: int) -> int:
    return math.comb(k * (d + 1), k) * 2 * k * k * (d + 1) * _log_n(n)


def build_random_family(g: UndirectedGraph, k: int, seed: int = 0, cap: int = DEFAULT_CAP,
                        order: DegeneracyOrder | None = None) -> CoveringFamily:
    """Independent draws; covers every ``<= k`` independent set with probability ``>= 1 - 1/n``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    order = order or degeneracy_order(g)
    size = random_family_size(g.n, k, order.degeneracy)
    if size > cap:
        raise ResourceLimitError(f"random family needs {size} draws (cap {cap})")
    members = tuple(draw_random_cover(g, order, stream_rng(seed, i)) for i in range(size))
    return CoveringFamily(members, k, order.degeneracy, "random", seed, {"colorings": size})


# -- lopsided universal families ------------------------------------------------

def _popcount_masks(width: int, q: int) -> np.ndarray:
    masks = np.arange(1 << width, dtype=np.int64)
    counts = np.zeros_like(masks)
    for b in range(width):
        counts += (masks >> b) & 1
    return masks[counts == q]


def _down_closure(covered: np.ndarray, width: int) -> None:
    """In place: mark every subset of a marked mask."""
    for b in range(width):
        view = covered.reshape(-1, 2, 1 << b)
        view[:, 0, :] |= view[:, 1, :]


def _lopsided_deficits(n: int, p: int, q: int, sets: list[int], stop_first: bool = False):
    """Yield ``(A, [B, ...])`` for every ``A`` with uncovered ``B`` (sets as bitmasks)."""
    width = n - p
    if math.comb(n, p) * (1 << width) > VERIFY_CAP * 8:
        raise ResourceLimitError(f"exhaustive lopsided check too large for n={n}, p={p}")
    qmasks = _popcount_masks(width, q)
    full = (1 << n) - 1
    arr = np.array(sets, dtype=np.int64)
    for A in combinations(range(n), p):
        amask = sum(1 << a for a in A)
        rest = [v for v in range(n) if not amask >> v & 1]
        covered = np.zeros(1 << width, dtype=bool)
        free = full & ~arr[(arr & amask) == amask]
        if len(free):
            # compress the bits of ``free`` at positions ``rest`` into a local mask
            local = np.zeros(len(free), dtype=np.int64)
            for i, v in enumerate(rest):
                local |= ((free >> v) & 1) << i
            covered[local] = True
            _down_closure(covered, width)
        missing = qmasks[~covered[qmasks]]
        if len(missing):
            bs = []
            for local in missing.tolist():
                bs.append(sum(1 << rest[i] for i in range(width) if local >> i & 1))
                if stop_first:
                    break
            yield amask, bs
            if stop_first:
                return


def lopsided_witness(fam: LopsidedUniversalFamily) -> tuple[frozenset[int], frozenset[int]] | None:
    """An ``(A, B)`` pair that no member separates, or ``None`` if the family is valid."""
    sets = [sum(1 << v for v in s) for s in fam.sets]
    for amask, bs in _lopsided_deficits(fam.n, fam.p, fam.q, sets, stop_first=True):
        return _unmask(amask), _unmask(bs[0])
    return None


def _unmask(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


@lru_cache(maxsize=256)
def lopsided_universal_family(n: int, p: int, q: int, seed: int = 0) -> LopsidedUniversalFamily:
    """An ``n``-``p``-``q`` lopsided universal family.

    Random candidates (each element kept with probability ``p/(p+q)``) are
    followed by an exhaustive pass; every ``A`` left with uncovered ``B`` sets
    gets one extra member that avoids all of them.
    """
    if p < 0 or q < 0 or p + q > n:
        raise ValueError(f"need 0 <= p, q and p + q <= n (got n={n}, p={p}, q={q})")
    full = (1 << n) - 1
    if p == 0:
        return LopsidedUniversalFamily(n, p, q, (frozenset(),))
    if q == 0:
        return LopsidedUniversalFamily(n, p, q, (frozenset(range(n)),))
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(n, p, q)))
    count = math.ceil(math.comb(p + q, p) * _log_n(n))
    draws = rng.random((count, n)) < p / (p + q)
    weights = 1 << np.arange(n, dtype=np.int64)
    sets = sorted({int(x) for x in (draws.astype(np.int64) @ weights).tolist()})
    for amask, bs in list(_lopsided_deficits(n, p, q, sets)):
        union = 0
        for b in bs:
            union |= b
        sets.append(full & ~union)
    # a later fix can leave an earlier A fully covered, but never uncover anything
    sets = sorted(set(sets))
    return LopsidedUniversalFamily(n, p, q, tuple(_unmask(s) for s in sets))


# -- perfect hash families ------------------------------------------------------

def _collision_pairs(f: Sequence[int]) -> list[int]:
    by_value: dict[int, list[int]] = {}
    for v, x in enumerate(f):
        by_value.setdefault(x, []).append(v)
    return [(1 << a) | (1 << b) for vs in by_value.values() for a, b in combinations(vs, 2)]


def hash_witness(fam: PerfectHashFamily) -> frozenset[int] | None:
    """A set of size ``<= ell`` on which no function is injective, or ``None``."""
    size = min(fam.ell, fam.n)
    if math.comb(fam.n, size) > VERIFY_CAP:
        raise ResourceLimitError(f"exhaustive hash check too large for n={fam.n}, ell={fam.ell}")
    collisions = [_collision_pairs(f) for f in fam.functions]
    for S in combinations(range(fam.n), size):
        smask = sum(1 << v for v in S)
        if not any(all(c & smask != c for c in cs) for cs in collisions):
            return frozenset(S)
    return None


@lru_cache(maxsize=256)
def perfect_hash_family(n: int, ell: int, seed: int = 0) -> PerfectHashFamily:
    """Functions ``[n] -> [ell^2]``, one injective on each set of size ``<= ell``."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    size = min(ell, n)
    if size <= 1:
        return PerfectHashFamily(n, ell, ((0,) * n,))
    if size == n:
        return PerfectHashFamily(n, ell, (tuple(range(n)),))
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(n, ell)))
    r = ell * ell
    # a uniform map into ell^2 values is injective on a fixed ell-set with probability > 1/2
    count = math.ceil(math.log2(math.comb(n, size))) + 1
    funcs = [tuple(int(x) for x in rng.integers(0, r, n)) for _ in range(count)]
    collisions = [_collision_pairs(f) for f in funcs]
    if math.comb(n, size) > VERIFY_CAP:
        raise ResourceLimitError(f"exhaustive hash check too large for n={n}, ell={ell}")
    for S in combinations(range(n), size):
        smask = sum(1 << v for v in S)
        if any(all(c & smask != c for c in cs) for cs in collisions):
            continue
        f = [int(x) for x in rng.integers(0, r, n)]
        # distinct values on S; collisions elsewhere are harmless
        for i, v in enumerate(S):
            f[v] = i
        funcs.append(tuple(f))
        collisions.append(_collision_pairs(f))
    return PerfectHashFamily(n, ell, tuple(funcs))


# -- deterministic covering families --------------------------------------------

def _dedupe(members: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted(set(members), key=lambda s: (len(s), sorted(s))))


def lopsided_shapes(n: int, k: int, d: int) -> list[tuple[int, int]]:
    """``(p, q)`` parameters whose lopsided families handle every ``|X| <= k``, ``|Y| <= kd``."""
    if k + k * d <= n:
        return [(k, k * d)]
    # too few vertices to pad X and Y to full size: one family per |X|
    return [(a, min(k * d, n - a)) for a in range(1, min(k, n) + 1)]


def lopsided_formula_size(n: int, k: int, d: int) -> int:
    return math.comb(k * (d + 1), k) * _log_n(n)


def hash_formula_size(n: int, k: int, d: int) -> int:
    ell = k * (d + 1)
    return math.comb(ell * ell, k) * _log_n(n)


def build_lopsided_family(g: UndirectedGraph, k: int, seed: int = 0, cap: int = DEFAULT_CAP,
                          order: DegeneracyOrder | None = None) -> CoveringFamily:
    if k < 1:
        raise ValueError("k must be at least 1")
    order = order or degeneracy_order(g)
    d = order.degeneracy
    if g.n == 0:
        return CoveringFamily((frozenset(),), k, d, "lopsided", seed, {"colorings": 1})
    predicted = sum(math.comb(p + q, p) for p, q in lopsided_shapes(g.n, k, d)) * _log_n(g.n)
    if predicted > cap:
        raise ResourceLimitError(f"lopsided family predicted size {predicted} exceeds cap {cap}")
    colorings = 0
    members = []
    for p, q in lopsided_shapes(g.n, k, d):
        fam = lopsided_universal_family(g.n, p, q, seed)
        colorings += len(fam.sets)
        members.extend(cover_from_coloring(order, s) for s in fam.sets)
    return CoveringFamily(_dedupe(members), k, d, "lopsided", seed, {"colorings": colorings})


def build_hash_family(g: UndirectedGraph, k: int, seed: int = 0, cap: int = DEFAULT_CAP,
                      order: DegeneracyOrder | None = None) -> CoveringFamily:
    """Color ``f^-1(A)`` black for each hash function ``f`` and each ``k``-set ``A`` of its values.

    Only value sets inside the image of ``f`` are used: the image of a vertex
    set is always inside it.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    order = order or degeneracy_order(g)
    d = order.degeneracy
    n = g.n
    if n == 0:
        return CoveringFamily((frozenset(),), k, d, "hash", seed, {"colorings": 1})
    ell = k * (d + 1)
    fam = perfect_hash_family(n, ell, seed)
    lo = max(1, min(k, n - k * d))
    predicted = len(fam.functions) * sum(math.comb(min(n, ell * ell), j) for j in range(lo, min(k, n) + 1))
    if predicted > cap:
        raise ResourceLimitError(f"hash family predicted size {predicted} exceeds cap {cap}")
    members = []
    colorings = 0
    for f in fam.functions:
        image = sorted(set(f))
        preimage: dict[int, list[int]] = {}
        for v, x in enumerate(f):
            preimage.setdefault(x, []).append(v)
        for j in range(lo, min(k, len(image)) + 1):
            for A in combinations(image, j):
                colorings += 1
                members.append(cover_from_coloring(order, (v for x in A for v in preimage[x])))
    return CoveringFamily(_dedupe(members), k, d, "hash", seed,
                          {"colorings": colorings, "hash_functions": len(fam.functions)})


def build_family(g: UndirectedGraph, k: int, construction: str = "lopsided", seed: int = 0,
                 cap: int = DEFAULT_CAP) -> CoveringFamily:
    builders = {"lopsided": build_lopsided_family, "hash": build_hash_family, "random": build_random_family}
    try:
        builder = builders[construction]
    except KeyError:
        raise ValueError(f"unknown construction {construction!r}") from None
    return builder(g, k, seed=seed, cap=cap)


def build_modulator_family(g: UndirectedGraph, modulator: Iterable[int], k: int,
                           inner_family: CoveringFamily, cap: int = DEFAULT_CAP,
                           max_modulator: int = 20) -> CoveringFamily:
    """Extend a covering family of ``g - modulator`` to ``g``.

    ``inner_family`` members use the vertex ids of ``g``.  Members are
    ``(A ∪ B) \\ N(B)`` for every inner member ``A`` and independent ``B ⊆ modulator``.
    """
    S = sorted(set(modulator))
    if len(S) > max_modulator or (len(inner_family) << len(S)) > cap:
        raise ResourceLimitError(f"modulator of size {len(S)} gives too many members")
    bs = [frozenset(c) for r in range(len(S) + 1) for c in combinations(S, r)
          if g.is_independent(c)]
    members = []
    for B in bs:
        nb = g.closed_neighborhood_union(B)
        for A in inner_family.members:
            members.append(frozenset((A | B) - nb))
    return CoveringFamily(_dedupe(members), k, inner_family.d, f"modulator+{inner_family.construction}",
                          inner_family.seed, {"colorings": len(members), "modulator": len(S)})


def modulator_family(g: UndirectedGraph, modulator: Iterable[int], k: int, construction: str = "lopsided",
                     seed: int = 0, cap: int = DEFAULT_CAP) -> CoveringFamily:
    """Build the inner family on ``g - modulator`` and extend it."""
    S = set(modulator)
    h, old = delete_vertices(g, S)
    inner = build_family(h, k, construction, seed, cap)
    mapped = CoveringFamily(tuple(frozenset(old[v] for v in m) for m in inner.members),
                            k, inner.d, inner.construction, seed, inner.stats)
    return build_modulator_family(g, S, k, mapped, cap)


@dataclass(frozen=True)
class CoverageReport:
    ok: bool
    uncovered: frozenset[int] | None = None
    dependent_member: frozenset[int] | None = None


def verify_covering(g: UndirectedGraph, k: int, family: CoveringFamily | Iterable[frozenset[int]],
                    max_n: int = 16) -> CoverageReport:
    """Exhaustively check independence of members and coverage of all ``<= k`` independent sets."""
    members = list(family.members if isinstance(family, CoveringFamily) else family)
    for m in members:
        if not g.is_independent(m):
            return CoverageReport(False, dependent_member=frozenset(m))
    masks = np.array([sum(1 << v for v in m) for m in members] or [0], dtype=np.int64)
    if not members:
        masks = np.array([], dtype=np.int64)
    for X in oracle_independent_sets(g, k, max_n=max_n, max_k=max(k, 4)):
        x = sum(1 << v for v in X)
        if not np.any((masks & x) == x):
            return CoverageReport(False, uncovered=X)
    return CoverageReport(True)


def format_family(family: CoveringFamily) -> str:
    lines = [f"# k={family.k} d={family.d} construction={family.construction} seed={family.seed}"]
    lines += [" ".join(str(v) for v in sorted(m)) for m in family.members]
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> CoveringFamily:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("family file must start with a header line")
    meta = dict(tok.split("=", 1) for tok in lines[0][1:].split())
    members = tuple(frozenset(int(x) for x in line.split()) for line in lines[1:])
    seed = None if meta.get("seed") in (None, "None") else int(meta["seed"])
    return CoveringFamily(members, int(meta["k"]), int(meta["d"]), meta["construction"], seed)
