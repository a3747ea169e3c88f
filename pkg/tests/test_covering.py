from itertools import combinations, product
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import degenerate_graphs, path
from stablecut.covering import (
    CoveringFamily,
    ResourceLimitError,
    build_family,
    build_hash_family,
    build_lopsided_family,
    build_modulator_family,
    build_random_family,
    draw_random_cover,
    format_family,
    hash_witness,
    lopsided_universal_family,
    lopsided_witness,
    modulator_family,
    parse_family,
    perfect_hash_family,
    random_family_size,
    single_draw_bound,
    stream_rng,
    verify_covering,
)
from stablecut.generators import clique_transversals, disjoint_cliques, random_degenerate
from stablecut.graph import UndirectedGraph, degeneracy_order
from stablecut.oracles import oracle_independent_sets

K3 = UndirectedGraph.complete(3)
EDGELESS3 = UndirectedGraph.from_edges(3, [])
BUILDERS = [build_lopsided_family, build_hash_family]


def lopsided_ok(n, p, q, sets):
    for A in combinations(range(n), p):
        rest = [v for v in range(n) if v not in A]
        for B in combinations(rest, q):
            if not any(set(A) <= F and not set(B) & F for F in sets):
                return False
    return True


def brute_min_lopsided(n, p, q):
    universe = [frozenset(c) for r in range(n + 1) for c in combinations(range(n), r)]
    for size in range(1, len(universe) + 1):
        for fam in combinations(universe, size):
            if lopsided_ok(n, p, q, fam):
                return size


def exact_cover_probability(g, X):
    """Sum over every colouring; no sampling, no shared code with the drawer."""
    order = degeneracy_order(g)
    p = 1 / (order.degeneracy + 1)
    total = 0.0
    for bits in product((0, 1), repeat=g.n):
        black = {v for v in range(g.n) if bits[v]}
        if not set(X) <= black:
            continue
        if any(u in black for x in X for u in order.forward_neighbors[x]):
            continue
        total += p ** len(black) * (1 - p) ** (g.n - len(black))
    return total


class TestLopsided:
    def test_p_zero(self):
        assert lopsided_universal_family(5, 0, 3).sets == (frozenset(),)

    def test_two_elements(self):
        assert lopsided_ok(2, 1, 1, [{0}, {1}]) and brute_min_lopsided(2, 1, 1) == 2
        fam = lopsided_universal_family(2, 1, 1)
        assert {frozenset({0}), frozenset({1})} <= set(fam.sets)

    def test_minimum_size_4_1_2(self):
        best = brute_min_lopsided(4, 1, 2)
        assert best == 4
        fam = lopsided_universal_family(4, 1, 2)
        assert lopsided_ok(4, 1, 2, fam.sets) and len(fam.sets) >= best

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            lopsided_universal_family(3, 2, 2)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 8), st.data())
    def test_valid(self, n, data):
        p = data.draw(st.integers(0, n))
        q = data.draw(st.integers(0, n - p))
        seed = data.draw(st.integers(0, 100))
        fam = lopsided_universal_family(n, p, q, seed)
        assert lopsided_ok(n, p, q, fam.sets)
        assert lopsided_witness(fam) is None

    def test_witness_on_broken_family(self):
        fam = lopsided_universal_family(5, 2, 2)
        broken = type(fam)(5, 2, 2, fam.sets[1:])
        A, B = lopsided_witness(broken) or (None, None)
        if A is not None:
            assert not any(A <= F and not B & F for F in broken.sets)


class TestPerfectHash:
    def test_ell_one(self):
        assert perfect_hash_family(6, 1).functions == ((0,) * 6,)

    def test_identity(self):
        assert perfect_hash_family(4, 4).functions == ((0, 1, 2, 3),)

    def test_separates_all_pairs(self):
        fam = perfect_hash_family(4, 2)
        for a, b in combinations(range(4), 2):
            assert any(f[a] != f[b] for f in fam.functions)
        assert all(0 <= x < 4 for f in fam.functions for x in f)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 9), st.integers(1, 5), st.integers(0, 50))
    def test_injective_everywhere(self, n, ell, seed):
        fam = perfect_hash_family(n, ell, seed)
        assert hash_witness(fam) is None
        for S in combinations(range(n), min(n, ell)):
            assert any(len({f[v] for v in S}) == len(S) for f in fam.functions)


class TestRandomDraws:
    def test_p3_exact_probability(self):
        # order 0,1,2 has forward neighbours 0->1, 1->2; X={0,2} needs 0,2 black and 1 white
        g = path(3)
        assert exact_cover_probability(g, {0, 2}) == pytest.approx(1 / 8)
        assert 1 / 8 >= single_draw_bound(2, 1) == pytest.approx(1 / 24)

    def test_bound_values(self):
        assert single_draw_bound(3, 2) == pytest.approx(1 / 756)

    @settings(max_examples=40, deadline=None)
    @given(degenerate_graphs(max_n=8, max_d=2), st.integers(1, 3))
    def test_exact_probability_above_bound(self, g, k):
        d = degeneracy_order(g).degeneracy
        for X in oracle_independent_sets(g, k):
            assert exact_cover_probability(g, X) >= single_draw_bound(k, d) - 1e-12

    @settings(max_examples=30, deadline=None)
    @given(degenerate_graphs(max_n=12), st.integers(0, 1000))
    def test_draws_are_independent(self, g, seed):
        order = degeneracy_order(g)
        Z = draw_random_cover(g, order, stream_rng(seed, 0))
        assert g.is_independent(Z)
        assert Z == draw_random_cover(g, order, stream_rng(seed, 0))

    def test_random_family_size(self):
        g = random_degenerate(12, 2, np.random.default_rng(3))
        fam = build_random_family(g, 2, seed=7)
        d = fam.d
        assert len(fam) == random_family_size(12, 2, d)
        assert fam == build_random_family(g, 2, seed=7)


class TestDeterministic:
    @pytest.mark.parametrize("build", BUILDERS)
    def test_edgeless_contains_everything(self, build):
        assert frozenset(range(3)) in build(EDGELESS3, 2).members

    @pytest.mark.parametrize("build", BUILDERS)
    def test_p3_covers_ends(self, build):
        fam = build(path(3), 2)
        assert any({0, 2} <= m for m in fam)
        assert verify_covering(path(3), 2, fam).ok

    @pytest.mark.parametrize("build", BUILDERS)
    def test_triangle_singletons(self, build):
        fam = build(K3, 1)
        assert all(any(v in m for m in fam) for v in range(3))

    @settings(max_examples=40, deadline=None)
    @given(degenerate_graphs(max_n=12, max_d=3), st.integers(1, 3), st.integers(0, 20))
    def test_families_cover(self, g, k, seed):
        for build in BUILDERS:
            assert verify_covering(g, k, build(g, k, seed=seed)).ok

    def test_cap(self):
        g = random_degenerate(14, 3, np.random.default_rng(0))
        with pytest.raises(ResourceLimitError):
            build_family(g, 3, "lopsided", cap=10)

    def test_unknown_construction(self):
        with pytest.raises(ValueError):
            build_family(K3, 1, "magic")


class TestModulator:
    def test_empty_modulator(self):
        g = random_degenerate(8, 2, np.random.default_rng(1))
        inner = build_lopsided_family(g, 2)
        assert set(build_modulator_family(g, [], 2, inner).members) == set(inner.members)

    def test_k2(self):
        g = UndirectedGraph.from_edges(2, [(0, 1)])
        fam = modulator_family(g, [0], 1)
        assert verify_covering(g, 1, fam).ok
        assert any(0 in m for m in fam) and any(1 in m for m in fam)

    @settings(max_examples=30, deadline=None)
    @given(degenerate_graphs(max_n=12, max_d=3, min_n=2), st.integers(1, 3), st.data())
    def test_random_modulator(self, g, k, data):
        S = data.draw(st.sets(st.integers(0, g.n - 1), max_size=4))
        assert verify_covering(g, k, modulator_family(g, S, k, seed=1)).ok


class TestVerify:
    def test_missing_superset(self):
        fam = build_lopsided_family(path(3), 2)
        kept = [m for m in fam if not {0, 2} <= m]
        report = verify_covering(path(3), 2, kept)
        assert not report.ok and report.uncovered == frozenset({0, 2})

    def test_dependent_member(self):
        report = verify_covering(path(3), 1, [frozenset({0, 1})])
        assert not report.ok and report.dependent_member == frozenset({0, 1})

    def test_cliques_single_transversal(self):
        g = disjoint_cliques(3, 4)
        T = clique_transversals(3, 4)
        report = verify_covering(g, 3, [T[0]])
        assert not report.ok
        assert report.uncovered != T[0] and g.is_independent(report.uncovered)

    def test_cliques_need_every_transversal(self):
        g = disjoint_cliques(3, 4)
        fam = build_lopsided_family(g, 3)
        assert set(clique_transversals(3, 4)) <= set(fam.members)
        assert len(fam) >= comb(12 // 3, 1) ** 3


def test_serialization_round_trip():
    fam = build_lopsided_family(random_degenerate(9, 2, np.random.default_rng(5)), 2, seed=3)
    back = parse_family(format_family(fam))
    assert isinstance(back, CoveringFamily)
    assert (back.members, back.k, back.d, back.construction, back.seed) == (
        fam.members, fam.k, fam.d, fam.construction, fam.seed)
