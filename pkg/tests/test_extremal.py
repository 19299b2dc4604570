import random
from fractions import Fraction
from itertools import combinations

import pytest

from onlineramsey.extremal import (
    DomainError,
    LeastDensityWitness,
    NotBalancedError,
    NotBipartiteCompleteError,
    es_extract,
    kst_bound,
    max_clique,
    verify_least_density,
)
from onlineramsey.graph import BichromaticGraph, Color, incidence_graph


class TestKstBound:
    def test_hand_evaluated_spot_value(self):
        assert kst_bound(4, 4, 2, 2) == 10

    def test_degenerate_one_one(self):
        assert kst_bound(5, 7, 1, 1) == 0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            kst_bound(2, 4, 3, 1)
        with pytest.raises(DomainError):
            kst_bound(4, 2, 1, 3)

    def test_monotone_in_sides(self):
        for s, t in ((2, 2), (2, 3), (3, 3)):
            prev = None
            for m in range(s, 12):
                val = kst_bound(m, 12, s, t)
                if prev is not None:
                    assert val >= prev
                prev = val
            prev = None
            for n in range(t, 12):
                val = kst_bound(12, n, s, t)
                if prev is not None:
                    assert val >= prev
                prev = val

    def test_free_graphs_respect_bound(self):
        rng = random.Random(31)
        for s, t in ((2, 2), (2, 3)):
            found = 0
            for _ in range(300):
                m = rng.randint(s, 10)
                n = rng.randint(t, 10)
                adj = [0] * m
                for u in range(m):
                    for v in range(n):
                        if rng.random() < 0.25:
                            adj[u] |= 1 << v
                if _kst_free(adj, m, n, s, t):
                    found += 1
                    edges = sum(a.bit_count() for a in adj)
                    assert edges < kst_bound(m, n, s, t)
            assert found > 50


def _kst_free(adj, m, n, s, t) -> bool:
    for left in combinations(range(m), s):
        common = adj[left[0]]
        for u in left[1:]:
            common &= adj[u]
        if common.bit_count() >= t:
            return False
    return True


class TestEsExtract:
    def test_empty_graph_gives_independent_set(self):
        vertices, kind = es_extract(5, [])
        assert kind == "independent"
        assert len(vertices) == 5

    def test_five_cycle_gives_two(self):
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
        vertices, kind = es_extract(5, edges)
        assert len(vertices) == 2

    def test_complete_graph_gives_clique(self):
        edges = list(combinations(range(6), 2))
        vertices, kind = es_extract(6, edges)
        assert kind == "clique"
        assert len(vertices) == 6

    def test_result_verified_against_brute_force(self):
        rng = random.Random(37)
        for _ in range(40):
            n = rng.randint(2, 10)
            edges = [e for e in combinations(range(n), 2) if rng.random() < rng.uniform(0.1, 0.9)]
            edge_set = set(edges)
            vertices, kind = es_extract(n, edges)
            if kind == "clique":
                assert all(tuple(sorted(p)) in edge_set for p in combinations(vertices, 2))
            else:
                assert all(tuple(sorted(p)) not in edge_set for p in combinations(vertices, 2))
            best = max(
                max(
                    (len(sub) for k in range(n, 0, -1) for sub in combinations(range(n), k)
                     if all(tuple(sorted(p)) in edge_set for p in combinations(sub, 2))),
                    default=1,
                ),
                max(
                    (len(sub) for k in range(n, 0, -1) for sub in combinations(range(n), k)
                     if all(tuple(sorted(p)) not in edge_set for p in combinations(sub, 2))),
                    default=1,
                ),
            )
            assert len(vertices) == best

    def test_sparse_graphs_beat_log_floor(self):
        # Recorded, not asserted tightly: sparse graphs give big homogeneous sets.
        rng = random.Random(41)
        import math

        for _ in range(10):
            n = 30
            edges = [e for e in combinations(range(n), 2) if rng.random() < 0.05]
            vertices, _ = es_extract(n, edges)
            assert len(vertices) > math.log(n) / 2

    def test_vertex_limit(self):
        with pytest.raises(DomainError):
            es_extract(41, [])


def _complete_bipartite(n0, color_fn):
    g = BichromaticGraph(2 * n0)
    v1 = list(range(n0))
    v2 = list(range(n0, 2 * n0))
    for u in v1:
        for w in v2:
            g.build_edge(u, w, color_fn(u, w))
    return g, v1, v2


class TestLeastDensity:
    def test_two_block_extreme(self):
        n0 = 10
        half = n0 // 2

        def color(u, w):
            return Color.RED if u < half else Color.BLUE

        g, v1, v2 = _complete_bipartite(n0, color)
        wit = verify_least_density(g, v1, v2, Fraction(1, 10))
        assert wit.balanced_vertices == frozenset()
        assert len(wit.s_r) == half and len(wit.s_b) == half
        assert wit.e_hr == half * half * n0
        assert wit.few_balanced
        assert wit.intermediate_holds
        assert wit.meets_density_bound

    def test_half_red_half_blue_rows(self):
        n0 = 10
        half = n0 // 2

        def color(u, w):
            return Color.RED if (w - n0) < half else Color.BLUE

        g, v1, v2 = _complete_bipartite(n0, color)
        wit = verify_least_density(g, v1, v2, Fraction(1, 10))
        assert wit.e_hl == n0 * half * half
        assert wit.meets_density_bound

    def test_incidence_identity_matches_construction(self):
        rng = random.Random(43)
        for _ in range(20):
            n0 = rng.randint(3, 7)
            g, v1, v2 = _complete_bipartite(
                n0, lambda u, w: Color.RED if rng.random() < 0.5 else Color.BLUE
            )
            try:
                wit = verify_least_density(g, v1, v2, Fraction(1, 10))
            except NotBalancedError:
                continue
            h_l = incidence_graph(g, v1, v2)
            from onlineramsey.graph import IncidenceSide

            h_r = incidence_graph(g, v1, v2, IncidenceSide.RIGHT)
            assert wit.e_hl == h_l.edge_count
            assert wit.e_hr == h_r.edge_count

    def test_not_complete_rejected(self):
        g = BichromaticGraph(4)
        g.build_edge(0, 2, Color.RED)
        with pytest.raises(NotBipartiteCompleteError):
            verify_least_density(g, [0, 1], [2, 3], Fraction(1, 10))

    def test_side_internal_edge_rejected(self):
        g, v1, v2 = _complete_bipartite(3, lambda u, w: Color.RED if (u + w) % 2 else Color.BLUE)
        g.build_edge(0, 1, Color.RED)
        with pytest.raises(NotBipartiteCompleteError):
            verify_least_density(g, v1, v2, Fraction(1, 10))

    def test_unbalanced_rejected(self):
        g, v1, v2 = _complete_bipartite(4, lambda u, w: Color.RED)
        with pytest.raises(NotBalancedError):
            verify_least_density(g, v1, v2, Fraction(1, 10))

    def test_polarized_random_instances_satisfy_intermediate(self):
        # Pure single-color rows with a random red/blue split: no vertex
        # is color-balanced, so the dichotomy's second branch triggers.
        rng = random.Random(47)
        triggered = 0
        for _ in range(40):
            n0 = rng.randint(10, 24)
            red_rows = set(rng.sample(range(n0), rng.randint(n0 // 4, 3 * n0 // 4)))

            def color(u, w):
                return Color.RED if u in red_rows else Color.BLUE

            g, v1, v2 = _complete_bipartite(n0, color)
            try:
                wit = verify_least_density(g, v1, v2, Fraction(1, 10))
            except NotBalancedError:
                continue
            assert wit.balanced_vertices == frozenset()
            if wit.few_balanced:
                triggered += 1
                assert wit.intermediate_holds
        assert triggered > 10
