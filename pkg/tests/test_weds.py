import random
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import random_edge_weighted_graph
from wbranch.oracles import brute_min_weds
from wbranch.weds import (
    EdgeWeightedGraph,
    complete_eds,
    enumerate_good_rep,
    is_eds,
    is_vertex_cover_of,
    min_unweighted_eds,
    solve_k_weds,
    solve_weds_by_t,
    weds_star_supersets,
)


def egraph(n, weighted_edges):
    return EdgeWeightedGraph(
        range(1, n + 1), {(u, v): Fraction(w) for u, v, w in weighted_edges}
    )


def all_vertex_covers(g, budget=None):
    ids = sorted(g.vertices)
    budget = len(ids) if budget is None else budget
    for mask in range(1 << len(ids)):
        s = frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1)
        if len(s) <= budget and all(u in s or v in s for u, v in g.edges()):
            yield s


def minimal_vertex_covers(g):
    covers = list(all_vertex_covers(g))
    return [s for s in covers if not any(t < s for t in covers)]


class TestGoodRepresentation:
    def test_all_small_cliques_gives_empty_set(self):
        g = egraph(5, [(1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1)])
        assert enumerate_good_rep(g, 4) == [frozenset()]

    def test_p4_budget_two_represents_all_covers(self):
        g = egraph(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)])
        fam = enumerate_good_rep(g, 2)
        for cover in all_vertex_covers(g, 2):
            assert any(a <= cover for a in fam)

    def test_budget_zero_prunes_everything(self):
        g = egraph(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)])
        assert enumerate_good_rep(g, 0) == []

    def test_representation_property(self):
        for seed in range(60):
            g = random_edge_weighted_graph(seed, nmax=9, mmax=10)
            rng = random.Random(seed)
            budget = rng.randint(0, 8)
            fam = enumerate_good_rep(g, budget)
            for a in fam:
                assert len(a) <= budget
            for cover in all_vertex_covers(g, budget):
                assert any(a <= cover for a in fam)


class TestCompleteEds:
    def test_single_edge(self):
        g = egraph(2, [(1, 2, 3)])
        weight, edges = complete_eds(g, {1})
        assert edges == frozenset({(1, 2)}) and weight == 3

    def test_triangle_from_empty(self):
        g = egraph(3, [(1, 2, 5), (2, 3, 1), (1, 3, 4)])
        weight, edges = complete_eds(g, frozenset())
        assert edges == frozenset({(2, 3)}) and weight == 1

    def test_rejects_bad_residual(self):
        g = egraph(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)])
        with pytest.raises(ValueError):
            complete_eds(g, frozenset())

    def test_matches_brute_force(self):
        for seed in range(60):
            g = random_edge_weighted_graph(seed + 10, nmax=8, mmax=10)
            fam = enumerate_good_rep(g, min(2 * len(g.edge_weights), 8))
            for a in fam[:4]:
                got = complete_eds(g, a)
                edges = g.edges()
                best = None
                for mask in range(1 << len(edges)):
                    chosen = frozenset(
                        edges[i] for i in range(len(edges)) if mask >> i & 1
                    )
                    touched = {v for e in chosen for v in e}
                    if not a <= touched:
                        continue
                    if not all(u in touched or v in touched for u, v in edges):
                        continue
                    w = g.weight_of(chosen)
                    best = w if best is None else min(best, w)
                if got is None:
                    assert best is None
                else:
                    assert got[0] == best


class TestSolveKWeds:
    def test_single_edge(self):
        g = egraph(2, [(1, 2, 1)])
        out = solve_k_weds(g, Fraction(1), 1)
        assert out.solution == frozenset({(1, 2)}) and out.total_weight == 1

    def test_k4_nil_below_cheapest_domination(self):
        edges = [(u, v) for u, v in combinations(range(1, 5), 2)]
        weighted = [(u, v, 1 if (u, v) == (1, 2) else 9) for u, v in edges]
        g = egraph(4, weighted)
        rep = brute_min_weds(g, Fraction(10**9), len(edges))
        assert solve_k_weds(g, rep.best_weight - 1, len(edges)).is_nil

    def test_contract_against_oracle(self):
        for seed in range(80):
            g = random_edge_weighted_graph(seed, nmax=10, mmax=13)
            rng = random.Random(seed + 5)
            m = len(g.edge_weights)
            k = rng.randint(1, m)
            total = int(sum(g.edge_weights.values()))
            wbound = Fraction(rng.randint(1, max(2, total // 2)))
            rep = brute_min_weds(g, wbound, k)
            out = solve_k_weds(g, wbound, k)
            if rep.best_weight_sized is not None and rep.best_weight_sized <= wbound:
                assert not out.is_nil
            if not out.is_nil:
                assert is_eds(g, out.solution)
                assert out.total_weight <= wbound
                # endpoint set of any produced set is a vertex cover
                touched = {v for e in out.solution for v in e}
                assert is_vertex_cover_of(g, touched)


class TestStarSupersets:
    def test_single_edge_expansion(self):
        g = egraph(4, [(1, 2, 1), (1, 3, 1), (2, 4, 1)])
        fam = weds_star_supersets(g, [(1, 2)])
        assert len(fam) <= 3
        expected = {
            frozenset({1}) | g.neighbors(2),
            frozenset({2}) | g.neighbors(1),
            frozenset({1, 2}),
        }
        assert set(fam) == expected

    def test_star_contains_center(self):
        g = egraph(4, [(1, 2, 1), (1, 3, 1), (1, 4, 1)])
        fam = weds_star_supersets(g, [(1, 2)])
        assert frozenset({1}) in fam

    def test_rejects_non_eds(self):
        g = egraph(4, [(1, 2, 1), (3, 4, 1)])
        with pytest.raises(ValueError):
            weds_star_supersets(g, [(1, 2)])

    def test_contains_all_minimal_covers(self):
        for seed in range(60):
            g = random_edge_weighted_graph(seed + 70, nmax=9, mmax=10)
            u = min_unweighted_eds(g)
            fam = set(weds_star_supersets(g, u))
            assert len(fam) <= 3 ** len(u)
            for cover in minimal_vertex_covers(g):
                assert cover in fam


class TestMinUnweightedEds:
    def test_single_edge(self):
        g = egraph(2, [(1, 2, 7)])
        assert min_unweighted_eds(g) == frozenset({(1, 2)})

    def test_p4_middle_edge(self):
        g = egraph(4, [(1, 2, 1), (2, 3, 1), (3, 4, 1)])
        assert min_unweighted_eds(g) == frozenset({(2, 3)})

    def test_empty(self):
        g = EdgeWeightedGraph([1, 2], {})
        assert min_unweighted_eds(g) == frozenset()

    def test_matches_brute_size(self):
        for seed in range(40):
            g = random_edge_weighted_graph(seed + 25, nmax=8, mmax=9)
            unit = EdgeWeightedGraph(
                g.vertices, {e: Fraction(1) for e in g.edge_weights}
            )
            rep = brute_min_weds(unit, Fraction(10**9), len(g.edge_weights))
            got = min_unweighted_eds(g)
            assert is_eds(g, got)
            assert len(got) == rep.best_weight


class TestSolveWedsByT:
    def test_single_edge(self):
        g = egraph(2, [(1, 2, 1)])
        out = solve_weds_by_t(g, Fraction(1))
        assert out.solution == frozenset({(1, 2)})

    def test_below_any_edge_weight_is_nil(self):
        g = egraph(2, [(1, 2, 1)])
        assert solve_weds_by_t(g, Fraction(1, 2)).is_nil

    def test_matches_exact_minimum(self):
        for seed in range(50):
            g = random_edge_weighted_graph(seed + 90, nmax=9, mmax=11)
            rep = brute_min_weds(g, Fraction(10**9), len(g.edge_weights))
            rng = random.Random(seed)
            total = int(sum(g.edge_weights.values()))
            wbound = Fraction(rng.randint(1, max(2, total // 2)))
            out = solve_weds_by_t(g, wbound)
            feasible = rep.best_weight is not None and rep.best_weight <= wbound
            assert feasible == (not out.is_nil)
            if not out.is_nil:
                assert out.total_weight == rep.best_weight
