import random
from fractions import Fraction

import pytest

from conftest import cover_example_graph
from wbranch.analysis import (
    BranchingVector,
    MeasureParams,
    alpha_measure,
    branching_root,
    mc_measure,
    measured_vector,
)
from wbranch.graphs import WeightedGraph, WeightedHypergraph

TOL = Fraction(1, 10**9)


def unit_hypergraph(n, edges):
    return WeightedHypergraph(
        range(1, n + 1), edges, {v: Fraction(1) for v in range(1, n + 1)}
    )


class TestBranchingRoot:
    def test_one_four(self):
        r = branching_root([1, 4])
        assert abs(float(r) - 1.3802775691) < 1e-6
        assert r < Fraction(1381, 1000)

    def test_one_one_is_two(self):
        assert abs(branching_root([1, 1]) - 2) <= 2 * TOL

    def test_two_three(self):
        assert abs(float(branching_root([2, 3])) - 1.3247179572) < 1e-6

    def test_two_two_is_sqrt2(self):
        r = branching_root([2, 2])
        assert abs(float(r) ** 2 - 2) < 1e-6

    def test_single_branch_root_is_one(self):
        assert branching_root([3]) == 1

    def test_rejects_nonpositive_entries(self):
        with pytest.raises(ValueError):
            branching_root([1, 0])
        with pytest.raises(ValueError):
            BranchingVector([])

    def test_permutation_invariance(self):
        rng = random.Random(2)
        for _ in range(30):
            vec = [Fraction(rng.randint(1, 40), 10) for _ in range(rng.randint(2, 5))]
            shuffled = vec[:]
            rng.shuffle(shuffled)
            assert abs(branching_root(vec) - branching_root(shuffled)) <= 2 * TOL

    def test_dominance_monotonicity(self):
        # increasing any entry strictly decreases the root
        rng = random.Random(4)
        for _ in range(30):
            vec = [Fraction(rng.randint(1, 30), 10) for _ in range(rng.randint(2, 4))]
            i = rng.randrange(len(vec))
            bigger = vec[:]
            bigger[i] += Fraction(rng.randint(1, 20), 10)
            assert branching_root(bigger) < branching_root(vec)


class TestAlphaMeasure:
    def test_five_two_edges(self):
        h = unit_hypergraph(10, [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)])
        assert alpha_measure(h) == Fraction(87, 100)

    def test_three_without_common_vertex(self):
        h = unit_hypergraph(6, [(1, 2), (3, 4), (5, 6)])
        assert alpha_measure(h) == Fraction(8, 10)

    def test_three_sharing_a_vertex(self):
        h = unit_hypergraph(4, [(1, 2), (1, 3), (1, 4)])
        assert alpha_measure(h) == Fraction(55, 100)

    def test_two(self):
        h = unit_hypergraph(4, [(1, 2), (3, 4)])
        assert alpha_measure(h) == Fraction(55, 100)

    def test_exactly_one(self):
        h = unit_hypergraph(3, [(1, 2)])
        assert alpha_measure(h) == Fraction(35, 100)

    def test_only_three_edges(self):
        h = unit_hypergraph(4, [(1, 2, 3), (2, 3, 4)])
        assert alpha_measure(h) == 0

    def test_never_exceeds_087_and_zero_iff_no_two_edge(self):
        rng = random.Random(9)
        for _ in range(80):
            n = rng.randint(3, 8)
            ids = list(range(1, n + 1))
            edges = []
            for _ in range(rng.randint(0, 8)):
                size = rng.choice([2, 3])
                edges.append(tuple(rng.sample(ids, size)))
            h = unit_hypergraph(n, edges)
            a = alpha_measure(h)
            assert 0 <= a <= Fraction(87, 100)
            assert (a == 0) == (not h.edges_of_size(2))

    def test_params_validated(self):
        with pytest.raises(ValueError):
            MeasureParams(alpha1=Fraction(9, 10))


class TestMcMeasure:
    def test_empty(self):
        g = WeightedGraph([1, 2], [(1, 2)], {1: Fraction(1), 2: Fraction(1)})
        assert mc_measure(g, frozenset()) == 0

    def test_pair(self):
        g = WeightedGraph(
            [1, 2, 3], [(1, 2)], {v: Fraction(1) for v in (1, 2, 3)}
        )
        assert mc_measure(g, {1, 3}) == 0
        assert mc_measure(g, {1, 2}) == 2

    def test_cover_example(self):
        g, cover, _comps = cover_example_graph()
        assert len(cover) == 13
        assert mc_measure(g, cover) == 13


def test_measured_vector_expands_alpha_terms():
    vec = measured_vector(["1-a4+a3", 1])
    assert vec.decreases[0] == Fraction(93, 100)
    assert vec.decreases[1] == 1
