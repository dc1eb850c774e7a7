"""Shared builders for the test suite: seeded random instances and the
hand-built cover/triangle example graph."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from wbranch.graphs import WeightedDigraph, WeightedGraph, WeightedHypergraph
from wbranch.weds import EdgeWeightedGraph


def random_graph(seed: int, nmax: int = 12, nmin: int = 2, density=None) -> WeightedGraph:
    rng = random.Random(seed)
    n = rng.randint(nmin, nmax)
    ids = list(range(1, n + 1))
    p = density if density is not None else rng.choice([0.15, 0.3, 0.5])
    edges = [(u, v) for u, v in combinations(ids, 2) if rng.random() < p]
    weights = {v: Fraction(rng.randint(1, 9)) for v in ids}
    return WeightedGraph(ids, edges, weights)


def random_subcubic_graph(seed: int, sizes=(10, 12, 14)) -> WeightedGraph:
    from wbranch.report import random_cubic_graph

    rng = random.Random(seed)
    g0 = random_cubic_graph(rng.choice(sizes), rng)
    edges = g0.edges()
    rng.shuffle(edges)
    edges = edges[rng.randint(0, 3):]
    weights = {v: Fraction(rng.randint(1, 9)) for v in g0.vertices}
    return WeightedGraph(g0.vertices, edges, weights)


def random_hypergraph(seed: int, nmax: int = 12, mmax: int = 14) -> WeightedHypergraph:
    rng = random.Random(seed)
    n = rng.randint(3, nmax)
    ids = list(range(1, n + 1))
    triples = list(combinations(ids, 3))
    edges = rng.sample(triples, rng.randint(1, min(mmax, len(triples))))
    if rng.random() < 0.4:
        pairs = list(combinations(ids, 2))
        edges = edges + rng.sample(pairs, rng.randint(1, 3))
    weights = {v: Fraction(rng.randint(1, 9)) for v in ids}
    return WeightedHypergraph(ids, edges, weights)


def random_edge_weighted_graph(seed: int, nmax: int = 10, mmax: int = 14) -> EdgeWeightedGraph:
    rng = random.Random(seed)
    n = rng.randint(2, nmax)
    ids = list(range(1, n + 1))
    pairs = list(combinations(ids, 2))
    chosen = rng.sample(pairs, min(len(pairs), rng.randint(1, mmax)))
    return EdgeWeightedGraph(
        ids, {e: Fraction(rng.randint(1, 9)) for e in chosen}
    )


def random_digraph(seed: int, nmax: int = 8, nmin: int = 1) -> WeightedDigraph:
    rng = random.Random(seed)
    n = rng.randint(nmin, nmax)
    ids = list(range(1, n + 1))
    p = rng.choice([0.2, 0.35])
    arcs = [(u, v) for u in ids for v in ids if u != v and rng.random() < p]
    weights = {v: Fraction(rng.randint(1, 5)) for v in ids}
    return WeightedDigraph(ids, arcs, weights)


def random_budgets(rng: random.Random, total_weight: int, n: int):
    k = rng.randint(1, n)
    wbound = Fraction(rng.randint(1, max(3, total_weight // 2)))
    return wbound, k


def cover_example_graph() -> tuple[WeightedGraph, frozenset, dict]:
    """Degree-3 graph with a minimum cover of 13 vertices whose induced
    components are three triangles (A, C, E) and two paths (B, D).

    A's triangle shares the outside neighbor 10 (so it has no triangle map
    entry); C can map to either path; E can only map to D.  Returns the
    graph, the cover, and the named components.
    """
    comps = {
        "A": frozenset({1, 2, 3}),
        "B": frozenset({4, 5}),
        "C": frozenset({6, 7, 8}),
        "D": frozenset({16, 17}),
        "E": frozenset({13, 14, 15}),
    }
    cover = frozenset().union(*comps.values())
    edges = [
        (1, 2), (2, 3), (1, 3), (1, 10), (2, 10), (3, 10),
        (4, 5),
        (6, 7), (7, 8), (6, 8),
        (6, 11), (11, 4), (11, 5),
        (7, 12), (12, 16), (12, 17),
        (8, 19), (19, 4), (19, 5),
        (16, 17),
        (13, 14), (14, 15), (13, 15),
        (13, 18), (18, 16), (18, 17),
        (14, 20),
        (15, 21),
    ]
    vertices = sorted({v for e in edges for v in e})
    weights = {v: Fraction(1) for v in vertices}
    return WeightedGraph(vertices, edges, weights), cover, comps
