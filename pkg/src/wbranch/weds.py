"""Weighted edge dominating set solvers.

The k-variant solver enumerates a good 2k-representation of vertex covers
(every vertex cover of size at most 2k has a subset in the family, and each
family member leaves only clique-on-at-most-3 residual components), then
completes each member to a cheapest edge dominating set whose endpoint set
contains it.  The t-parameterized solver instead expands a minimum edge
dominating set into a superset of all minimal vertex covers (three choices
per edge) and completes those.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping

from wbranch.outcome import Nil, SearchStats, SolveOutcome
from wbranch.w3hs import InfeasibleCover, Link, min_weight_edge_cover


def _canon(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class EdgeWeightedGraph:
    """Undirected graph with exact rational edge weights."""

    __slots__ = ("vertices", "edge_weights", "adj", "_hash")

    def __init__(
        self,
        vertices: Iterable[int],
        edge_weights: Mapping[tuple[int, int], Fraction] | Iterable,
    ):
        vs = frozenset(vertices)
        if isinstance(edge_weights, Mapping):
            items = edge_weights.items()
        else:
            items = [((u, v), w) for u, v, w in edge_weights]
        ew: dict[tuple[int, int], Fraction] = {}
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for (u, v), w in items:
            u, v = _canon(u, v)
            if u not in vs or v not in vs:
                raise ValueError(f"edge ({u},{v}) references unknown vertex")
            w = Fraction(w)
            if w < 0:
                raise ValueError("edge weights must be non-negative")
            ew[(u, v)] = w
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edge_weights", ew)
        object.__setattr__(self, "adj", {v: frozenset(s) for v, s in adj.items()})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("EdgeWeightedGraph is immutable")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.edge_weights)

    def neighbors(self, v: int) -> frozenset:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def weight(self, e: tuple[int, int]) -> Fraction:
        return self.edge_weights[_canon(*e)]

    def weight_of(self, edges: Iterable[tuple[int, int]]) -> Fraction:
        return sum((self.weight(e) for e in edges), Fraction(0))

    def components_of(self, subset: frozenset) -> list[frozenset]:
        seen: set[int] = set()
        comps = []
        for start in sorted(subset):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for u in self.adj[v]:
                    if u in subset and u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def _key(self):
        return (self.vertices, frozenset(self.edge_weights.items()))

    def __eq__(self, other):
        return isinstance(other, EdgeWeightedGraph) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        return f"EdgeWeightedGraph(n={self.n}, m={len(self.edge_weights)})"


def is_eds(g: EdgeWeightedGraph, chosen: Iterable[tuple[int, int]]) -> bool:
    """Every edge of g shares an endpoint with some chosen edge."""
    touched: set[int] = set()
    for e in chosen:
        u, v = _canon(*e)
        if (u, v) not in g.edge_weights:
            return False
        touched.update((u, v))
    return all(u in touched or v in touched for u, v in g.edges())


def is_vertex_cover_of(g: EdgeWeightedGraph, cover: Iterable[int]) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in g.edges())


def _residual_shape(g: EdgeWeightedGraph, comp: frozenset) -> str | None:
    """Classify a residual component; None when it is not a clique on <= 3."""
    edges = sum(1 for v in comp for u in g.adj[v] if u in comp and v < u)
    if len(comp) == 1:
        return "isolated"
    if len(comp) == 2 and edges == 1:
        return "p2"
    if len(comp) == 3 and edges == 3:
        return "triangle"
    return None


def enumerate_good_rep(g: EdgeWeightedGraph, budget: int) -> list[frozenset]:
    """Good budget-representation of vertex covers.

    Branch on (v in A) versus (all residual neighbors of v in A) until every
    residual component is a clique on at most three vertices; prune branches
    whose partial set exceeds the budget.  Every vertex cover of size at most
    ``budget`` then has some emitted set as a subset.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    family: list[frozenset] = []
    seen: set[frozenset] = set()

    def rec(a: frozenset):
        if len(a) > budget:
            return
        residual = g.vertices - a
        pivot = None
        for comp in g.components_of(residual):
            if _residual_shape(g, comp) is None:
                deg = {
                    v: len(g.adj[v] & residual) for v in comp
                }
                dmax = max(deg.values())
                pivot = min(v for v in comp if deg[v] == dmax)
                break
        if pivot is None:
            if a not in seen:
                seen.add(a)
                family.append(a)
            return
        rec(a | {pivot})
        rec(a | (g.adj[pivot] & residual))

    rec(frozenset())
    return family


def complete_eds(
    g: EdgeWeightedGraph, a: Iterable[int]
) -> tuple[Fraction, frozenset] | None:
    """Cheapest edge dominating set whose endpoint set contains ``a``.

    Requires every component of the graph minus ``a`` to be a clique on at
    most three vertices.  Per two-vertex path the endpoint subset joining the
    required set is enumerated (3 ways), per triangle every subset of size at
    least 2 (4 ways); each combination becomes a minimum-weight edge-cover
    instance.  Returns None when no completion exists.
    """
    a = frozenset(a)
    if not a <= g.vertices:
        raise ValueError("a must be a subset of the graph's vertices")
    residual = g.vertices - a
    groups: list[list[frozenset]] = []
    for comp in g.components_of(residual):
        shape = _residual_shape(g, comp)
        if shape is None:
            raise ValueError(
                f"residual component {sorted(comp)} is not a clique on <= 3 vertices"
            )
        if shape == "isolated":
            continue
        if shape == "p2":
            x, y = sorted(comp)
            groups.append([frozenset({x}), frozenset({y}), frozenset({x, y})])
        else:
            vs = sorted(comp)
            opts = [frozenset(c) for c in combinations(vs, 2)]
            opts.append(frozenset(vs))
            groups.append(opts)
    links = [
        Link(u, v, g.edge_weights[(u, v)], (u, v)) for u, v in g.edges()
    ]
    best: tuple[Fraction, frozenset] | None = None
    best_key = None
    for picks in product(*groups):
        required = a.union(*picks) if picks else a
        try:
            cover = min_weight_edge_cover(links, required)
        except InfeasibleCover:
            continue
        edges = frozenset(link.tag for link in cover)
        weight = g.weight_of(edges)
        key = (weight, tuple(sorted(edges)))
        if best_key is None or key < best_key:
            best = (weight, edges)
            best_key = key
    return best


def solve_k_weds(
    g: EdgeWeightedGraph,
    wbound,
    k: int,
    *,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """k-variant edge dominating set: cheapest completion over a good
    2k-representation, nil if everything exceeds the weight bound."""
    _validate_weights(g)
    wbound = Fraction(wbound)
    stats = stats if stats is not None else SearchStats()
    best = None
    best_key = None
    for a in enumerate_good_rep(g, 2 * int(k)):
        stats.enter()
        done = complete_eds(g, a)
        if done is None:
            continue
        key = (done[0], tuple(sorted(done[1])))
        if best_key is None or key < best_key:
            best, best_key = done, key
    if best is None or best[0] > wbound:
        return Nil
    return SolveOutcome(best[1], best[0])


def weds_star_supersets(
    g: EdgeWeightedGraph, u: Iterable[tuple[int, int]]
) -> list[frozenset]:
    """Family of sets covering all minimal vertex covers, from an EDS.

    For each way of hitting every edge of ``u`` (endpoint a, endpoint b, or
    both: three choices per edge) take the hitting set S together with the
    neighborhoods of the unpicked endpoints.
    """
    u_edges = sorted(_canon(*e) for e in u)
    if not is_eds(g, u_edges):
        raise ValueError("u is not an edge dominating set")
    v_u = frozenset(v for e in u_edges for v in e)
    out: list[frozenset] = []
    seen: set[frozenset] = set()
    choice_sets = [
        [frozenset({a}), frozenset({b}), frozenset({a, b})] for a, b in u_edges
    ]
    for picks in product(*choice_sets):
        s = frozenset().union(*picks) if picks else frozenset()
        unpicked = v_u - s
        a_s = s.union(*(g.adj[v] for v in unpicked)) if unpicked else s
        if a_s not in seen:
            seen.add(a_s)
            out.append(a_s)
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


def min_unweighted_eds(g: EdgeWeightedGraph) -> frozenset:
    """Minimum-cardinality edge dominating set via growing representations."""
    if not g.edge_weights:
        return frozenset()
    unit = EdgeWeightedGraph(
        g.vertices, {e: Fraction(1) for e in g.edge_weights}
    )
    for t in range(1, len(g.edge_weights) + 1):
        best = None
        best_key = None
        for a in enumerate_good_rep(unit, 2 * t):
            done = complete_eds(unit, a)
            if done is None:
                continue
            key = (len(done[1]), tuple(sorted(done[1])))
            if best_key is None or key < best_key:
                best, best_key = done[1], key
        if best is not None and len(best) <= t:
            return best
    raise RuntimeError("unreachable: the full edge set dominates itself")


def solve_weds_by_t(
    g: EdgeWeightedGraph,
    wbound,
    *,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """Exact-in-W edge dominating set through the minimal-cover supersets."""
    _validate_weights(g)
    wbound = Fraction(wbound)
    stats = stats if stats is not None else SearchStats()
    u = min_unweighted_eds(g)
    best = None
    best_key = None
    for a in weds_star_supersets(g, u):
        stats.enter()
        if not is_vertex_cover_of(g, a):
            continue
        done = complete_eds(g, a)
        if done is None:
            continue
        key = (done[0], tuple(sorted(done[1])))
        if best_key is None or key < best_key:
            best, best_key = done, key
    if best is None or best[0] > wbound:
        return Nil
    return SolveOutcome(best[1], best[0])


def _validate_weights(g: EdgeWeightedGraph):
    for e, w in g.edge_weights.items():
        if w < 1:
            raise ValueError(f"input weight of edge {e} is below 1")
