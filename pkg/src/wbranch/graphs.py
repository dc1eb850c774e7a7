"""Weighted graph, 3-bounded hypergraph, and digraph types.

All types are immutable; operations return new values, so instances can be
shared freely between concurrent solves.  Vertices are integers in the id
space of the original input (sub-instances keep original ids, which keeps
memoization keys stable).  Weights are exact :class:`fractions.Fraction`
values; no floating point enters any solver decision.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

Weight = Fraction


def as_weight(value) -> Fraction:
    """Coerce to an exact non-negative rational weight."""
    w = Fraction(value)
    if w < 0:
        raise ValueError(f"weights must be non-negative, got {w}")
    return w


class ComponentClass(Enum):
    """Shape of a connected component that is a clique on at most 3 vertices."""

    ISOLATED_VERTEX = "isolated_vertex"
    PATH_ON_2 = "path_on_2"
    TRIANGLE = "triangle"
    OTHER = "other"


def _canon_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class WeightedGraph:
    """Undirected vertex-weighted graph with set-based adjacency."""

    __slots__ = ("vertices", "weights", "adj", "_hash")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[tuple[int, int]],
        weights: Mapping[int, Fraction] | None = None,
    ):
        vs = frozenset(vertices)
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in edges:
            u, v = _canon_edge(u, v)
            if u not in vs or v not in vs:
                raise ValueError(f"edge ({u},{v}) references unknown vertex")
            adj[u].add(v)
            adj[v].add(u)
        w = {v: as_weight(weights[v]) if weights else Fraction(0) for v in vs}
        if weights:
            for v in weights:
                if v not in vs:
                    raise ValueError(f"weight given for unknown vertex {v}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "adj", {v: frozenset(ns) for v, ns in adj.items()})
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("WeightedGraph is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def neighbors(self, v: int) -> frozenset:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (v, u) for v in self.vertices for u in self.adj[v] if v < u
        )

    def edge_count(self) -> int:
        return sum(len(ns) for ns in self.adj.values()) // 2

    def weight(self, v: int) -> Fraction:
        return self.weights[v]

    def weight_of(self, vs: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in vs), Fraction(0))

    # -- derived graphs ------------------------------------------------

    def induced(self, keep: Iterable[int]) -> "WeightedGraph":
        keep = frozenset(keep)
        unknown = keep - self.vertices
        if unknown:
            raise ValueError(f"unknown vertices in keep set: {sorted(unknown)}")
        edges = [
            (v, u) for v in keep for u in self.adj[v] if v < u and u in keep
        ]
        return WeightedGraph(keep, edges, {v: self.weights[v] for v in keep})

    def without(self, drop: Iterable[int]) -> "WeightedGraph":
        return self.induced(self.vertices - frozenset(drop))

    def with_weights(self, updates: Mapping[int, Fraction]) -> "WeightedGraph":
        w = dict(self.weights)
        for v, x in updates.items():
            if v not in self.vertices:
                raise ValueError(f"unknown vertex {v}")
            w[v] = Fraction(x)
        return WeightedGraph(self.vertices, self.edges(), w)

    def with_unit_weights(self) -> "WeightedGraph":
        return WeightedGraph(
            self.vertices, self.edges(), {v: Fraction(1) for v in self.vertices}
        )

    def components(self) -> list[frozenset]:
        return _components(self.vertices, self.adj)

    def non_isolated(self) -> frozenset:
        return frozenset(v for v in self.vertices if self.adj[v])

    # -- hashing -------------------------------------------------------

    def _key(self):
        return (
            self.vertices,
            frozenset((v, u) for v in self.vertices for u in self.adj[v] if v < u),
            frozenset(self.weights.items()),
        )

    def __eq__(self, other):
        return isinstance(other, WeightedGraph) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.edge_count()})"


class WeightedHypergraph:
    """Vertex-weighted hypergraph with edges on 1 to 3 vertices.

    Induced deletion shrinks edges (a 3-edge losing a vertex becomes a
    2-edge); choosing a vertex removes the vertex together with every edge
    containing it.
    """

    __slots__ = ("vertices", "edges", "weights", "_incidence", "_hash")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Iterable[Iterable[int]],
        weights: Mapping[int, Fraction] | None = None,
    ):
        vs = frozenset(vertices)
        es = set()
        for e in edges:
            fe = frozenset(e)
            if not 1 <= len(fe) <= 3:
                raise ValueError(f"hyperedge size must be 1..3, got {sorted(fe)}")
            if not fe <= vs:
                raise ValueError(f"edge {sorted(fe)} references unknown vertex")
            es.add(fe)
        w = {v: as_weight(weights[v]) if weights else Fraction(0) for v in vs}
        inc: dict[int, set[frozenset]] = {v: set() for v in vs}
        for e in es:
            for v in e:
                inc[v].add(e)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "weights", w)
        object.__setattr__(
            self, "_incidence", {v: frozenset(s) for v, s in inc.items()}
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("WeightedHypergraph is immutable")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges_of(self, v: int) -> frozenset:
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self._incidence.values()), default=0)

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def edges_of_size(self, d: int) -> list[frozenset]:
        return sorted(
            (e for e in self.edges if len(e) == d), key=lambda e: tuple(sorted(e))
        )

    def weight(self, v: int) -> Fraction:
        return self.weights[v]

    def weight_of(self, vs: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in vs), Fraction(0))

    def induced(self, keep: Iterable[int]) -> "WeightedHypergraph":
        keep = frozenset(keep)
        unknown = keep - self.vertices
        if unknown:
            raise ValueError(f"unknown vertices in keep set: {sorted(unknown)}")
        shrunk = {e & keep for e in self.edges}
        shrunk.discard(frozenset())
        return WeightedHypergraph(
            keep, shrunk, {v: self.weights[v] for v in keep}
        )

    def delete_vertex_and_edges(self, v: int) -> "WeightedHypergraph":
        if v not in self.vertices:
            raise ValueError(f"unknown vertex {v}")
        return self.choose({v})

    def choose(self, picked: Iterable[int]) -> "WeightedHypergraph":
        """Remove the picked vertices together with all their edges."""
        picked = frozenset(picked)
        keep = self.vertices - picked
        edges = [e for e in self.edges if not (e & picked)]
        return WeightedHypergraph(keep, edges, {v: self.weights[v] for v in keep})

    def without_edges(self, drop: Iterable[frozenset]) -> "WeightedHypergraph":
        drop = {frozenset(e) for e in drop}
        return WeightedHypergraph(
            self.vertices, self.edges - drop, dict(self.weights)
        )

    def with_weights(self, updates: Mapping[int, Fraction]) -> "WeightedHypergraph":
        w = dict(self.weights)
        for v, x in updates.items():
            if v not in self.vertices:
                raise ValueError(f"unknown vertex {v}")
            w[v] = Fraction(x)
        return WeightedHypergraph(self.vertices, self.edges, w)

    def components(self) -> list[frozenset]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            for a, b in combinations(sorted(e), 2):
                adj[a].add(b)
                adj[b].add(a)
        return _components(self.vertices, adj)

    def _key(self):
        return (self.vertices, self.edges, frozenset(self.weights.items()))

    def __eq__(self, other):
        return (
            isinstance(other, WeightedHypergraph) and self._key() == other._key()
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        return f"WeightedHypergraph(n={self.n}, m={len(self.edges)})"


class WeightedDigraph:
    """Directed vertex-weighted graph."""

    __slots__ = ("vertices", "arcs", "weights", "_out", "_in", "_hash")

    def __init__(
        self,
        vertices: Iterable[int],
        arcs: Iterable[tuple[int, int]],
        weights: Mapping[int, Fraction] | None = None,
    ):
        vs = frozenset(vertices)
        aset = set()
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in vs or v not in vs:
                raise ValueError(f"arc ({u},{v}) references unknown vertex")
            aset.add((u, v))
        out: dict[int, set[int]] = {v: set() for v in vs}
        inn: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in aset:
            out[u].add(v)
            inn[v].add(u)
        w = {v: as_weight(weights[v]) if weights else Fraction(0) for v in vs}
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arcs", frozenset(aset))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_out", {v: frozenset(s) for v, s in out.items()})
        object.__setattr__(self, "_in", {v: frozenset(s) for v, s in inn.items()})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("WeightedDigraph is immutable")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def out_neighbors(self, v: int) -> frozenset:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset:
        return self._in[v]

    def weight(self, v: int) -> Fraction:
        return self.weights[v]

    def weight_of(self, vs: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in vs), Fraction(0))

    def _key(self):
        return (self.vertices, self.arcs, frozenset(self.weights.items()))

    def __eq__(self, other):
        return isinstance(other, WeightedDigraph) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        return f"WeightedDigraph(n={self.n}, arcs={len(self.arcs)})"


# -- shared helpers ----------------------------------------------------


def _components(vertices: frozenset, adj: Mapping[int, Iterable[int]]) -> list[frozenset]:
    """Connected components, ordered by their smallest vertex id."""
    seen: set[int] = set()
    comps = []
    for start in sorted(vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def induced_subgraph(g, keep: Iterable[int]):
    """Subgraph induced on ``keep``; hypergraph edges shrink, graph edges drop."""
    return g.induced(keep)


def delete_vertex_and_edges(h: WeightedHypergraph, v: int) -> WeightedHypergraph:
    """Remove ``v`` and every edge containing it (no shrinking)."""
    return h.delete_vertex_and_edges(v)


def connected_components(g: WeightedGraph) -> list[frozenset]:
    return g.components()


def classify_component(g: WeightedGraph, comp: Iterable[int]) -> ComponentClass:
    """Classify a connected component as a clique on at most three vertices."""
    comp = frozenset(comp)
    if comp not in set(g.components()):
        raise ValueError(f"{sorted(comp)} is not a connected component")
    edges = sum(1 for v in comp for u in g.adj[v] if u in comp and v < u)
    if len(comp) == 1:
        return ComponentClass.ISOLATED_VERTEX
    if len(comp) == 2 and edges == 1:
        return ComponentClass.PATH_ON_2
    if len(comp) == 3 and edges == 3:
        return ComponentClass.TRIANGLE
    return ComponentClass.OTHER


def is_vertex_cover(g: WeightedGraph, cover: Iterable[int]) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in g.edges())


def is_hitting_set(h: WeightedHypergraph, hits: Iterable[int]) -> bool:
    hits = set(hits)
    return all(e & hits for e in h.edges)
