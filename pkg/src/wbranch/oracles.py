"""Brute-force exact solvers: the ground truth for differential tests.

These are deliberately naive (full subset or parent-function enumeration
behind small size guards) and independent of the solver code paths they
check.  ``baseline_alg3`` is the five-rule reference solver for the
k-variant vertex cover contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from wbranch.graphs import WeightedDigraph, WeightedGraph, WeightedHypergraph
from wbranch.outcome import Nil, SolveOutcome
from wbranch.weds import EdgeWeightedGraph


@dataclass(frozen=True)
class OracleReport:
    """Exhaustive optima under joint weight and size bounds.

    ``best_weight``/``best_set`` optimize weight alone; the ``sized`` pair
    restricts to solutions of size at most k; ``min_size_weight_ok`` is the
    smallest solution size among weight-feasible solutions (the quantity the
    framework's achieved k is measured against).  Maximization problems flip
    the weight comparisons.
    """

    best_weight: Fraction | None
    best_set: frozenset | None
    best_weight_sized: Fraction | None
    best_set_sized: frozenset | None
    min_size_weight_ok: int | None

    @property
    def feasible(self) -> bool:
        return self.best_weight_sized is not None


def _subset_masks(n: int):
    return range(1 << n)


def brute_min_wvc(g: WeightedGraph, wbound, k: int) -> OracleReport:
    """Enumerate all vertex subsets of a graph with at most 20 vertices."""
    if g.n > 20:
        raise ValueError("oracle guard: more than 20 vertices")
    wbound = Fraction(wbound)
    ids = sorted(g.vertices)
    edge_masks = [
        (1 << ids.index(u)) | (1 << ids.index(v)) for u, v in g.edges()
    ]
    return _minimize_subsets(
        ids, [g.weights[v] for v in ids], edge_masks, wbound, k, need_all=True
    )


def brute_min_w3hs(h: WeightedHypergraph, wbound, k: int) -> OracleReport:
    """Enumerate all hitting sets of a hypergraph with at most 14 vertices."""
    if h.n > 14:
        raise ValueError("oracle guard: more than 14 vertices")
    wbound = Fraction(wbound)
    ids = sorted(h.vertices)
    edge_masks = [
        sum(1 << ids.index(v) for v in e) for e in h.edges
    ]
    return _minimize_subsets(
        ids, [h.weights[v] for v in ids], edge_masks, wbound, k, need_all=True
    )


def _minimize_subsets(ids, weights, edge_masks, wbound, k, need_all):
    n = len(ids)
    wt = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        wt[mask] = wt[mask ^ low] + weights[low.bit_length() - 1]
    best = best_sized = None
    best_mask = best_mask_sized = None
    min_size = None
    for mask in _subset_masks(n):
        if any(not e & mask for e in edge_masks):
            continue
        w = wt[mask]
        size = bin(mask).count("1")
        if best is None or w < best:
            best, best_mask = w, mask
        if size <= k and (best_sized is None or w < best_sized):
            best_sized, best_mask_sized = w, mask
        if w <= wbound and (min_size is None or size < min_size):
            min_size = size

    def members(mask):
        if mask is None:
            return None
        return frozenset(ids[i] for i in range(n) if mask >> i & 1)

    return OracleReport(
        best_weight=best,
        best_set=members(best_mask),
        best_weight_sized=best_sized,
        best_set_sized=members(best_mask_sized),
        min_size_weight_ok=min_size,
    )


def brute_min_weds(g: EdgeWeightedGraph, wbound, k: int) -> OracleReport:
    """Enumerate all edge subsets of a graph with at most 16 edges."""
    edges = g.edges()
    if len(edges) > 16:
        raise ValueError("oracle guard: more than 16 edges")
    wbound = Fraction(wbound)
    m = len(edges)
    # an edge dominates every edge sharing one of its endpoints
    dominates = []
    for u, v in edges:
        mask = 0
        for j, (a, b) in enumerate(edges):
            if a in (u, v) or b in (u, v):
                mask |= 1 << j
        dominates.append(mask)
    full = (1 << m) - 1
    best = best_sized = None
    best_set = best_set_sized = None
    min_size = None
    for mask in range(1 << m):
        dom = 0
        w = Fraction(0)
        mm = mask
        while mm:
            low = mm & -mm
            j = low.bit_length() - 1
            dom |= dominates[j]
            w += g.edge_weights[edges[j]]
            mm ^= low
        if dom != full:
            continue
        size = bin(mask).count("1")
        members = frozenset(edges[j] for j in range(m) if mask >> j & 1)
        key = (w, tuple(sorted(members)))
        if best is None or key < (best, tuple(sorted(best_set))):
            best, best_set = w, members
        if size <= k and (
            best_sized is None
            or key < (best_sized, tuple(sorted(best_set_sized)))
        ):
            best_sized, best_set_sized = w, members
        if w <= wbound and (min_size is None or size < min_size):
            min_size = size
    return OracleReport(best, best_set, best_sized, best_set_sized, min_size)


def enumerate_outbranchings(g: WeightedDigraph):
    """Yield every spanning out-branching as an (root, parent-map) pair.

    Iterates parent functions over in-neighbors and keeps the acyclic,
    root-connected ones.  Guarded to 9 vertices.
    """
    if g.n > 9:
        raise ValueError("oracle guard: more than 9 vertices")
    ids = sorted(g.vertices)
    for r in ids:
        rest = [v for v in ids if v != r]
        choices = [sorted(g.in_neighbors(v)) for v in rest]
        if any(not c for c in choices):
            continue
        for combo in product(*choices):
            parent = dict(zip(rest, combo))
            # check that every vertex reaches the root
            ok = True
            for v in rest:
                seen = {v}
                cur = v
                while cur != r:
                    cur = parent[cur]
                    if cur in seen:
                        ok = False
                        break
                    seen.add(cur)
                if not ok:
                    break
            if ok:
                yield r, parent


def brute_max_wiob(g: WeightedDigraph, wbound, k: int) -> OracleReport:
    """Enumerate spanning out-branchings; maximization flips the bounds."""
    wbound = Fraction(wbound)
    best = best_sized = None
    best_set = best_set_sized = None
    min_size = None
    for _r, parent in enumerate_outbranchings(g):
        internal = frozenset(parent.values())
        w = g.weight_of(internal)
        size = len(internal)
        key = (-w, tuple(sorted(internal)))
        if best is None or key < (-best, tuple(sorted(best_set))):
            best, best_set = w, internal
        if size <= k and (
            best_sized is None
            or key < (-best_sized, tuple(sorted(best_set_sized)))
        ):
            best_sized, best_set_sized = w, internal
        if w >= wbound and (min_size is None or size < min_size):
            min_size = size
    return OracleReport(best, best_set, best_sized, best_set_sized, min_size)


def max_internal_count(g: WeightedDigraph) -> int | None:
    """Largest internal set over spanning out-branchings, or None."""
    best = None
    for _r, parent in enumerate_outbranchings(g):
        cnt = len(set(parent.values()))
        if best is None or cnt > best:
            best = cnt
    return best


# ---------------------------------------------------------------------------
# The five-rule reference solver for k-WVC
# ---------------------------------------------------------------------------


def baseline_alg3(
    g: WeightedGraph, wbound, k: int
) -> SolveOutcome:
    """Pedagogical k-variant vertex cover solver: nil on exhausted budgets,
    empty on edgeless graphs, two leaf reductions (one of which rewrites the
    neighbor's weight), and a maximum-degree branching."""
    res = _alg3(g, Fraction(wbound), int(k))
    if res is None:
        return Nil
    return SolveOutcome(frozenset(res), g.weight_of(res))


def _alg3(g: WeightedGraph, W: Fraction, k: int):
    if min(W, k) < 0:
        return None
    if g.edge_count() == 0:
        return frozenset()
    # Rule 3: a heavy leaf, whose neighbor is taken outright.
    for v in g.sorted_vertices():
        if g.degree(v) != 1:
            continue
        (u,) = g.neighbors(v)
        if g.weights[v] >= g.weights[u]:
            sub = _alg3(g.without({v, u}), W - g.weights[u], k - 1)
            return None if sub is None else sub | {u}
    # Rule 4: a light leaf, folded into its neighbor's weight.
    for v in g.sorted_vertices():
        if g.degree(v) != 1:
            continue
        (u,) = g.neighbors(v)
        sub = _alg3(
            g.without({v}).with_weights({u: g.weights[u] - g.weights[v]}),
            W - g.weights[v],
            k,
        )
        if sub is None:
            return None
        return sub if u in sub else sub | {v}
    dmax = g.max_degree()
    v = min(u for u in g.vertices if g.degree(u) == dmax)
    nv = g.neighbors(v)
    r1 = _alg3(g.without(nv), W - g.weight_of(nv), k - len(nv))
    if r1 is not None:
        return r1 | nv
    r2 = _alg3(g.without({v}), W - g.weights[v], k - 1)
    return None if r2 is None else r2 | {v}
