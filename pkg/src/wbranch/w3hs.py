"""Weighted 3-hitting set solvers.

``solve_k_w3hs`` is the 22-rule branch-and-reduce solver for the k-variant
contract.  Choosing a vertex deletes it with all its edges; omitting a
vertex shrinks the edges containing it, so 3-edges become 2-edges and
2-edges become forced 1-edges.  Forced 1-edges are normalized eagerly at
every node: their vertices enter the solution before rule dispatch.

``solve_w3hs_star`` reduces the problem to weighted vertex cover by looping
over subsets of a minimum unweighted hitting set.  The polynomial base case
for degree-2 hypergraphs is realized by a dual construction that turns the
instance into a minimum-weight edge-cover problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from wbranch.graphs import WeightedGraph, WeightedHypergraph
from wbranch.outcome import Nil, SearchStats, SolveOutcome


def _validate_input(h: WeightedHypergraph):
    for v in h.vertices:
        if h.weights[v] < 1:
            raise ValueError(f"input weight of vertex {v} is below 1")
    for e in h.edges:
        if len(e) > 3:
            raise ValueError(f"edge {sorted(e)} has more than 3 vertices")


# Declared branching vectors under the measure m(G,k) = k - alpha(G) + 1;
# entries written over the alpha constants are expanded by the analysis
# helpers.  All roots stay below 2.168.
WHS_ROOT_BOUND = Fraction(2168, 1000)
WHS_BRANCHING_VECTORS = {
    "whs5": ("1", "a3"),
    "whs6": ("1-a1", "1-a1+a2"),
    "whs7": ("1", "1"),
    "whs8": ("1-a2", "3-a2"),
    "whs9": ("1-a2", "2-a2+a1"),
    "whs10": ("1-a2+a1", "1"),
    "whs11": ("1", "1-a2+a1"),
    "whs12": ("2-a2", "1-a2+a1"),
    "whs13": ("1-a2+a1", "1"),
    "whs14": ("1-a3+a1", "2-a3+a1"),
    "whs16": ("2-a3", "1-a3+a2"),
    "whs17": ("1-a3+a2", "1-a3+a4"),
    "whs18": ("1", "1"),
    "whs19": ("1-a4", "4-a4"),
    "whs20": ("1-a4+a1", "3-a4"),
    "whs21": ("1-a4+a2", "2-a4+a1"),
    "whs22": ("1-a4+a3", "1-a4+a3"),
}


# ---------------------------------------------------------------------------
# Minimum-weight edge cover (exact, subset DP per component)
# ---------------------------------------------------------------------------


class InfeasibleCover(ValueError):
    """A required node has no incident link."""


@dataclass(frozen=True)
class Link:
    """A weighted link between two nodes of an auxiliary cover graph."""

    a: Hashable
    b: Hashable
    weight: Fraction
    tag: Hashable


def min_weight_edge_cover(links: Sequence[Link], required: Iterable) -> tuple[Link, ...]:
    """Minimum total-weight set of links touching every required node.

    Exact subset dynamic program over the required nodes of each connected
    component; intended for the small auxiliary graphs built by the solvers.
    """
    required = set(required)
    incident: dict = {}
    for link in links:
        incident.setdefault(link.a, []).append(link)
        incident.setdefault(link.b, []).append(link)
    for node in required:
        if not incident.get(node):
            raise InfeasibleCover(f"required node {node!r} has no incident link")
    # Component decomposition keeps the DP subsets small.
    node_ids: dict = {}
    for link in links:
        for node in (link.a, link.b):
            if node not in node_ids:
                node_ids[node] = len(node_ids)
    parent = list(range(len(node_ids)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for link in links:
        ra, rb = find(node_ids[link.a]), find(node_ids[link.b])
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list] = {}
    for node in required:
        groups.setdefault(find(node_ids[node]), []).append(node)

    chosen: list[Link] = []
    for nodes in groups.values():
        idx = {node: i for i, node in enumerate(nodes)}
        full = (1 << len(nodes)) - 1
        memo: dict[int, tuple] = {0: (Fraction(0), ())}

        def run(mask, nodes=nodes, idx=idx, memo=memo):
            if mask in memo:
                return memo[mask]
            low = (mask & -mask).bit_length() - 1
            node = nodes[low]
            best = None
            bkey = None
            for link in incident[node]:
                cleared = mask
                for end in (link.a, link.b):
                    i = idx.get(end)
                    if i is not None:
                        cleared &= ~(1 << i)
                sw, slinks = run(cleared)
                cand = (sw + link.weight, slinks + (link,))
                key = (cand[0], tuple(repr(ln.tag) for ln in cand[1]))
                if bkey is None or key < bkey:
                    best, bkey = cand, key
            memo[mask] = best
            return best

        _, ls = run(full)
        chosen.extend(ls)
    return tuple(chosen)


# ---------------------------------------------------------------------------
# Degree-2 base case via the dual edge-cover construction
# ---------------------------------------------------------------------------


def deg2_hypergraph_min_whs(h: WeightedHypergraph) -> frozenset:
    """Exact minimum-weight hitting set of a hypergraph of degree at most 2.

    Build the dual multigraph whose nodes are the hyperedges and whose links
    are the vertices (a degree-2 vertex joins its two edges, a degree-1
    vertex becomes a pendant link to a private stub), then cover every
    edge-node by a minimum-weight link set.
    """
    if h.max_degree() > 2:
        raise ValueError("hypergraph has a vertex of degree above 2")
    if not h.edges:
        return frozenset()
    links = []
    for v in sorted(h.vertices):
        es = sorted(h.edges_of(v), key=lambda e: tuple(sorted(e)))
        if len(es) == 2:
            links.append(
                Link(tuple(sorted(es[0])), tuple(sorted(es[1])), h.weights[v], v)
            )
        elif len(es) == 1:
            links.append(Link(tuple(sorted(es[0])), ("stub", v), h.weights[v], v))
    required = [tuple(sorted(e)) for e in h.edges]
    cover = min_weight_edge_cover(links, required)
    return frozenset(link.tag for link in cover)


# ---------------------------------------------------------------------------
# WHS-Alg: the 22-rule k-W3HS solver
# ---------------------------------------------------------------------------


def solve_k_w3hs(
    h: WeightedHypergraph,
    wbound,
    k: int,
    *,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """First-applicable-rule recursion for the k-variant of weighted
    3-hitting set, under the flexible-k contract."""
    _validate_input(h)
    stats = stats if stats is not None else SearchStats()
    res = _whs(h, Fraction(wbound), int(k), stats)
    if res is None:
        return Nil
    return SolveOutcome(frozenset(res), h.weight_of(res))


def _normalize(h: WeightedHypergraph, W: Fraction, k: int):
    """Force the vertices of all 1-edges into the solution."""
    forced: set[int] = set()
    while True:
        ones = h.edges_of_size(1)
        if not ones:
            return h, W, k, frozenset(forced)
        (x,) = ones[0]
        forced.add(x)
        W -= h.weights[x]
        k -= 1
        h = h.choose({x})


def _whs(h: WeightedHypergraph, W: Fraction, k: int, stats: SearchStats):
    stats.enter()
    h, W, k, forced = _normalize(h, W, k)
    res = _whs_rules(h, W, k, stats)
    return None if res is None else res | forced


def _omit(h: WeightedHypergraph, vs: Iterable[int]) -> WeightedHypergraph:
    return h.induced(h.vertices - frozenset(vs))


def _whs_rules(h, W, k, stats):
    # Rule 1: budgets exhausted.
    if min(W, k) < 0:
        stats.fired("whs1")
        return None
    # Rule 2: degree at most 2, solved exactly in polynomial style.
    if h.max_degree() <= 2:
        stats.fired("whs2")
        u = deg2_hypergraph_min_whs(h)
        return u if h.weight_of(u) <= W else None
    # Rule 3: drop supersets.
    for e in sorted(h.edges, key=lambda e: (len(e), tuple(sorted(e)))):
        for e2 in h.edges:
            if e < e2:
                stats.fired("whs3")
                return _whs(h.without_edges([e2]), W, k, stats)
    # Rule 4: vertex domination.
    for u in sorted(h.vertices):
        eu = h.edges_of(u)
        for v in sorted(h.vertices):
            if v == u or h.weights[v] > h.weights[u]:
                continue
            if eu <= h.edges_of(v):
                stats.fired("whs4")
                if frozenset({v, u}) in h.edges:
                    sub = _whs(h.choose({v, u}), W - h.weights[v], k - 1, stats)
                    return None if sub is None else sub | {v}
                return _whs(_omit(h, {u}), W, k, stats)
    twos = h.edges_of_size(2)
    # Rule 5: no 2-edge; branch on a maximum-degree vertex.
    if not twos:
        stats.fired("whs5")
        dmax = h.max_degree()
        v = min(u for u in h.vertices if h.degree(u) == dmax)
        r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
        if r1 is not None:
            return r1 | {v}
        return _whs(_omit(h, {v}), W, k, stats)
    if len(twos) == 1:
        (two,) = twos
        # Rule 6: the 2-edge has an endpoint of degree >= 3.
        for v in sorted(two):
            if h.degree(v) >= 3:
                (u,) = two - {v}
                stats.fired("whs6")
                r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
                if r1 is not None:
                    return r1 | {v}
                sub = _whs(_omit(h.choose({u}), {v}), W - h.weights[u], k - 1, stats)
                return None if sub is None else sub | {u}
        # Rule 7: both endpoints have degree <= 2; drop the heavier one into
        # its 3-edge, forcing the shrunken leftovers.
        v, u = sorted(two, key=lambda x: (-h.weights[x], x))
        if h.weights[v] >= h.weights[u]:
            stats.fired("whs7")
            e3 = next(iter(h.edges_of(v) - {two}))
            r1 = _whs(
                _omit(h.choose({v}), e3 - {v}), W - h.weights[v], k - 1, stats
            )
            if r1 is not None:
                return r1 | {v}
            sub = _whs(_omit(h.choose({u}), {v}), W - h.weights[u], k - 1, stats)
            return None if sub is None else sub | {u}
    if len(twos) == 3:
        common = twos[0] & twos[1] & twos[2]
        if common:
            # Rule 8: three 2-edges through one vertex.
            stats.fired("whs8")
            (v,) = sorted(common)[:1]
            others = frozenset().union(*twos) - {v}
            r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
            if r1 is not None:
                return r1 | {v}
            sub = _whs(
                _omit(h.choose(others), {v}),
                W - h.weight_of(others),
                k - 3,
                stats,
            )
            return None if sub is None else sub | others
    if len(twos) == 2:
        shared = twos[0] & twos[1]
        if shared:
            (v,) = shared
            (v1,) = twos[0] - {v}
            (v2,) = twos[1] - {v}
            v1, v2 = sorted((v1, v2))
            # Rule 9: middle vertex of the 2-edge path has degree >= 3.
            if h.degree(v) >= 3:
                stats.fired("whs9")
                r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
                if r1 is not None:
                    return r1 | {v}
                sub = _whs(
                    _omit(h.choose({v1, v2}), {v}),
                    W - h.weight_of({v1, v2}),
                    k - 2,
                    stats,
                )
                return None if sub is None else sub | {v1, v2}
            # Rule 10: an outer vertex has degree >= 3.
            for x1, x2 in ((v1, v2), (v2, v1)):
                if h.degree(x1) >= 3:
                    stats.fired("whs10")
                    r1 = _whs(h.choose({x1}), W - h.weights[x1], k - 1, stats)
                    if r1 is not None:
                        return r1 | {x1}
                    sub = _whs(
                        _omit(h.choose({v}), {x1}), W - h.weights[v], k - 1, stats
                    )
                    return None if sub is None else sub | {v}
            # Rule 11: an outer vertex of degree 2 at least as heavy as v.
            for x1 in (v1, v2):
                if h.degree(x1) == 2 and h.weights[x1] >= h.weights[v]:
                    stats.fired("whs11")
                    e3 = next(
                        iter(h.edges_of(x1) - {frozenset({x1, v})})
                    )
                    r1 = _whs(
                        _omit(h.choose({x1}), e3 - {x1}),
                        W - h.weights[x1],
                        k - 1,
                        stats,
                    )
                    if r1 is not None:
                        return r1 | {x1}
                    sub = _whs(
                        _omit(h.choose({v}), {x1}), W - h.weights[v], k - 1, stats
                    )
                    return None if sub is None else sub | {v}
            # Rule 12: both outer vertices lighter than v.
            if (
                h.degree(v1) == 2
                and h.weights[v1] < h.weights[v]
                and h.weights[v2] < h.weights[v]
            ):
                stats.fired("whs12")
                r1 = _whs(
                    h.choose({v1, v2}), W - h.weight_of({v1, v2}), k - 2, stats
                )
                if r1 is not None:
                    return r1 | {v1, v2}
                sub = _whs(
                    _omit(h.choose({v}), {v1}), W - h.weights[v], k - 1, stats
                )
                return None if sub is None else sub | {v}
        else:
            # Rule 13: two disjoint 2-edges.
            for e in twos:
                for v1 in sorted(e):
                    if h.degree(v1) >= 2:
                        (v2,) = e - {v1}
                        stats.fired("whs13")
                        r1 = _whs(h.choose({v1}), W - h.weights[v1], k - 1, stats)
                        if r1 is not None:
                            return r1 | {v1}
                        sub = _whs(
                            _omit(h.choose({v2}), {v1}),
                            W - h.weights[v2],
                            k - 1,
                            stats,
                        )
                        return None if sub is None else sub | {v2}
    if len(twos) == 3:
        # Rule 14: two of the three 2-edges share a vertex of degree >= 3.
        for v in sorted(frozenset().union(*twos)):
            mine = [e for e in twos if v in e]
            if len(mine) >= 2 and h.degree(v) >= 3:
                stats.fired("whs14")
                (u,) = mine[0] - {v}
                (r,) = mine[1] - {v}
                r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
                if r1 is not None:
                    return r1 | {v}
                sub = _whs(
                    _omit(h.choose({u, r}), {v}),
                    W - h.weight_of({u, r}),
                    k - 2,
                    stats,
                )
                return None if sub is None else sub | {u, r}
    # Rule 15: chain v-u-r of 2-edges where v has degree 1; merge weights.
    found = _find_whs15(h)
    if found is not None:
        v, u, r = found
        stats.fired("whs15")
        w_r = h.weights[r] - (h.weights[u] - h.weights[v])
        if w_r <= 0:
            sub = _whs(
                _omit(h.choose({v, r}), {u}),
                W - h.weights[v] - h.weights[r],
                k - 1,
                stats,
            )
            return None if sub is None else sub | {v, r}
        h2 = WeightedHypergraph(
            h.vertices - {v, u},
            [e for e in h.edges if e not in (frozenset({v, u}), frozenset({u, r}))],
            {
                x: (w_r if x == r else h.weights[x])
                for x in h.vertices - {v, u}
            },
        )
        sub = _whs(h2, W - h.weights[u], k - 1, stats)
        if sub is None:
            return None
        return sub | ({v} if r in sub else {u})
    if len(twos) == 3:
        # Rule 16: path of three 2-edges with the inner weights ordered.
        found = _find_whs16(h, twos)
        if found is not None:
            v1, v2, v3, v4 = found
            stats.fired("whs16")
            r1 = _whs(h.choose({v1}), W - h.weights[v1], k - 1, stats)
            if r1 is not None:
                return r1 | {v1}
            sub = _whs(
                _omit(h.choose({v2}), {v1}), W - h.weights[v2], k - 1, stats
            )
            return None if sub is None else sub | {v2}
        # Rule 17: an isolated 2-edge with an endpoint of degree >= 3.
        for e in twos:
            if all(len([t for t in twos if x in t]) == 1 for x in e):
                for v in sorted(e):
                    if h.degree(v) >= 3:
                        (u,) = e - {v}
                        stats.fired("whs17")
                        r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
                        if r1 is not None:
                            return r1 | {v}
                        sub = _whs(
                            _omit(h.choose({u}), {v}),
                            W - h.weights[u],
                            k - 1,
                            stats,
                        )
                        return None if sub is None else sub | {u}
        # Rule 18: an isolated 2-edge, heavier endpoint dropped into its
        # 3-edge.
        for e in twos:
            if all(len([t for t in twos if x in t]) == 1 for x in e):
                v, u = sorted(e, key=lambda x: (-h.weights[x], x))
                if h.weights[v] >= h.weights[u]:
                    stats.fired("whs18")
                    e3 = next(iter(h.edges_of(v) - {e}))
                    r1 = _whs(
                        _omit(h.choose({v}), e3 - {v}),
                        W - h.weights[v],
                        k - 1,
                        stats,
                    )
                    if r1 is not None:
                        return r1 | {v}
                    sub = _whs(
                        _omit(h.choose({u}), {v}), W - h.weights[u], k - 1, stats
                    )
                    return None if sub is None else sub | {u}
    # At least four 2-edges from here on.
    by_count = {}
    for e in twos:
        for v in e:
            by_count[v] = by_count.get(v, 0) + 1
    # Rule 19: four or more 2-edges through one vertex.
    for v in sorted(by_count):
        if by_count[v] >= 4:
            stats.fired("whs19")
            s = frozenset().union(*(e for e in twos if v in e)) - {v}
            r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
            if r1 is not None:
                return r1 | {v}
            sub = _whs(
                _omit(h.choose(s), {v}), W - h.weight_of(s), k - len(s), stats
            )
            return None if sub is None else sub | s
    # Rule 20: exactly three 2-edges through one vertex.
    for v in sorted(by_count):
        if by_count[v] == 3:
            stats.fired("whs20")
            s = frozenset().union(*(e for e in twos if v in e)) - {v}
            r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
            if r1 is not None:
                return r1 | {v}
            sub = _whs(
                _omit(h.choose(s), {v}), W - h.weight_of(s), k - len(s), stats
            )
            return None if sub is None else sub | s
    # Rule 21: a vertex in two 2-edges with total degree >= 3.
    for u in sorted(by_count):
        if by_count[u] == 2 and h.degree(u) >= 3:
            stats.fired("whs21")
            mine = [e for e in twos if u in e]
            (v,) = mine[0] - {u}
            (r,) = mine[1] - {u}
            r1 = _whs(h.choose({u}), W - h.weights[u], k - 1, stats)
            if r1 is not None:
                return r1 | {u}
            sub = _whs(
                _omit(h.choose({v, r}), {u}),
                W - h.weight_of({v, r}),
                k - 2,
                stats,
            )
            return None if sub is None else sub | {v, r}
    # Rule 22: a vertex in exactly one 2-edge with another edge besides.
    for v in sorted(by_count):
        if by_count[v] == 1 and h.degree(v) >= 2:
            stats.fired("whs22")
            (e,) = (t for t in twos if v in t)
            (u,) = e - {v}
            r1 = _whs(h.choose({v}), W - h.weights[v], k - 1, stats)
            if r1 is not None:
                return r1 | {v}
            sub = _whs(_omit(h.choose({u}), {v}), W - h.weights[u], k - 1, stats)
            return None if sub is None else sub | {u}
    # Residual case: the 2-edges form disjoint pure cycles whose vertices
    # carry no other edges; solve one such component exactly and recurse.
    stats.fired("whs22_cycle")
    for comp in h.components():
        sub_h = h.induced(comp)
        if sub_h.edges and sub_h.max_degree() <= 2:
            u = deg2_hypergraph_min_whs(sub_h)
            rest = h.choose(comp)
            sub = _whs(rest, W - h.weight_of(u), k - 1, stats)
            return None if sub is None else sub | u
    raise RuntimeError("no applicable hitting-set rule")


def _find_whs15(h: WeightedHypergraph):
    twos = h.edges_of_size(2)
    for e1 in twos:
        for e2 in twos:
            if e1 == e2 or not (e1 & e2):
                continue
            (u,) = e1 & e2
            (v,) = e1 - {u}
            (r,) = e2 - {u}
            if h.degree(v) == 1 and h.edges_of(u) == frozenset({e1, e2}):
                return v, u, r
    return None


def _find_whs16(h: WeightedHypergraph, twos):
    for e_mid in twos:
        a, b = sorted(e_mid)
        for v2, v3 in ((a, b), (b, a)):
            left = [e for e in twos if v2 in e and e != e_mid]
            right = [e for e in twos if v3 in e and e != e_mid]
            for e1 in left:
                for e3 in right:
                    (v1,) = e1 - {v2}
                    (v4,) = e3 - {v3}
                    if len({v1, v2, v3, v4}) == 4 and h.weights[v2] >= h.weights[v3]:
                        return v1, v2, v3, v4
    return None


# ---------------------------------------------------------------------------
# WHS*-Alg: reduction to weighted vertex cover through a minimum hitting set
# ---------------------------------------------------------------------------


def min_unweighted_3hs(h: WeightedHypergraph) -> frozenset:
    """Minimum-cardinality hitting set via branching on an edge's vertices."""
    memo: dict = {}

    def go(g: WeightedHypergraph):
        if not g.edges:
            return frozenset()
        key = g.edges
        hit = memo.get(key)
        if hit is not None:
            return hit
        e = min(g.edges, key=lambda e: (len(e), tuple(sorted(e))))
        best = None
        bkey = None
        for v in sorted(e):
            sub = go(g.choose({v})) | {v}
            skey = (len(sub), tuple(sorted(sub)))
            if bkey is None or skey < bkey:
                best, bkey = sub, skey
        memo[key] = best
        return best

    return go(h)


def solve_w3hs_star(
    h: WeightedHypergraph,
    wbound,
    k: int,
    wvc_solver: Callable | None = None,
    *,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """Partial-solution loop over subsets of a minimum hitting set.

    Every subset U' of the minimum hitting set U is tried as the part of the
    solution inside U; vertices forced by edges otherwise inside U \\ U' are
    added, and the 2-uniform residual on the outside is handed to a weighted
    vertex cover solver with the reduced budgets.
    """
    from wbranch import wvc as wvc_mod

    _validate_input(h)
    wbound = Fraction(wbound)
    if wvc_solver is None:
        wvc_solver = wvc_mod.solve_k_wvc
    u = min_unweighted_3hs(h)
    order = sorted(u)
    for size in range(len(order) + 1):
        for u_prime in combinations(order, size):
            u_prime = frozenset(u_prime)
            rest = u - u_prime
            s = frozenset(
                v for v in h.vertices if any(e - {v} <= rest for e in h.edges)
            )
            if s & rest:
                continue
            picked = u_prime | s
            g_u = h.choose(picked)
            residual = g_u.induced(g_u.vertices - (u | s))
            graph = WeightedGraph(
                residual.vertices,
                [tuple(sorted(e)) for e in residual.edges],
                dict(residual.weights),
            )
            out = wvc_solver(
                graph,
                wbound - h.weight_of(picked),
                k - len(picked),
            )
            if isinstance(out, SolveOutcome):
                if out.is_nil:
                    continue
                s_prime = out.solution
            else:
                if out is None:
                    continue
                s_prime = frozenset(out)
            solution = picked | s_prime
            return SolveOutcome(frozenset(solution), h.weight_of(solution))
    return Nil
