"""Weighted vertex cover solvers.

Three bounded-search-tree solvers share rule machinery:

* ``solve_k_wvc`` -- the 16-rule weight-rewriting solver for the k-variant
  contract (tracks both the weight budget W and the flexible size budget k).
* ``solve_k_wvcnow`` and ``solve_k_wvcnow_memo`` -- the weight-preserving
  variant that returns a cover no heavier than any cover of size at most k,
  plus its memoized refinement with the Buss-rule kernel and component
  branching.
* ``solve_wvc_star`` -- the measure-and-conquer solver that receives a
  minimum vertex cover and answers exactly in W.

Polynomial subroutines used by the rules (thin-component dynamic programs,
exact small-component covers, bipartite min-weight cover via max-flow, and a
plain minimum-cardinality cover) live in this module as well.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from wbranch.graphs import WeightedGraph, is_vertex_cover
from wbranch.outcome import Nil, SearchStats, SolveOutcome

DEFAULT_COMPONENT_BOUND = 100
MEMO_EASY_BOUND = 10

# Declared branching vectors per rule, checked against the claimed root
# bounds by the analysis tests.
WVC_ROOT_BOUND = Fraction(1381, 1000)
WVC_BRANCHING_VECTORS = {
    "wvc5": (1, 4),
    "wvc9": (1, 4),
    "wvc10": (2, 3),
    "wvc11": (3, 4, 5, 6),
    "wvc12": (1, 4),
    "wvc13": (2, 3),
    "wvc14": (3, 5, 3),
    "wvc15": (1, 4),
    "wvc16": (3, 5, 6, 4),
}

WVCNOW_ROOT_BOUND = Fraction(13954, 10000)
WVCNOW_BRANCHING_VECTORS = {
    "now5": (1, 4),
    "now6": (2, 3),
    "now7": (3, 4, 3),
    "now9": (3, 4, 3),
    "now10": (1, 4),
    "now11": (3, 4, 3),
    "now12": (3, 4, 3),
    "now13": (1, 4),
    "now14": (3, 4, 3),
    "now15": (3, 2),
    "now16": (3, 4, 3),
    "now17": (3, 3, 4),
}

# The memoized refinement adds its own branchings with tighter roots; the
# component split has vector (3(l-1), ..., 3(l-1)) with l entries.
MEMO_BRANCHING_VECTORS = {
    "memo_deg5": ((1, 5), Fraction(1325, 1000)),
    "memo_deg4": ((1, 4), Fraction(13803, 10000)),
}
MEMO_SPLIT_ROOT_BOUND = Fraction(1325, 1000)

WVC_STAR_BRANCHING_VECTORS = {
    "star4": ((5, 5, 5, 3), Fraction(1415, 1000)),
    "star5": ((8,) * 9 + (4,), Fraction(1415, 1000)),
    "star6": ((2, 3), Fraction(1415, 1000)),
    "star7": ((2, 2), Fraction(1415, 1000)),
    "star8": ((1, 4), Fraction(1415, 1000)),
    "star9": ((3, 3, 3), Fraction(1443, 1000)),
    "star10": ((3, 4, 3), Fraction(1415, 1000)),
}


def _dpkey(state):
    return (state[0], tuple(sorted(state[1])))


def _validate_input_weights(g: WeightedGraph):
    for v in g.vertices:
        if g.weights[v] < 1:
            raise ValueError(f"input weight of vertex {v} is below 1")


# ---------------------------------------------------------------------------
# Polynomial / small-instance subroutines
# ---------------------------------------------------------------------------


def _path_dp(order: list[int], g: WeightedGraph, forced: frozenset):
    """Min-weight vertex cover of a path, with some vertices forced in.

    ``order`` lists the path's vertices end to end.  Returns
    (weight, tuple-of-chosen); ties prefer the lexicographically smaller set.
    """
    v0 = order[0]
    state_in = (g.weights[v0], (v0,))
    state_out = None if v0 in forced else (Fraction(0), ())
    for v in order[1:]:
        take = []
        if state_in is not None:
            take.append((state_in[0] + g.weights[v], state_in[1] + (v,)))
        if state_out is not None:
            take.append((state_out[0] + g.weights[v], state_out[1] + (v,)))
        new_in = min(take, key=_dpkey) if take else None
        new_out = state_in if v not in forced else None
        state_in, state_out = new_in, new_out
    final = [s for s in (state_in, state_out) if s is not None]
    return min(final, key=_dpkey)


def _linearize_path(g: WeightedGraph, comp: frozenset) -> list[int]:
    if len(comp) == 1:
        return [next(iter(comp))]
    ends = sorted(v for v in comp if len(g.neighbors(v) & comp) == 1)
    order = [ends[0]]
    prev = None
    cur = ends[0]
    while True:
        nxt = [u for u in sorted(g.neighbors(cur) & comp) if u != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _cycle_order(g: WeightedGraph, comp: frozenset) -> list[int]:
    start = min(comp)
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [u for u in sorted(g.neighbors(cur) & comp) if u != prev]
        cur_next = nxt[0]
        if cur_next == start:
            break
        order.append(cur_next)
        prev, cur = cur, cur_next
    return order


def thin_component_min_wvc(g: WeightedGraph):
    """Exact min-weight cover of a connected graph with at most one vertex
    of degree 3 or more, via dynamic programming over the hanging paths.
    Returns (weight, tuple-of-chosen)."""
    hubs = [v for v in g.sorted_vertices() if g.degree(v) >= 3]
    if len(hubs) > 1:
        raise ValueError("component has more than one vertex of degree >= 3")
    if not hubs:
        comp = g.vertices
        if any(g.degree(v) == 1 for v in comp):
            return _path_dp(_linearize_path(g, comp), g, frozenset())
        # cycle: split on whether the smallest vertex joins the cover
        order = _cycle_order(g, comp)
        v0, rest = order[0], order[1:]
        w_in, s_in = _path_dp(rest, g, frozenset())
        cand_in = (w_in + g.weights[v0], s_in + (v0,))
        cand_out = _path_dp(rest, g, frozenset({rest[0], rest[-1]}))
        return min(cand_in, cand_out, key=_dpkey)
    hub = hubs[0]
    rest = g.without({hub})
    best = None
    for hub_in in (True, False):
        total = g.weights[hub] if hub_in else Fraction(0)
        chosen: tuple = (hub,) if hub_in else ()
        forced = frozenset() if hub_in else g.neighbors(hub)
        for comp in rest.components():
            w, s = _path_dp(_linearize_path(rest, comp), rest, forced & comp)
            total += w
            chosen += s
        cand = (total, chosen)
        if best is None or _dpkey(cand) < _dpkey(best):
            best = cand
    return best


def min_weight_vc_exact(g: WeightedGraph):
    """Exact minimum-weight vertex cover of an arbitrary graph.

    Branch-and-reduce with memoization on the active vertex set; thin
    components fall through to the path/cycle dynamic program.  Returns
    (weight, frozenset).  Intended for the bounded-size components consumed
    by the solvers' component rules.
    """
    memo: dict = {}

    def go(h: WeightedGraph):
        active = h.non_isolated()
        if not active:
            return (Fraction(0), ())
        if active in memo:
            return memo[active]
        comps = [c for c in h.components() if len(c) >= 2]
        if len(comps) > 1:
            total = Fraction(0)
            chosen: tuple = ()
            for c in comps:
                w, s = go(h.induced(c))
                total += w
                chosen += s
            res = (total, chosen)
        else:
            sub = h.induced(comps[0])
            hubs = [v for v in sub.sorted_vertices() if sub.degree(v) >= 3]
            if len(hubs) <= 1:
                res = thin_component_min_wvc(sub)
            else:
                dmax = sub.max_degree()
                v = min(u for u in sub.vertices if sub.degree(u) == dmax)
                w1, s1 = go(sub.without({v}))
                cand1 = (w1 + sub.weights[v], s1 + (v,))
                nv = sub.neighbors(v)
                w2, s2 = go(sub.without(nv))
                cand2 = (w2 + sub.weight_of(nv), s2 + tuple(sorted(nv)))
                res = min(cand1, cand2, key=_dpkey)
        memo[active] = res
        return res

    w, s = go(g)
    return w, frozenset(s)


def _bipartition(g: WeightedGraph) -> dict | None:
    color: dict[int, int] = {}
    for comp in g.components():
        start = min(comp)
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in sorted(g.neighbors(v)):
                if u not in color:
                    color[u] = color[v] ^ 1
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def bipartite_min_weight_vc(g: WeightedGraph) -> frozenset:
    """Exact minimum-weight vertex cover of a bipartite graph via max-flow."""
    color = _bipartition(g)
    if color is None:
        raise ValueError("graph is not bipartite")
    if g.edge_count() == 0:
        return frozenset()
    source, sink = ("s",), ("t",)
    inf = g.weight_of(g.vertices) + 1
    capacity: dict = {}

    def add(a, b, cap):
        capacity.setdefault(a, {})[b] = capacity.get(a, {}).get(b, Fraction(0)) + cap
        capacity.setdefault(b, {}).setdefault(a, Fraction(0))

    left = [v for v in g.sorted_vertices() if color[v] == 0]
    right = [v for v in g.sorted_vertices() if color[v] == 1]
    for v in left:
        add(source, ("L", v), g.weights[v])
    for v in right:
        add(("R", v), sink, g.weights[v])
    for u, v in g.edges():
        lv, rv = (u, v) if color[u] == 0 else (v, u)
        add(("L", lv), ("R", rv), inf)

    flow: dict = {a: {b: Fraction(0) for b in nbrs} for a, nbrs in capacity.items()}
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in capacity[a]:
                if b not in parent and capacity[a][b] - flow[a][b] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        bottleneck = None
        node = sink
        while parent[node] is not None:
            p = parent[node]
            slack = capacity[p][node] - flow[p][node]
            bottleneck = slack if bottleneck is None else min(bottleneck, slack)
            node = p
        node = sink
        while parent[node] is not None:
            p = parent[node]
            flow[p][node] += bottleneck
            flow[node][p] -= bottleneck
            node = p
    reachable = {source}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in capacity[a]:
            if b not in reachable and capacity[a][b] - flow[a][b] > 0:
                reachable.add(b)
                queue.append(b)
    cover = {v for v in left if ("L", v) not in reachable}
    cover |= {v for v in right if ("R", v) in reachable}
    return frozenset(cover)


def min_unweighted_vc(g: WeightedGraph) -> frozenset:
    """Minimum-cardinality vertex cover via (1, deg) branching with leaf and
    degree-2 reductions."""
    unit = g.with_unit_weights()
    _, cover = min_weight_vc_exact(unit)
    return cover


# ---------------------------------------------------------------------------
# Shared rule finders
# ---------------------------------------------------------------------------


def _thin_component(g: WeightedGraph) -> frozenset | None:
    for comp in g.components():
        sub_edges = sum(1 for v in comp for u in g.adj[v] if u in comp and v < u)
        if sub_edges == 0:
            continue
        high = sum(1 for v in comp if len(g.adj[v] & comp) >= 3)
        if high <= 1:
            return comp
    return None


def _small_component(g: WeightedGraph, bound: int) -> frozenset | None:
    for comp in g.components():
        if len(comp) > bound:
            continue
        if any(g.adj[v] & comp for v in comp):
            return comp
    return None


def _rule5_vertex(g: WeightedGraph) -> int | None:
    dmax = g.max_degree()
    if dmax >= 4:
        return min(v for v in g.vertices if g.degree(v) == dmax)
    if dmax == 3 and all(g.degree(v) in (0, 3) for v in g.vertices):
        return min(v for v in g.vertices if g.degree(v) == 3)
    return None


def _find_leaf(g: WeightedGraph):
    for v in g.sorted_vertices():
        if g.degree(v) == 1:
            return v, next(iter(g.neighbors(v)))
    return None


def _find_domination(g: WeightedGraph):
    for v in g.sorted_vertices():
        nv = g.neighbors(v)
        for u in sorted(nv):
            if g.neighbors(u) - {v} <= nv - {u} and g.weights[v] <= g.weights[u]:
                return v, u
    return None


def _find_triangle_with_deg2(g: WeightedGraph):
    for r in g.sorted_vertices():
        if g.degree(r) != 2:
            continue
        v, u = sorted(g.neighbors(r))
        if g.has_edge(v, u):
            return v, u, r
    return None


def _find_triangle(g: WeightedGraph):
    for a in g.sorted_vertices():
        na = g.neighbors(a)
        for b in sorted(na):
            if b <= a:
                continue
            for c in sorted(na & g.neighbors(b)):
                if c > b:
                    return a, b, c
    return None


def _triangle_rule9(g: WeightedGraph):
    tri = _find_triangle(g)
    if tri is None:
        return None
    v, u, r = sorted(tri, key=lambda x: (g.weights[x], x))
    others_u = g.neighbors(u) - {v, r}
    others_r = g.neighbors(r) - {v, u}
    if len(others_u) != 1 or len(others_r) != 1:
        raise RuntimeError("triangle rule reached with unexpected degrees")
    (u2,) = others_u
    (r2,) = others_r
    x_set = g.neighbors(v) | g.neighbors(u2) | g.neighbors(r2)
    return v, frozenset(x_set)


def _find_deg2_pair(g: WeightedGraph):
    for u in g.sorted_vertices():
        if g.degree(u) != 2:
            continue
        p, q = sorted(g.neighbors(u))
        for v, r in ((p, q), (q, p)):
            if g.degree(v) == 3 and g.degree(r) == 2:
                return v, u, r
    return None


def _find_rule11(g: WeightedGraph):
    for x in g.sorted_vertices():
        if g.degree(x) != 3:
            continue
        for a in sorted(g.neighbors(x)):
            if g.degree(a) != 2:
                continue
            (v,) = g.neighbors(a) - {x}
            if g.degree(v) != 3:
                continue
            rest = sorted(g.neighbors(x) - {a})
            for b, c in (rest, rest[::-1]):
                if g.degree(b) == 2 and (v not in g.neighbors(b) or g.degree(c) == 2):
                    return x, a, b, c, v
    return None


def _find_rule12(g: WeightedGraph):
    for x in g.sorted_vertices():
        if g.degree(x) != 3:
            continue
        for a in sorted(g.neighbors(x)):
            if g.degree(a) != 2:
                continue
            (v,) = g.neighbors(a) - {x}
            if g.degree(v) != 3:
                continue
            rest = sorted(g.neighbors(x) - {a})
            for b, c in (rest, rest[::-1]):
                if g.neighbors(b) == frozenset({x, v}) and g.degree(c) == 3:
                    return x, a, b, c, v
    return None


def _xabcv_patterns(g: WeightedGraph):
    """All instantiations of the degree-2 vertex pattern used by the final
    rules: a has degree 2 with neighbors x, v of degree 3 (both role orders)."""
    out = []
    for a in g.sorted_vertices():
        if g.degree(a) != 2:
            continue
        p, q = sorted(g.neighbors(a))
        for x, v in ((p, q), (q, p)):
            if g.degree(x) == 3 and g.degree(v) == 3:
                bc = tuple(sorted(g.neighbors(x) - {a}))
                v12 = tuple(sorted(g.neighbors(v) - {a}))
                out.append((x, a, bc, v, v12))
    return out


# ---------------------------------------------------------------------------
# WVC-Alg: the 16-rule k-WVC solver
# ---------------------------------------------------------------------------


def solve_k_wvc(
    g: WeightedGraph,
    wbound,
    k: int,
    *,
    component_bound: int = DEFAULT_COMPONENT_BOUND,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """First-applicable-rule recursion for the k-variant of weighted vertex
    cover: non-nil whenever some cover has weight <= W and size <= k, and
    every non-nil answer is a cover of weight at most W (its size may exceed
    k)."""
    _validate_input_weights(g)
    stats = stats if stats is not None else SearchStats()
    res = _wvc(g, Fraction(wbound), int(k), component_bound, stats, False)
    if res is None:
        return Nil
    return SolveOutcome(frozenset(res), g.weight_of(res))


def _wvc(
    g: WeightedGraph,
    W: Fraction,
    k: int,
    bound: int,
    stats: SearchStats,
    owed: bool,
) -> frozenset | None:
    stats.enter()

    # Rule 1: budgets exhausted.
    if min(W, k) < 0:
        stats.fired("wvc1")
        return None
    # Rule 2: nothing left to cover.
    if g.edge_count() == 0:
        stats.fired("wvc2")
        return frozenset()
    # Rule 3: component with at most one vertex of degree >= 3.
    comp = _thin_component(g)
    if comp is not None:
        stats.fired("wvc3")
        w_u, u = thin_component_min_wvc(g.induced(comp))
        sub = _wvc(g.without(comp), W - w_u, k - 1, bound, stats, False)
        return None if sub is None else sub | frozenset(u)
    # Rule 4: small component solved outright.
    comp = _small_component(g, bound)
    if comp is not None:
        stats.fired("wvc4")
        w_u, u = min_weight_vc_exact(g.induced(comp))
        sub = _wvc(g.without(comp), W - w_u, k - 1, bound, stats, False)
        return None if sub is None else sub | u
    # Rule 5: high degree, or a purely cubic graph.
    v = _rule5_vertex(g)
    if v is not None:
        stats.fired("wvc5")
        cubic = g.degree(v) == 3
        if cubic and owed:
            stats.fired("cubic_debt_at_rule5")
        r1 = _wvc(g.without({v}), W - g.weights[v], k - 1, bound, stats, cubic)
        if r1 is not None:
            return r1 | {v}
        nv = g.neighbors(v)
        r2 = _wvc(
            g.without(nv),
            W - g.weight_of(nv),
            k - max(len(nv), 4),
            bound,
            stats,
            cubic,
        )
        return None if r2 is None else r2 | nv
    # Rule 6: leaf elimination with weight rewriting.
    leaf = _find_leaf(g)
    if leaf is not None:
        v, u = leaf
        stats.fired("wvc6")
        if g.weights[v] >= g.weights[u]:
            sub = _wvc(g.without({v, u}), W - g.weights[u], k - 1, bound, stats, False)
            return None if sub is None else sub | {u}
        if g.degree(u) == 2:
            (r,) = g.neighbors(u) - {v}
            w_r = g.weights[r] - (g.weights[u] - g.weights[v])
            if w_r <= 0:
                sub = _wvc(
                    g.without({v, u, r}),
                    W - g.weights[v] - g.weights[r],
                    k - 1,
                    bound,
                    stats,
                    False,
                )
                return None if sub is None else sub | {v, r}
            sub = _wvc(
                g.without({v, u}).with_weights({r: w_r}),
                W - g.weights[u],
                k - 1,
                bound,
                stats,
                False,
            )
            if sub is None:
                return None
            return sub | ({v} if r in sub else {u})
        w_u = g.weights[u] - g.weights[v]
        sub = _wvc(
            g.without({v}).with_weights({u: w_u}),
            W - g.weights[v],
            k,
            bound,
            stats,
            owed,
        )
        if sub is None:
            return None
        return sub if u in sub else sub | {v}
    # Rule 7: domination.
    dom = _find_domination(g)
    if dom is not None:
        v, _u = dom
        stats.fired("wvc7")
        sub = _wvc(g.without({v}), W - g.weights[v], k - 1, bound, stats, False)
        return None if sub is None else sub | {v}
    # Rule 8: triangle with a degree-2 vertex; weight rewriting.
    tri = _find_triangle_with_deg2(g)
    if tri is not None:
        v, u, r = tri
        stats.fired("wvc8")
        w_v = g.weights[v] - g.weights[r]
        w_u = g.weights[u] - g.weights[r]
        sub = _wvc(
            g.without({r}).with_weights({v: w_v, u: w_u}),
            W - 2 * g.weights[r],
            k,
            bound,
            stats,
            owed,
        )
        if sub is None:
            return None
        return sub if (v in sub and u in sub) else sub | {r}
    # Rule 9: remaining (all-degree-3) triangles.
    tri9 = _triangle_rule9(g)
    if tri9 is not None:
        v, x_set = tri9
        stats.fired("wvc9")
        if owed:
            stats.fired("cubic_debt_at_branching")
        r1 = _wvc(g.without({v}), W - g.weights[v], k - 1, bound, stats, False)
        if r1 is not None:
            return r1 | {v}
        r2 = _wvc(g.without(x_set), W - g.weight_of(x_set), k - len(x_set), bound, stats, False)
        return None if r2 is None else r2 | x_set
    # Rule 10: adjacent degree-2 pair next to a degree-3 vertex.
    pair = _find_deg2_pair(g)
    if pair is not None:
        v, _u, _r = pair
        stats.fired("wvc10")
        if owed:
            stats.fired("cubic_debt_at_branching")
        return _branch_v_nv(g, W, k, v, 3, bound, stats)
    # Rule 11.
    found = _find_rule11(g)
    if found is not None:
        x, a, b, c, v = found
        stats.fired("wvc11")
        if owed:
            stats.fired("cubic_debt_at_branching")
        return _branch_v_nv(g, W, k, v, 3, bound, stats)
    # Rule 12.
    found = _find_rule12(g)
    if found is not None:
        x, a, b, c, v = found
        stats.fired("wvc12")
        if owed:
            stats.fired("cubic_debt_at_branching")
        return _branch_v_nv(g, W, k, c, 3, bound, stats)
    # Rules 13-16 act on the degree-2 pattern x,a,b,c,v.
    patterns = _xabcv_patterns(g)
    if not patterns:
        raise RuntimeError("no applicable rule: missing degree-2 pattern")
    for x, a, bc, v, v12 in patterns:
        if set(bc) == set(v12):
            stats.fired("wvc13")
            if owed:
                stats.fired("cubic_debt_at_branching")
            pair_xv = frozenset({x, v})
            r1 = _wvc(g.without(pair_xv), W - g.weight_of(pair_xv), k - 2, bound, stats, False)
            if r1 is not None:
                return r1 | pair_xv
            nx = g.neighbors(x)
            r2 = _wvc(g.without(nx), W - g.weight_of(nx), k - 3, bound, stats, False)
            return None if r2 is None else r2 | nx
    for x, a, bc, v, v12 in patterns:
        shared = set(bc) & set(v12)
        if len(shared) == 1:
            stats.fired("wvc14")
            if owed:
                stats.fired("cubic_debt_at_branching")
            b = shared.pop()
            c = next(y for y in bc if y != b)
            nb = g.neighbors(b)
            r1 = _wvc(g.without(nb), W - g.weight_of(nb), k - 3, bound, stats, False)
            if r1 is not None:
                return r1 | nb
            bnc = {b} | g.neighbors(c)
            r2 = _wvc(g.without(bnc), W - g.weight_of(bnc), k - 4, bound, stats, False)
            if r2 is not None:
                return r2 | bnc
            r3 = _wvc(
                g.without({b, c}), W - g.weight_of({b, c}), k - 2, bound, stats, False
            )
            return None if r3 is None else r3 | {b, c}
    for x, a, bc, v, v12 in patterns:
        for b in bc:
            for v1 in v12:
                if g.has_edge(b, v1):
                    stats.fired("wvc15")
                    if owed:
                        stats.fired("cubic_debt_at_branching")
                    return _branch_v_nv(g, W, k, b, 3, bound, stats)
    x, a, bc, v, v12 = patterns[0]
    b, c = bc
    v1, v2 = v12
    stats.fired("wvc16")
    if owed:
        stats.fired("cubic_debt_at_branching")
    nb = g.neighbors(b)
    r1 = _wvc(g.without(nb), W - g.weight_of(nb), k - 3, bound, stats, False)
    if r1 is not None:
        return r1 | nb
    bnv2 = {b} | g.neighbors(v2)
    r2 = _wvc(g.without(bnv2), W - g.weight_of(bnv2), k - 4, bound, stats, False)
    if r2 is not None:
        return r2 | bnv2
    bv2nc = {b, v2} | g.neighbors(c)
    r3 = _wvc(g.without(bv2nc), W - g.weight_of(bv2nc), k - 5, bound, stats, False)
    if r3 is not None:
        return r3 | bv2nc
    trip = frozenset({b, v2, c})
    r4 = _wvc(g.without(trip), W - g.weight_of(trip), k - 3, bound, stats, False)
    return None if r4 is None else r4 | trip


def _branch_v_nv(g, W, k, v, nv_decrease, bound, stats):
    r1 = _wvc(g.without({v}), W - g.weights[v], k - 1, bound, stats, False)
    if r1 is not None:
        return r1 | {v}
    nv = g.neighbors(v)
    r2 = _wvc(g.without(nv), W - g.weight_of(nv), k - nv_decrease, bound, stats, False)
    return None if r2 is None else r2 | nv


# ---------------------------------------------------------------------------
# WVCnoW-Alg: the weight-preserving 17-rule solver
# ---------------------------------------------------------------------------


def solve_k_wvcnow(
    g: WeightedGraph,
    k: int,
    *,
    component_bound: int = DEFAULT_COMPONENT_BOUND,
    stats: SearchStats | None = None,
) -> frozenset:
    """Return a vertex cover whose weight is at most the weight of every
    cover of size at most k.

    Never nil: exhausted branches are dropped internally, and if every branch
    exhausts the size budget (which certifies that no cover of size at most k
    exists, making the weight claim vacuous), the full set of non-isolated
    vertices is returned."""
    _validate_input_weights(g)
    stats = stats if stats is not None else SearchStats()

    def recurse(h: WeightedGraph, kk: int):
        stats.enter()
        return _wvcnow_step(h, kk, recurse, component_bound, stats)

    res = recurse(g, int(k))
    if res is None:
        res = g.non_isolated()
    return frozenset(res)


def _lightest(g: WeightedGraph, candidates):
    best = None
    best_key = None
    for c in candidates:
        if c is None:
            continue
        key = (g.weight_of(c), tuple(sorted(c)))
        if best_key is None or key < best_key:
            best, best_key = c, key
    return best


def _wvcnow_step(
    g: WeightedGraph,
    k: int,
    recurse: Callable,
    bound: int,
    stats: SearchStats,
) -> frozenset | None:
    # Rules 1-5 mirror the weight-tracking solver with W ignored; branchings
    # return the lightest result over their branches.
    if k < 0:
        stats.fired("now1")
        return None
    if g.edge_count() == 0:
        stats.fired("now2")
        return frozenset()
    comp = _thin_component(g)
    if comp is not None:
        stats.fired("now3")
        w_u, u = thin_component_min_wvc(g.induced(comp))
        sub = recurse(g.without(comp), k - 1)
        return None if sub is None else sub | frozenset(u)
    comp = _small_component(g, bound)
    if comp is not None:
        stats.fired("now4")
        w_u, u = min_weight_vc_exact(g.induced(comp))
        sub = recurse(g.without(comp), k - 1)
        return None if sub is None else sub | u
    v = _rule5_vertex(g)
    if v is not None:
        stats.fired("now5")
        c1 = recurse(g.without({v}), k - 1)
        c1 = None if c1 is None else c1 | {v}
        nv = g.neighbors(v)
        c2 = recurse(g.without(nv), k - max(len(nv), 4))
        c2 = None if c2 is None else c2 | nv
        return _lightest(g, [c1, c2])
    # Rule 6: leaf whose support is weak, branching on the nearest
    # degree-3 vertex reachable through degree-2 vertices.
    found = _find_now6(g)
    if found is not None:
        stats.fired("now6")
        return _branch_r_now(g, k, found, recurse)
    # Rule 7: any remaining leaf, same branching.
    found = _find_now7(g)
    if found is not None:
        stats.fired("now7")
        return _branch_r_now(g, k, found, recurse)
    # Rule 8 = domination, W ignored.
    dom = _find_domination(g)
    if dom is not None:
        v, _u = dom
        stats.fired("now8")
        sub = recurse(g.without({v}), k - 1)
        return None if sub is None else sub | {v}
    # Rule 9: triangle with a degree-2 vertex, now a branching.
    tri = _find_triangle_with_deg2(g)
    if tri is not None:
        v, u, r = tri
        # both non-degree-2 corners have degree 3 here; branch on the smaller
        pick = min(v, u)
        stats.fired("now9")
        return _branch_v_nv_now(g, k, pick, 3, recurse)
    # Rule 10 = remaining-triangle rule.
    tri9 = _triangle_rule9(g)
    if tri9 is not None:
        v, x_set = tri9
        stats.fired("now10")
        c1 = recurse(g.without({v}), k - 1)
        c1 = None if c1 is None else c1 | {v}
        c2 = recurse(g.without(x_set), k - len(x_set))
        c2 = None if c2 is None else c2 | x_set
        return _lightest(g, [c1, c2])
    # Rule 11 = adjacent degree-2 pair.
    pair = _find_deg2_pair(g)
    if pair is not None:
        v, _u, _r = pair
        stats.fired("now11")
        return _branch_v_nv_now(g, k, v, 3, recurse)
    patterns = _xabcv_patterns(g)
    if not patterns:
        raise RuntimeError("no applicable rule: missing degree-2 pattern")
    # Rule 12: some sibling of a is a twin of a.
    for x, a, bc, v, v12 in patterns:
        for y in bc:
            if g.neighbors(y) == frozenset({x, v}):
                stats.fired("now12")
                return _branch_v_nv_now(g, k, v, 3, recurse)
    # Rule 13: both siblings have degree 2 and x outweighs them.
    for x, a, bc, v, v12 in patterns:
        b, c = bc
        if (
            g.degree(b) == 2
            and g.degree(c) == 2
            and g.weights[x] >= g.weights[b] + g.weights[c]
        ):
            stats.fired("now13")
            c1 = recurse(g.without({v}), k - 1)
            c1 = None if c1 is None else c1 | {v}
            big = g.neighbors(v) | {b, c}
            c2 = recurse(g.without(big), k - 4)
            c2 = None if c2 is None else c2 | big
            return _lightest(g, [c1, c2])
    # Rule 14: both siblings degree 2, their outer neighbors non-adjacent.
    for x, a, bc, v, v12 in patterns:
        b, c = bc
        if g.degree(b) != 2 or g.degree(c) != 2:
            continue
        (b2,) = g.neighbors(b) - {x}
        (c2,) = g.neighbors(c) - {x}
        if b2 not in g.neighbors(c2):
            stats.fired("now14")
            nb2 = g.neighbors(b2)
            r1 = recurse(g.without(nb2), k - 3)
            r1 = None if r1 is None else r1 | nb2
            grp = {b2} | g.neighbors(c2)
            r2 = recurse(g.without(grp), k - 4)
            r2 = None if r2 is None else r2 | grp
            trip = frozenset({b2, c2, x})
            r3 = recurse(g.without(trip), k - 3)
            r3 = None if r3 is None else r3 | trip
            return _lightest(g, [r1, r2, r3])
    # Rule 15: the degree-2 vertex is at least as heavy as one endpoint.
    for x, a, bc, v, v12 in patterns:
        if g.weights[a] >= min(g.weights[x], g.weights[v]):
            p, q = (
                (x, v)
                if (g.weights[x], x) <= (g.weights[v], v)
                else (v, x)
            )
            stats.fired("now15")
            nq = g.neighbors(q)
            r1 = recurse(g.without(nq), k - 3)
            r1 = None if r1 is None else r1 | nq
            r2 = recurse(g.without({q, p}), k - 2)
            r2 = None if r2 is None else r2 | {q, p}
            return _lightest(g, [r1, r2])
    # Rule 16: both siblings have degree 3.
    for x, a, bc, v, v12 in patterns:
        b, c = bc
        if g.degree(b) == 3 and g.degree(c) == 3:
            stats.fired("now16")
            nb = g.neighbors(b)
            r1 = recurse(g.without(nb), k - 3)
            r1 = None if r1 is None else r1 | nb
            grp = {b} | g.neighbors(c)
            r2 = recurse(g.without(grp), k - 4)
            r2 = None if r2 is None else r2 | grp
            trip = frozenset({b, c, a})
            r3 = recurse(g.without(trip), k - 3)
            r3 = None if r3 is None else r3 | trip
            return _lightest(g, [r1, r2, r3])
    # Rule 17: remaining case, one sibling of degree 2 and one of degree 3.
    for x, a, bc, v, v12 in patterns:
        degs = sorted(g.degree(y) for y in bc)
        if degs != [2, 3]:
            continue
        b = next(y for y in bc if g.degree(y) == 2)
        c = next(y for y in bc if g.degree(y) == 3)
        (b2,) = g.neighbors(b) - {x}
        stats.fired("now17")
        nc = g.neighbors(c)
        r1 = recurse(g.without(nc), k - 3)
        r1 = None if r1 is None else r1 | nc
        nx = g.neighbors(x)
        r2 = recurse(g.without(nx), k - 3)
        r2 = None if r2 is None else r2 | nx
        quad = frozenset({c, x, v, b2})
        r3 = recurse(g.without(quad), k - 4)
        r3 = None if r3 is None else r3 | quad
        return _lightest(g, [r1, r2, r3])
    raise RuntimeError("no applicable rule in the weight-preserving solver")


def _branch_v_nv_now(g, k, v, nv_decrease, recurse):
    c1 = recurse(g.without({v}), k - 1)
    c1 = None if c1 is None else c1 | {v}
    nv = g.neighbors(v)
    c2 = recurse(g.without(nv), k - nv_decrease)
    c2 = None if c2 is None else c2 | nv
    return _lightest(g, [c1, c2])


def _branch_r_now(g, k, r, recurse):
    c1 = recurse(g.without({r}), k - 1)
    c1 = None if c1 is None else c1 | {r}
    nr = g.neighbors(r)
    c2 = recurse(g.without(nr), k - 3)
    c2 = None if c2 is None else c2 | nr
    return _lightest(g, [c1, c2])


def _deg2_reachable_deg3(g: WeightedGraph, u: int, exclude: frozenset):
    """Smallest degree-3 vertex linked to u by a path whose internal
    vertices all have degree 2."""
    region = {u}
    queue = deque([u])
    candidates = set()
    while queue:
        w = queue.popleft()
        for nb in sorted(g.neighbors(w)):
            if nb in exclude:
                continue
            if g.degree(nb) == 3:
                candidates.add(nb)
            elif g.degree(nb) == 2 and nb not in region:
                region.add(nb)
                queue.append(nb)
    return min(candidates) if candidates else None


def _find_now6(g: WeightedGraph):
    for v in g.sorted_vertices():
        if g.degree(v) != 1:
            continue
        (u,) = g.neighbors(v)
        leaves_at_u = sum(1 for y in g.neighbors(u) if g.degree(y) == 1)
        if not (g.degree(u) == 2 or leaves_at_u >= 2):
            continue
        r = _deg2_reachable_deg3(g, u, exclude=frozenset({u, v}))
        if r is not None and r not in (u, v):
            return r
    return None


def _find_now7(g: WeightedGraph):
    for v in g.sorted_vertices():
        if g.degree(v) != 1:
            continue
        (u,) = g.neighbors(v)
        if g.degree(u) == 3:
            return u
        r = _deg2_reachable_deg3(g, u, exclude=frozenset({v}))
        if r is not None:
            return r
    return None


# ---------------------------------------------------------------------------
# WVCnoW-Alg2: memoization, Buss-rule kernel and component branching
# ---------------------------------------------------------------------------


def solve_k_wvcnow_memo(
    g: WeightedGraph,
    k: int,
    *,
    component_bound: int = DEFAULT_COMPONENT_BOUND,
    easy_bound: int = MEMO_EASY_BOUND,
    stats: SearchStats | None = None,
) -> frozenset | None:
    """Memoized variant of the weight-preserving solver.

    Same value contract where defined, except it returns nil (via the Buss
    rule, or the component budget) exactly when no vertex cover of size at
    most k exists for a subinstance.  Memo keys are (vertex subset of the
    original input, k'), valid because every node's graph is an induced
    subgraph carrying the restricted original weights.
    """
    _validate_input_weights(g)
    stats = stats if stats is not None else SearchStats()
    memo: dict = {}

    def solve(h: WeightedGraph, kk: int) -> frozenset | None:
        stats.enter()
        isolated = h.vertices - h.non_isolated()
        if isolated:
            return solve(h.without(isolated), kk)
        key = (h.vertices, kk)
        if key in memo:
            stats.memo_hits += 1
            return memo[key]
        res = _memo_step(h, kk)
        memo[key] = res
        return res

    def _memo_step(h: WeightedGraph, kk: int) -> frozenset | None:
        m = h.edge_count()
        dmax = h.max_degree()
        # Buss-rule kernel: k' vertices cover at most max-degree * k' edges.
        if m > dmax * kk:
            stats.fired("memo_buss")
            return None
        if kk < 0:
            stats.fired("memo_exhausted")
            return None
        if m == 0:
            stats.fired("memo_base")
            return frozenset()
        if dmax >= 5:
            stats.fired("memo_deg5")
            v = min(u for u in h.vertices if h.degree(u) == dmax)
            c1 = solve(h.without({v}), kk - 1)
            c1 = None if c1 is None else c1 | {v}
            nv = h.neighbors(v)
            c2 = solve(h.without(nv), kk - len(nv))
            c2 = None if c2 is None else c2 | nv
            return _lightest(h, [c1, c2])
        comp = _thin_component(h) or _small_component(h, easy_bound)
        if comp is not None:
            stats.fired("memo_easy")
            w_u, u = min_weight_vc_exact(h.induced(comp))
            sub = solve(h.without(comp), kk - 1)
            return None if sub is None else sub | frozenset(u)
        comps = h.components()
        if len(comps) > 1:
            stats.fired("memo_split")
            k_tilde = kk - 3 * (len(comps) - 1)
            if k_tilde < 3:
                return None
            union: frozenset = frozenset()
            for c in comps:
                part = solve(h.induced(c), k_tilde)
                if part is None:
                    return None
                union |= part
            return union
        if dmax == 4:
            stats.fired("memo_deg4")
            v = min(u for u in h.vertices if h.degree(u) == 4)
            c1 = solve(h.without({v}), kk - 1)
            c1 = None if c1 is None else c1 | {v}
            nv = h.neighbors(v)
            c2 = solve(h.without(nv), kk - 4)
            c2 = None if c2 is None else c2 | nv
            return _lightest(h, [c1, c2])
        return _wvcnow_step(h, kk, solve, component_bound, stats)

    return solve(g, int(k))


def k_wvc_via_memo(
    g: WeightedGraph,
    wbound,
    k: int,
    *,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """k-WVC through the memoized solver: return its cover iff its weight is
    within the bound."""
    cover = solve_k_wvcnow_memo(g, k, stats=stats)
    if cover is None:
        return Nil
    weight = g.weight_of(cover)
    if weight > Fraction(wbound):
        return Nil
    return SolveOutcome(cover, weight)


# ---------------------------------------------------------------------------
# WVC*-Alg: measure and conquer with a supplied minimum vertex cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoodMvc:
    """A minimum vertex cover together with the triangle-to-path map.

    ``f`` sends each triangle component of G[U] without a common outside
    neighbor to a two-vertex path component, witnessed by an outside vertex
    adjacent to one triangle vertex and both path vertices.
    """

    u: frozenset
    f: Mapping[frozenset, frozenset]
    witness: Mapping[frozenset, int]


def _triangle_p2_components(g: WeightedGraph, u: frozenset):
    sub = g.induced(u)
    triangles = []
    p2s = []
    for comp in sub.components():
        edges = sum(1 for v in comp for w in sub.adj[v] if w in comp and v < w)
        if len(comp) == 3 and edges == 3:
            triangles.append(comp)
        elif len(comp) == 2 and edges == 1:
            p2s.append(comp)
    return triangles, p2s


def _starred(g: WeightedGraph, u: frozenset, triangles):
    out = []
    for c3 in triangles:
        common = frozenset.intersection(*(g.neighbors(v) for v in sorted(c3)))
        if not (common - u):
            out.append(c3)
    return out


def preprocess_good_mvc(g: WeightedGraph, mvc) -> GoodMvc:
    """Compute a good minimum vertex cover and its triangle map.

    Repeatedly swaps a vertex of an unwitnessed starred triangle with its
    outside neighbor; each swap strictly shrinks the starred set, so the loop
    ends with every remaining starred triangle witnessed by some path
    component.
    """
    if g.max_degree() > 3:
        raise ValueError("good-cover preprocessing requires maximum degree 3")
    u = frozenset(mvc)
    if not is_vertex_cover(g, u):
        raise ValueError("mvc is not a vertex cover")
    for _ in range(g.n * g.n + 1):
        triangles, p2s = _triangle_p2_components(g, u)
        starred = _starred(g, u, triangles)
        f: dict = {}
        witness: dict = {}
        swap = None
        for c3 in sorted(starred, key=lambda c: tuple(sorted(c))):
            hit = None
            for v in sorted(c3):
                outside = g.neighbors(v) - c3
                if not outside:
                    raise ValueError("supplied cover is not minimum")
                (nb,) = outside
                for p2 in sorted(p2s, key=lambda c: tuple(sorted(c))):
                    if p2 <= g.neighbors(nb) - {v}:
                        hit = (v, nb, p2)
                        break
                if hit:
                    break
            if hit is None:
                v = min(c3)
                (nb,) = g.neighbors(v) - c3
                swap = (v, nb)
                break
            f[c3] = hit[2]
            witness[c3] = hit[1]
        if swap is None:
            return GoodMvc(u=u, f=f, witness=witness)
        v, nb = swap
        u = (u - {v}) | {nb}
    raise RuntimeError("good-cover preprocessing failed to converge")


def solve_wvc_star(
    g: WeightedGraph,
    wbound,
    mvc,
    *,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """Exact-in-W vertex cover solve driven by a minimum vertex cover.

    Returns a cover of weight at most W, or nil exactly when none exists.
    """
    _validate_input_weights(g)
    mvc = frozenset(mvc)
    if not is_vertex_cover(g, mvc):
        raise ValueError("mvc is not a vertex cover")
    stats = stats if stats is not None else SearchStats()
    if g.max_degree() <= 3:
        good = preprocess_good_mvc(g, mvc)
        u0, f = good.u, dict(good.f)
    else:
        u0, f = mvc, None
    res = _star(g, Fraction(wbound), frozenset(u0), f, stats)
    if res is None:
        return Nil
    return SolveOutcome(frozenset(res), g.weight_of(res))


def _star(g, W, u, f, stats) -> frozenset | None:
    stats.enter()
    # Rule 1: bipartite base case, exact via max-flow.
    if _bipartition(g) is not None:
        stats.fired("star1")
        cover = bipartite_min_weight_vc(g)
        return cover if g.weight_of(cover) <= W else None
    # Rule 2: cover vertex with no outside neighbor is redundant in U.
    for v in sorted(u):
        if not (g.neighbors(v) - u):
            stats.fired("star2")
            return _star(g, W, u - {v}, f, stats)
    # Rule 3: small components solved outright.
    for comp in g.components():
        if len(comp) <= 10:
            stats.fired("star3")
            w_a, a = min_weight_vc_exact(g.induced(comp))
            sub = _star(g.without(comp), W - w_a, u - comp, f, stats)
            return None if sub is None else sub | a
    if f is not None:
        triangles, _p2s = _triangle_p2_components(g, u)
        starred = _starred(g, u, triangles)
        starred.sort(key=lambda c: tuple(sorted(c)))
        # Rule 4: a starred triangle whose mapped path is unshared.
        for c3 in starred:
            if c3 not in f:
                raise RuntimeError("starred triangle missing from the map")
            if all(f[c3] != f[o] for o in starred if o != c3):
                stats.fired("star4")
                v = min(f[c3])
                for pair in _two_subsets(c3):
                    x = frozenset({v}) | pair
                    r = _star(g.without(x), W - g.weight_of(x), u - x, f, stats)
                    if r is not None:
                        return r | x
                nv = g.neighbors(v)
                r = _star(g.without(nv), W - g.weight_of(nv), u - nv, f, stats)
                return None if r is None else r | nv
        # Rule 5: two starred triangles sharing a mapped path.
        for i, c3 in enumerate(starred):
            for c3b in starred[i + 1 :]:
                if f[c3] == f[c3b]:
                    stats.fired("star5")
                    v = min(f[c3])
                    for pa in _two_subsets(c3):
                        for pb in _two_subsets(c3b):
                            x = frozenset({v}) | pa | pb
                            r = _star(
                                g.without(x), W - g.weight_of(x), u - x, f, stats
                            )
                            if r is not None:
                                return r | x
                    nv = g.neighbors(v)
                    r = _star(g.without(nv), W - g.weight_of(nv), u - nv, f, stats)
                    return None if r is None else r | nv
    # Rule 6: leaf of G[U] hanging off a branching cover vertex.
    for uu in sorted(u):
        inside = g.neighbors(uu) & u
        if len(inside) == 1:
            (v,) = inside
            if len(g.neighbors(v) & u) >= 2:
                stats.fired("star6")
                return _star_branch(g, W, u, f, v, stats)
    # Rule 7: isolated cover edge in G[U].
    for v in sorted(u):
        if len(g.neighbors(v) & u) == 1:
            stats.fired("star7")
            return _star_branch(g, W, u, f, v, stats)
    # Rule 8: cover vertex with three cover neighbors.
    for v in sorted(u):
        if len(g.neighbors(v) & u) >= 3:
            stats.fired("star8")
            return _star_branch(g, W, u, f, v, stats)
    # Rule 9: triangles (only reachable when the input degree exceeds 3).
    triangles, _ = _triangle_p2_components(g, u)
    if triangles:
        stats.fired("star9")
        c3 = min(triangles, key=lambda c: tuple(sorted(c)))
        for pair in _two_subsets(c3):
            r = _star(g.without(pair), W - g.weight_of(pair), u - pair, f, stats)
            if r is not None:
                return r | pair
        return None
    # Rule 10: remaining case, cover cycles of length at least 4.
    for v in sorted(u):
        if len(g.neighbors(v) & u) == 2:
            stats.fired("star10")
            return _star_branch(g, W, u, f, v, stats)
    raise RuntimeError("no applicable rule in the measure-and-conquer solver")


def _star_branch(g, W, u, f, v, stats):
    r1 = _star(g.without({v}), W - g.weights[v], u - {v}, f, stats)
    if r1 is not None:
        return r1 | {v}
    nv = g.neighbors(v)
    r2 = _star(g.without(nv), W - g.weight_of(nv), u - nv, f, stats)
    return None if r2 is None else r2 | nv


def _two_subsets(c3: frozenset):
    a, b, c = sorted(c3)
    return [frozenset({a, b}), frozenset({a, c}), frozenset({b, c})]
