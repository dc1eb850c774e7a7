"""Weighted max internal out-branching.

``solve_k_wiob`` loops over roots and tree sizes, querying a pluggable
engine for an out-tree with exactly k' internal vertices, at most k' leaves,
and internal weight at least W; a hit is extended to a spanning
out-branching whose internal set can only grow.  The default engine is an
exact memoized extension search over rooted subtrees with at most 2k
vertices, which is the size cap implied by the leaf bound.  When k reaches
the weight bound the solve becomes the unrestricted problem (weights are at
least 1, so any out-branching with more than W internal vertices already
qualifies).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from wbranch.graphs import WeightedDigraph
from wbranch.outcome import Nil, SearchStats, SolveOutcome


class OutTree:
    """Rooted directed tree given by a child-to-parent map."""

    __slots__ = ("root", "parent", "_hash")

    def __init__(self, root: int, parent: Mapping[int, int]):
        parent = dict(parent)
        if root in parent:
            raise ValueError("the root cannot have a parent")
        vertices = {root} | set(parent)
        for child, par in parent.items():
            if par not in vertices:
                raise ValueError(f"parent {par} of {child} is not a tree vertex")
        # every chain must reach the root without revisiting
        for child in parent:
            seen = {child}
            cur = child
            while cur != root:
                cur = parent[cur]
                if cur in seen:
                    raise ValueError("parent map contains a cycle")
                seen.add(cur)
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("OutTree is immutable")

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.parent) | {self.root}

    @property
    def internal(self) -> frozenset:
        return frozenset(self.parent.values())

    @property
    def leaves(self) -> frozenset:
        return self.vertices - self.internal

    def arcs(self) -> list[tuple[int, int]]:
        return sorted((p, c) for c, p in self.parent.items())

    def is_spanning(self, g: WeightedDigraph) -> bool:
        return self.vertices == g.vertices

    def _key(self):
        return (self.root, frozenset(self.parent.items()))

    def __eq__(self, other):
        return isinstance(other, OutTree) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._key()))
        return self._hash

    def __repr__(self):
        return f"OutTree(root={self.root}, n={len(self.parent) + 1})"


@dataclass(frozen=True)
class ITreeQuery:
    """Inputs of one engine probe: find an out-tree rooted at r with exactly
    k internal vertices, at most k leaves, and internal weight >= W."""

    g: WeightedDigraph
    r: int
    wbound: Fraction
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")


def is_out_tree_of(g: WeightedDigraph, t: OutTree) -> bool:
    return t.vertices <= g.vertices and all(
        (p, c) in g.arcs for c, p in t.parent.items()
    )


def has_outbranching(g: WeightedDigraph, r: int) -> bool:
    """True iff every vertex is reachable from r."""
    if r not in g.vertices:
        raise ValueError(f"unknown vertex {r}")
    seen = {r}
    stack = [r]
    while stack:
        v = stack.pop()
        for u in g.out_neighbors(v):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen == g.vertices


def weighted_k_itree(q: ITreeQuery) -> OutTree | None:
    """Default exact engine: breadth-first state search over rooted subtrees.

    States are (vertex set, internal set) pairs reachable by repeatedly
    attaching a new child; any out-tree with k internal vertices and at most
    k leaves has at most 2k vertices, which bounds the exploration.
    """
    g, r, k = q.g, q.r, q.k
    ids = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(ids)}
    limit = 2 * k
    start = (1 << pos[r], 0)
    pred: dict[tuple[int, int], tuple | None] = {start: None}
    queue = [start]

    def tree_of(state) -> OutTree:
        parent = {}
        while pred[state] is not None:
            prev, par, child = pred[state]
            parent[child] = par
            state = prev
        return OutTree(r, parent)

    head = 0
    while head < len(queue):
        smask, tmask = queue[head]
        head += 1
        if bin(tmask).count("1") == k and bin(smask ^ tmask).count("1") <= k:
            weight = sum(
                (g.weights[ids[i]] for i in range(len(ids)) if tmask >> i & 1),
                Fraction(0),
            )
            if weight >= q.wbound:
                return tree_of((smask, tmask))
        if bin(smask).count("1") >= limit:
            continue
        for p in ids:
            if not smask >> pos[p] & 1:
                continue
            for child in sorted(g.out_neighbors(p)):
                if smask >> pos[child] & 1:
                    continue
                nxt = (smask | 1 << pos[child], tmask | 1 << pos[p])
                if nxt not in pred:
                    pred[nxt] = ((smask, tmask), p, child)
                    queue.append(nxt)
    return None


def extend_to_outbranching(g: WeightedDigraph, t: OutTree) -> OutTree:
    """Grow an out-tree into a spanning out-branching; internal vertices of
    the input stay internal.  Attachment follows breadth-first order from
    the root, smallest arc targets first."""
    if not is_out_tree_of(g, t):
        raise ValueError("t is not an out-tree of g")
    if not has_outbranching(g, t.root):
        raise ValueError(f"g has no out-branching rooted at {t.root}")
    parent = dict(t.parent)
    reached = set(t.vertices)
    children: dict[int, list[int]] = {}
    for c, p in t.parent.items():
        children.setdefault(p, []).append(c)
    order = [t.root]
    i = 0
    while i < len(order):
        order.extend(sorted(children.get(order[i], ())))
        i += 1
    queue = order
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        for u in sorted(g.out_neighbors(v)):
            if u not in reached:
                reached.add(u)
                parent[u] = v
                queue.append(u)
    return OutTree(t.root, parent)


def solve_k_wiob(
    g: WeightedDigraph,
    wbound,
    k: int,
    engine: Callable[[ITreeQuery], OutTree | None] | None = None,
    *,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """k-variant weighted max internal out-branching.

    Tries every root with a spanning out-branching and every size k' <= k;
    the returned out-branching may have more than k internal vertices.
    """
    _validate_weights(g)
    wbound = Fraction(wbound)
    stats = stats if stats is not None else SearchStats()
    if engine is None:
        engine = weighted_k_itree
    k = int(k)
    k_eff = k if k < wbound else max(g.n - 1, 1)
    for r in sorted(g.vertices):
        if not has_outbranching(g, r):
            continue
        for kp in range(1, k_eff + 1):
            stats.enter()
            t = engine(ITreeQuery(g, r, wbound, kp))
            if t is None:
                continue
            ob = extend_to_outbranching(g, t)
            internal = ob.internal
            weight = g.weight_of(internal)
            assert weight >= wbound
            return SolveOutcome(frozenset(internal), weight, tree=ob)
    return Nil


@lru_cache(maxsize=4096)
def _max_internal(g: WeightedDigraph) -> int | None:
    """Maximum internal-vertex count over all spanning out-branchings."""
    ids = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(ids)}
    full = (1 << len(ids)) - 1
    best: int | None = None
    for r in sorted(g.vertices):
        if not has_outbranching(g, r):
            continue
        start = (1 << pos[r], 0)
        seen = {start}
        queue = [start]
        head = 0
        while head < len(queue):
            smask, tmask = queue[head]
            head += 1
            if smask == full:
                cnt = bin(tmask).count("1")
                if best is None or cnt > best:
                    best = cnt
                continue
            for p in ids:
                if not smask >> pos[p] & 1:
                    continue
                for child in g.out_neighbors(p):
                    if smask >> pos[child] & 1:
                        continue
                    nxt = (smask | 1 << pos[child], tmask | 1 << pos[p])
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
    return best


def max_internal_at_least(g: WeightedDigraph, c: int, engine=None) -> bool:
    """True iff some spanning out-branching has at least c internal vertices.

    The default engine is an exact memoized enumeration; the cache makes the
    driver's repeated growing queries cheap.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    if engine is not None:
        return engine(g, c)
    best = _max_internal(g)
    return best is not None and best >= c


def _validate_weights(g: WeightedDigraph):
    for v in g.vertices:
        if g.weights[v] < 1:
            raise ValueError(f"input weight of vertex {v} is below 1")
