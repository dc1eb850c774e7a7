"""Instance file format, result serialization, and instance generators.

The line-oriented format::

    c free-form comment
    p {wvc|w3hs|weds|wiob} <n> <m>
    v <id> [<weight>]         vertex; weight is an integer or p/q rational
    e <u> <v>                 graph edge (wvc)
    e <u> <v> <weight>        weighted edge (weds)
    h <u> <v> [<r>]           hyperedge on 2 or 3 vertices (w3hs)
    a <u> <v>                 arc (wiob)

Weights default to 1 when omitted.  Results serialize to a JSON record with
``"schema": 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from wbranch.graphs import WeightedDigraph, WeightedGraph, WeightedHypergraph
from wbranch.outcome import SearchStats, SolveOutcome
from wbranch.weds import EdgeWeightedGraph

PROBLEMS = ("wvc", "w3hs", "weds", "wiob")


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Instance:
    problem: str
    data: object

    def weight_of(self, solution):
        return self.data.weight_of(solution)


def parse_weight(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_weight(w: Fraction) -> str:
    w = Fraction(w)
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def parse_instance(text: str) -> Instance:
    problem = None
    n = m = 0
    weights: dict[int, Fraction] = {}
    declared: list[int] = []
    graph_edges: list[tuple[int, int]] = []
    weighted_edges: list[tuple[int, int, Fraction]] = []
    hyperedges: list[tuple[int, ...]] = []
    arcs: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "p":
                if problem is not None:
                    raise ValueError("duplicate problem line")
                if len(parts) != 4 or parts[1] not in PROBLEMS:
                    raise ValueError(f"expected 'p {{{'|'.join(PROBLEMS)}}} n m'")
                problem, n, m = parts[1], int(parts[2]), int(parts[3])
            elif kind == "v":
                if len(parts) not in (2, 3):
                    raise ValueError("expected 'v <id> [<weight>]'")
                vid = int(parts[1])
                declared.append(vid)
                weights[vid] = parse_weight(parts[2]) if len(parts) == 3 else Fraction(1)
            elif kind == "e":
                if problem == "weds":
                    if len(parts) != 4:
                        raise ValueError("weds edges need 'e <u> <v> <weight>'")
                    weighted_edges.append(
                        (int(parts[1]), int(parts[2]), parse_weight(parts[3]))
                    )
                else:
                    if len(parts) != 3:
                        raise ValueError("expected 'e <u> <v>'")
                    graph_edges.append((int(parts[1]), int(parts[2])))
            elif kind == "h":
                if len(parts) not in (3, 4):
                    raise ValueError("expected 'h <u> <v> [<r>]'")
                hyperedges.append(tuple(int(p) for p in parts[1:]))
            elif kind == "a":
                if len(parts) != 3:
                    raise ValueError("expected 'a <u> <v>'")
                arcs.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(f"unknown record type {kind!r}")
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from None
    if problem is None:
        raise ParseError(1, "missing problem line")
    if len(declared) != n:
        raise ParseError(1, f"header declares {n} vertices, found {len(declared)}")
    stray = {
        "wvc": hyperedges or arcs or weighted_edges,
        "w3hs": graph_edges or arcs or weighted_edges,
        "weds": hyperedges or arcs or graph_edges,
        "wiob": hyperedges or graph_edges or weighted_edges,
    }[problem]
    if stray:
        raise ParseError(1, f"record types do not match problem {problem!r}")
    try:
        if problem == "wvc":
            data = WeightedGraph(declared, graph_edges, weights)
            if data.edge_count() != m:
                raise ValueError(f"header declares {m} edges, found {data.edge_count()}")
        elif problem == "w3hs":
            data = WeightedHypergraph(declared, hyperedges, weights)
            if len(data.edges) != m:
                raise ValueError(f"header declares {m} edges, found {len(data.edges)}")
        elif problem == "weds":
            data = EdgeWeightedGraph(declared, weighted_edges)
            if len(data.edge_weights) != m:
                raise ValueError(
                    f"header declares {m} edges, found {len(data.edge_weights)}"
                )
        else:
            data = WeightedDigraph(declared, arcs, weights)
            if len(data.arcs) != m:
                raise ValueError(f"header declares {m} arcs, found {len(data.arcs)}")
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(1, str(exc)) from None
    return Instance(problem, data)


def serialize_instance(inst: Instance) -> str:
    lines = []
    data = inst.data
    if inst.problem == "wvc":
        lines.append(f"p wvc {data.n} {data.edge_count()}")
        for v in data.sorted_vertices():
            lines.append(f"v {v} {format_weight(data.weights[v])}")
        for u, v in data.edges():
            lines.append(f"e {u} {v}")
    elif inst.problem == "w3hs":
        lines.append(f"p w3hs {data.n} {len(data.edges)}")
        for v in sorted(data.vertices):
            lines.append(f"v {v} {format_weight(data.weights[v])}")
        for e in data.sorted_edges():
            lines.append("h " + " ".join(str(v) for v in e))
    elif inst.problem == "weds":
        lines.append(f"p weds {data.n} {len(data.edge_weights)}")
        for v in sorted(data.vertices):
            lines.append(f"v {v}")
        for u, v in data.edges():
            lines.append(f"e {u} {v} {format_weight(data.edge_weights[(u, v)])}")
    elif inst.problem == "wiob":
        lines.append(f"p wiob {data.n} {len(data.arcs)}")
        for v in sorted(data.vertices):
            lines.append(f"v {v} {format_weight(data.weights[v])}")
        for u, v in sorted(data.arcs):
            lines.append(f"a {u} {v}")
    else:
        raise ValueError(f"unknown problem {inst.problem!r}")
    return "\n".join(lines) + "\n"


def serialize_result(
    outcome: SolveOutcome,
    problem: str,
    stats: SearchStats | None = None,
) -> dict:
    """JSON-ready result record (schema 1)."""
    record: dict = {"schema": 1, "problem": problem}
    if outcome.is_nil:
        record["status"] = "nil"
    else:
        record["status"] = "solved"
        if problem == "weds":
            record["solution"] = [list(e) for e in sorted(outcome.solution)]
        else:
            record["solution"] = sorted(outcome.solution)
        record["weight"] = format_weight(outcome.total_weight)
        if outcome.achieved_k is not None:
            record["achieved_k"] = outcome.achieved_k
        if outcome.tree is not None:
            record["arcs"] = [list(a) for a in outcome.tree.arcs()]
            record["root"] = outcome.tree.root
    if stats is not None:
        record["stats"] = stats.as_dict()
    return record


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def gen_random(
    problem: str,
    n: int,
    density: float,
    weight_range: tuple[int, int] = (1, 10),
    seed: int = 0,
) -> Instance:
    """Seeded deterministic generator for all four problems."""
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    rng = random.Random(seed)
    lo, hi = weight_range
    if lo < 1:
        raise ValueError("weights must be at least 1")
    ids = list(range(1, n + 1))
    weights = {v: Fraction(rng.randint(lo, hi)) for v in ids}
    if problem == "wvc":
        edges = [e for e in combinations(ids, 2) if rng.random() < density]
        return Instance("wvc", WeightedGraph(ids, edges, weights))
    if problem == "w3hs":
        triples = list(combinations(ids, 3))
        count = min(len(triples), max(1, round(density * len(triples))))
        edges = rng.sample(triples, count) if triples else []
        return Instance("w3hs", WeightedHypergraph(ids, edges, weights))
    if problem == "weds":
        edge_weights = {
            e: Fraction(rng.randint(lo, hi))
            for e in combinations(ids, 2)
            if rng.random() < density
        }
        return Instance("weds", EdgeWeightedGraph(ids, edge_weights))
    arcs = [
        (u, v) for u in ids for v in ids if u != v and rng.random() < density
    ]
    return Instance("wiob", WeightedDigraph(ids, arcs, weights))


@dataclass(frozen=True)
class CvcbReduction:
    """Bipartite constrained-cover instance rewritten as restricted k-WVC."""

    graph: WeightedGraph
    wprime: Fraction
    kprime: int
    left: frozenset
    right: frozenset
    pendants: dict


def gen_cvcb_reduction(
    left: list[int],
    right: list[int],
    edges: list[tuple[int, int]],
    k_l: int,
    k_r: int,
) -> CvcbReduction:
    """Rewrite constrained bipartite vertex cover as restricted k-WVC.

    Each left vertex gains n^2 pendant neighbors; left vertices weigh n^10,
    everything else 1.  The budgets W' = n^10*kL + kR + n^2*(|L|-kL) and
    k' = kL + kR + n^2*(|L|-kL) make covers of the new instance mirror covers
    of the old one with exactly kL left vertices.
    """
    left_set, right_set = set(left), set(right)
    if left_set & right_set:
        raise ValueError("left and right sides overlap")
    for u, v in edges:
        if not (
            (u in left_set and v in right_set)
            or (v in left_set and u in right_set)
        ):
            raise ValueError(f"edge ({u},{v}) does not cross the bipartition")
    if not 0 <= k_l <= len(left_set) or not 0 <= k_r <= len(right_set):
        raise ValueError("budgets must fit the side sizes")
    n = len(left_set) + len(right_set)
    nsq = n * n
    next_id = max(left_set | right_set, default=0) + 1
    pendants: dict[int, list[int]] = {}
    all_edges = [tuple(e) for e in edges]
    for v in sorted(left_set):
        mine = list(range(next_id, next_id + nsq))
        next_id += nsq
        pendants[v] = mine
        all_edges.extend((v, x) for x in mine)
    vertices = sorted(left_set | right_set) + [
        x for v in sorted(left_set) for x in pendants[v]
    ]
    big = Fraction(n**10)
    weights = {
        v: (big if v in left_set else Fraction(1)) for v in vertices
    }
    wprime = big * k_l + k_r + nsq * (len(left_set) - k_l)
    kprime = k_l + k_r + nsq * (len(left_set) - k_l)
    return CvcbReduction(
        graph=WeightedGraph(vertices, all_edges, weights),
        wprime=wprime,
        kprime=kprime,
        left=frozenset(left_set),
        right=frozenset(right_set),
        pendants=pendants,
    )
