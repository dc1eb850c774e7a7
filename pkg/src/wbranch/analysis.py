"""Branching-vector root computation and the two non-standard measures.

These utilities back the analysis-side tests: every branching rule in the
solvers declares a vector of per-branch parameter decreases, and its root
bounds the growth of the search tree.  Roots are found by bisection on the
monotone characteristic function, which is robust for arbitrary positive
rational decreases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from wbranch.graphs import WeightedGraph, WeightedHypergraph

DEFAULT_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class BranchingVector:
    """Per-branch decreases (b1..bl) of a branching rule, all positive."""

    decreases: tuple[Fraction, ...]

    def __init__(self, decreases: Iterable):
        ds = tuple(Fraction(d) for d in decreases)
        if not ds:
            raise ValueError("branching vector needs at least one entry")
        if any(d <= 0 for d in ds):
            raise ValueError(f"all decreases must be positive, got {ds}")
        object.__setattr__(self, "decreases", ds)

    def __len__(self) -> int:
        return len(self.decreases)


@dataclass(frozen=True)
class MeasureParams:
    """The four alpha constants of the hitting-set measure m(G,k) = k - a(G) + 1."""

    alpha4: Fraction = Fraction(87, 100)
    alpha3: Fraction = Fraction(8, 10)
    alpha2: Fraction = Fraction(55, 100)
    alpha1: Fraction = Fraction(35, 100)

    def __post_init__(self):
        if not 0 < self.alpha1 < self.alpha2 < self.alpha3 < self.alpha4 < 1:
            raise ValueError("alpha constants must satisfy 0 < a1 < a2 < a3 < a4 < 1")


DEFAULT_MEASURE = MeasureParams()


def _characteristic(vec: Sequence[Fraction], x: float) -> float:
    # sum x^-bi - 1: strictly decreasing in x on (0, inf), root > 1 for l >= 2
    return math.fsum(x ** -float(b) for b in vec) - 1.0


def branching_root(vector, tol: Fraction | float = DEFAULT_TOL) -> Fraction:
    """Positive real root of the branching vector's characteristic equation.

    Returns a rational approximation within ``tol`` of the unique root of
    x^(b*) = sum_i x^(b* - bi).  A single-branch vector has root 1.
    """
    if isinstance(vector, BranchingVector):
        vec = vector.decreases
    else:
        vec = BranchingVector(vector).decreases
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if len(vec) == 1:
        return Fraction(1)
    lo, hi = 1.0, 2.0
    while _characteristic(vec, hi) > 0:
        hi *= 2.0
    while Fraction(hi) - Fraction(lo) > tol:
        mid = (lo + hi) / 2.0
        if _characteristic(vec, mid) > 0:
            lo = mid
        else:
            hi = mid
    return Fraction((lo + hi) / 2.0).limit_denominator(10**15)


def alpha_measure(
    h: WeightedHypergraph, params: MeasureParams = DEFAULT_MEASURE
) -> Fraction:
    """The five-case alpha(G) value driven by the hypergraph's 2-edges."""
    twos = h.edges_of_size(2)
    if len(twos) >= 4:
        return params.alpha4
    if len(twos) == 3:
        common = twos[0] & twos[1] & twos[2]
        if not common:
            return params.alpha3
        return params.alpha2
    if len(twos) == 2:
        return params.alpha2
    if len(twos) == 1:
        return params.alpha1
    return Fraction(0)


def mc_measure(g: WeightedGraph, u: Iterable[int]) -> int:
    """|U| minus the number of singleton components of G[U]."""
    u = frozenset(u)
    if not u <= g.vertices:
        raise ValueError("u must be a subset of the graph's vertices")
    sub = g.induced(u)
    singles = sum(1 for comp in sub.components() if len(comp) == 1)
    return len(u) - singles


def measured_vector(
    raw: Sequence, params: MeasureParams = DEFAULT_MEASURE
) -> BranchingVector:
    """Build a vector whose entries may reference the alpha constants.

    Entries are either numbers or strings over {number, a1..a4, +, -},
    e.g. ``"1-a4+a3"``; used by the rule tables in the analysis tests.
    """
    names = {
        "a1": params.alpha1,
        "a2": params.alpha2,
        "a3": params.alpha3,
        "a4": params.alpha4,
    }
    out = []
    for entry in raw:
        if isinstance(entry, str):
            total = Fraction(0)
            for sign, term in _signed_terms(entry):
                value = names.get(term)
                if value is None:
                    value = Fraction(term)
                total += sign * value
            out.append(total)
        else:
            out.append(Fraction(entry))
    return BranchingVector(out)


def _signed_terms(expr: str):
    expr = expr.replace(" ", "")
    sign = 1
    term = ""
    for ch in expr:
        if ch in "+-":
            if term:
                yield sign, term
            sign = 1 if ch == "+" else -1
            term = ""
        else:
            term += ch
    if term:
        yield sign, term
