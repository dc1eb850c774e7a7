"""Iterative driver that turns a k-variant solver into a weight-only solver.

A k-variant solver takes (instance, W, k) and must satisfy two properties:
(i) when a solution of weight at most W (at least W for maximization) and
size at most k exists, it returns a weight-feasible solution, possibly of
size larger than k; (ii) otherwise it returns nil or a weight-feasible
solution.  The driver iterates k upward from 1 until the solver succeeds or
k reaches min(floor(W), m), where m is the problem's maximum solution size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from wbranch.graphs import WeightedDigraph
from wbranch.outcome import Nil, SearchStats, SolveOutcome


class ContractViolation(AssertionError):
    """A solver produced an infeasible or weight-violating solution."""


@dataclass(frozen=True)
class KVariantSolver:
    """A problem tag plus a callable (instance, W, k) -> SolveOutcome."""

    problem: str
    solve: Callable[..., SolveOutcome]


def solve_weighted(
    instance,
    wbound: Fraction,
    solver: KVariantSolver | Callable,
    max_size_m: int,
    checker: Callable | None = None,
) -> SolveOutcome:
    """Run the k-variant solver for k = 1, 2, ... and return the first hit.

    The returned outcome carries the k at which the solver succeeded.  The
    driver recomputes the solution weight from the instance rather than
    trusting the solver, and optionally validates feasibility via ``checker``
    (a callable (instance, solution) -> bool).
    """
    wbound = Fraction(wbound)
    if wbound < 1:
        raise ValueError("weight bound must be at least 1")
    solve = solver.solve if isinstance(solver, KVariantSolver) else solver
    k_max = min(math.floor(wbound), max_size_m)
    for k in range(1, k_max + 1):
        out = solve(instance, wbound, k)
        if out.is_nil:
            continue
        weight = instance.weight_of(out.solution)
        if checker is not None:
            if not checker(instance, out.solution):
                raise ContractViolation(
                    f"solver returned an infeasible solution at k={k}"
                )
            if weight > wbound:
                raise ContractViolation(
                    f"solver exceeded the weight bound at k={k}: {weight} > {wbound}"
                )
        return SolveOutcome(out.solution, weight, achieved_k=k, tree=out.tree)
    return Nil


def solve_wiob_driver(
    g: WeightedDigraph,
    wbound: Fraction,
    engine=None,
    stats: SearchStats | None = None,
) -> SolveOutcome:
    """Weight-driven out-branching driver with the existence pre-check.

    Runs 1-WIOB first; while the answer is nil, it checks whether any
    spanning out-branching with at least k+1 internal vertices exists before
    moving on to k+1.  Once k reaches the weight bound, the k-variant solve
    is the unrestricted problem (all element weights are at least 1, so an
    out-branching with more than W internal vertices is itself
    weight-feasible), making the final answer definitive.
    """
    from wbranch import wiob

    wbound = Fraction(wbound)
    if wbound < 1:
        raise ValueError("weight bound must be at least 1")
    k = 1
    while True:
        out = wiob.solve_k_wiob(g, wbound, k, engine=engine, stats=stats)
        if not out.is_nil:
            return SolveOutcome(
                out.solution, out.total_weight, achieved_k=k, tree=out.tree
            )
        if k >= wbound:
            return Nil
        if not wiob.max_internal_at_least(g, k + 1):
            return Nil
        k += 1
