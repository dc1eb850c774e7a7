"""Exact solvers for weighted covering and branching problems.

The library provides bounded-search-tree solvers for four weighted graph
problems (vertex cover, 3-hitting set, edge dominating set, max internal
out-branching), brute-force oracles for differential testing, branching
vector analysis utilities, instance generators, and a command-line front end.
"""

from wbranch.outcome import Nil, SearchStats, SolveOutcome

__all__ = ["Nil", "SearchStats", "SolveOutcome"]

__version__ = "0.1.0"
