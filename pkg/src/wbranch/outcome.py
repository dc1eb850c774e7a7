"""Solve outcomes and search statistics shared by all solvers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class SolveOutcome:
    """Result of a solve: either nil or a solution set with its exact weight.

    ``solution`` holds vertex ids (or canonical edge pairs for edge dominating
    set).  For out-branching solves ``tree`` additionally carries the spanning
    tree whose internal vertices form ``solution``.
    """

    solution: frozenset | None
    total_weight: Fraction | None
    achieved_k: int | None = None
    tree: Any = None

    @property
    def is_nil(self) -> bool:
        return self.solution is None

    def __bool__(self) -> bool:
        return not self.is_nil


Nil = SolveOutcome(solution=None, total_weight=None)


@dataclass
class SearchStats:
    """Mutable per-solve counters: search-tree nodes and rule firings."""

    nodes: int = 0
    memo_hits: int = 0
    rule_hits: Counter = field(default_factory=Counter)

    def enter(self) -> None:
        self.nodes += 1

    def fired(self, rule: str) -> None:
        self.rule_hits[rule] += 1

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "memo_hits": self.memo_hits,
            "rules": dict(sorted(self.rule_hits.items())),
        }
