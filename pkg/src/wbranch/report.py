"""Empirical search-tree growth reports.

Runs the vertex cover solver on seeded random cubic instances that are
infeasible by construction (so every branch is explored), records the
search-tree node counts per size budget k, and renders the counts next to a
reference growth envelope.  The CSV is the machine-readable output; the PNG
is the same data as a figure.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from wbranch.graphs import WeightedGraph
from wbranch.outcome import SearchStats
from wbranch.wvc import solve_k_wvc

GROWTH_ENVELOPE_BASE = 1.45


@dataclass(frozen=True)
class GrowthRow:
    k: int
    samples: int
    mean_nodes: float
    max_nodes: int


def random_cubic_graph(n: int, rng: random.Random) -> WeightedGraph:
    """Random 3-regular graph on n vertices (n even) by rejection pairing."""
    if n % 2 or n < 4:
        raise ValueError("cubic graphs need an even vertex count >= 4")
    ids = list(range(1, n + 1))
    while True:
        points = [v for v in ids for _ in range(3)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        edges = set()
        ok = True
        for u, v in pairs:
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return WeightedGraph(ids, edges, {v: Fraction(1) for v in ids})


def growth_instance(k: int, rng: random.Random) -> WeightedGraph:
    """Cubic unit-weight graph whose minimum cover exceeds k, so the solver
    at budgets (W=k, k=k) must exhaust its search tree."""
    n = int(2.4 * k)
    if n % 2:
        n += 1
    n = max(n, 8)
    return random_cubic_graph(n, rng)


def run_growth_experiment(
    kmin: int = 6,
    kmax: int = 18,
    samples: int = 3,
    seed: int = 1,
    component_bound: int = 10,
) -> list[GrowthRow]:
    rows = []
    for k in range(kmin, kmax + 1):
        counts = []
        for i in range(samples):
            rng = random.Random((seed, k, i).__hash__())
            g = growth_instance(k, rng)
            stats = SearchStats()
            solve_k_wvc(g, Fraction(k), k, component_bound=component_bound, stats=stats)
            counts.append(stats.nodes)
        rows.append(
            GrowthRow(
                k=k,
                samples=samples,
                mean_nodes=sum(counts) / len(counts),
                max_nodes=max(counts),
            )
        )
    return rows


def fitted_growth_rate(rows: list[GrowthRow]) -> float:
    """Least-squares growth base of mean node counts as a function of k."""
    import math

    ks = [row.k for row in rows]
    logs = [math.log(max(row.mean_nodes, 1.0)) for row in rows]
    n = len(rows)
    mean_k = sum(ks) / n
    mean_log = sum(logs) / n
    num = sum((k - mean_k) * (y - mean_log) for k, y in zip(ks, logs))
    den = sum((k - mean_k) ** 2 for k in ks)
    return math.exp(num / den) if den else 1.0


def within_envelope(rows: list[GrowthRow], base: float = GROWTH_ENVELOPE_BASE) -> bool:
    """Mean node counts grow no faster than base**k: the fitted growth rate
    stays below the base, and so does the endpoint-to-endpoint ratio."""
    if len(rows) < 2:
        return True
    if fitted_growth_rate(rows) > base:
        return False
    first, last = rows[0], rows[-1]
    span = last.k - first.k
    return last.mean_nodes <= max(first.mean_nodes, 1.0) * base**span


def write_growth_report(rows: list[GrowthRow], outdir: str | Path) -> dict:
    """Write growth.csv and growth.png into outdir; returns the file paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / "growth.csv"
    png_path = outdir / "growth.png"
    anchor = rows[0]
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "samples", "mean_nodes", "max_nodes", "envelope"])
        for row in rows:
            env = anchor.mean_nodes * GROWTH_ENVELOPE_BASE ** (row.k - anchor.k)
            writer.writerow(
                [row.k, row.samples, f"{row.mean_nodes:.2f}", row.max_nodes, f"{env:.2f}"]
            )

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = [row.k for row in rows]
    means = [row.mean_nodes for row in rows]
    envelope = [
        anchor.mean_nodes * GROWTH_ENVELOPE_BASE ** (k - anchor.k) for k in ks
    ]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogy(ks, means, marker="o", label="mean search-tree nodes")
    ax.semilogy(
        ks,
        envelope,
        linestyle="--",
        label=f"{GROWTH_ENVELOPE_BASE}^k envelope",
    )
    ax.set_xlabel("size budget k")
    ax.set_ylabel("search-tree nodes")
    ax.set_title("Vertex cover search-tree growth")
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return {"csv": str(csv_path), "png": str(png_path)}
