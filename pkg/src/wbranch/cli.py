"""Command-line front end.

Exit codes: 0 when a solution was found, 1 for nil, 2 for errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from wbranch import oracles, w3hs, weds, wiob, wvc
from wbranch.analysis import branching_root
from wbranch.framework import solve_weighted, solve_wiob_driver
from wbranch.instances import (
    Instance,
    ParseError,
    format_weight,
    gen_cvcb_reduction,
    gen_random,
    parse_instance,
    parse_weight,
    serialize_instance,
    serialize_result,
)
from wbranch.outcome import SearchStats

EXIT_SOLVED = 0
EXIT_NIL = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wbranch",
        description="Exact solvers for weighted covering and branching problems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("problem", choices=("wvc", "w3hs", "weds", "wiob"))
    p_solve.add_argument("--input", required=True, help="instance file path")
    p_solve.add_argument("--wbound", required=True, help="weight bound (int or p/q)")
    p_solve.add_argument(
        "--solver",
        choices=("search", "star", "memo", "baseline"),
        default="search",
    )
    p_solve.add_argument(
        "--stats", action="store_true", help="include node counts and rule firings"
    )

    p_gen = sub.add_parser("gen", help="generate an instance")
    gen_sub = p_gen.add_subparsers(dest="generator", required=True)
    p_rand = gen_sub.add_parser("random", help="seeded random instance")
    p_rand.add_argument("--problem", choices=("wvc", "w3hs", "weds", "wiob"), required=True)
    p_rand.add_argument("--n", type=int, required=True)
    p_rand.add_argument("--density", type=float, required=True)
    p_rand.add_argument("--weights", default="1:10", help="LO:HI integer weight range")
    p_rand.add_argument("--seed", type=int, default=0)
    p_rand.add_argument("--out", help="write to file instead of stdout")
    p_cvcb = gen_sub.add_parser(
        "cvcb", help="constrained bipartite cover rewritten as restricted k-WVC"
    )
    p_cvcb.add_argument("--left", type=int, required=True, help="size of the left side")
    p_cvcb.add_argument("--right", type=int, required=True, help="size of the right side")
    p_cvcb.add_argument(
        "--edges", required=True, help="comma-separated u-v pairs, e.g. 1-3,2-4"
    )
    p_cvcb.add_argument("--kl", type=int, required=True)
    p_cvcb.add_argument("--kr", type=int, required=True)
    p_cvcb.add_argument("--out", help="write to file instead of stdout")

    p_analyze = sub.add_parser("analyze", help="branching-vector analysis")
    an_sub = p_analyze.add_subparsers(dest="analysis", required=True)
    p_root = an_sub.add_parser("root", help="root of a branching vector")
    p_root.add_argument("vector", help="comma-separated decreases, e.g. 1,4")
    p_root.add_argument("--tol", default="1/1000000000")

    p_report = sub.add_parser("report", help="empirical reports with figures")
    rep_sub = p_report.add_subparsers(dest="report_kind", required=True)
    p_growth = rep_sub.add_parser("growth", help="search-tree growth experiment")
    p_growth.add_argument("--kmin", type=int, default=6)
    p_growth.add_argument("--kmax", type=int, default=18)
    p_growth.add_argument("--samples", type=int, default=3)
    p_growth.add_argument("--seed", type=int, default=1)
    p_growth.add_argument("--bound", type=int, default=10, help="component bound")
    p_growth.add_argument("--outdir", required=True)
    return parser


def _solve_dispatch(inst: Instance, wbound: Fraction, solver: str, stats: SearchStats):
    data = inst.data
    problem = inst.problem
    if problem == "wvc":
        if solver == "search":
            return solve_weighted(
                data,
                wbound,
                lambda g, W, k: wvc.solve_k_wvc(g, W, k, stats=stats),
                max_size_m=data.n,
            )
        if solver == "memo":
            return solve_weighted(
                data,
                wbound,
                lambda g, W, k: wvc.k_wvc_via_memo(g, W, k, stats=stats),
                max_size_m=data.n,
            )
        if solver == "baseline":
            return solve_weighted(
                data,
                wbound,
                lambda g, W, k: oracles.baseline_alg3(g, W, k),
                max_size_m=data.n,
            )
        mvc = wvc.min_unweighted_vc(data)
        return wvc.solve_wvc_star(data, wbound, mvc, stats=stats)
    if problem == "w3hs":
        if solver == "search":
            return solve_weighted(
                data,
                wbound,
                lambda h, W, k: w3hs.solve_k_w3hs(h, W, k, stats=stats),
                max_size_m=data.n,
            )
        if solver == "star":
            return solve_weighted(
                data,
                wbound,
                lambda h, W, k: w3hs.solve_w3hs_star(h, W, k, stats=stats),
                max_size_m=data.n,
            )
        raise ValueError(f"solver {solver!r} is not available for w3hs")
    if problem == "weds":
        if solver == "search":
            return solve_weighted(
                data,
                wbound,
                lambda g, W, k: weds.solve_k_weds(g, W, k, stats=stats),
                max_size_m=len(data.edge_weights),
            )
        if solver == "star":
            return weds.solve_weds_by_t(data, wbound, stats=stats)
        raise ValueError(f"solver {solver!r} is not available for weds")
    if problem == "wiob":
        if solver == "search":
            return solve_wiob_driver(data, wbound, stats=stats)
        raise ValueError(f"solver {solver!r} is not available for wiob")
    raise ValueError(f"unknown problem {problem!r}")


def cmd_solve(args) -> int:
    with open(args.input) as fh:
        text = fh.read()
    inst = parse_instance(text)
    if inst.problem != args.problem:
        raise ValueError(
            f"instance file is for {inst.problem!r}, not {args.problem!r}"
        )
    wbound = parse_weight(args.wbound)
    stats = SearchStats()
    outcome = _solve_dispatch(inst, wbound, args.solver, stats)
    record = serialize_result(outcome, inst.problem, stats if args.stats else None)
    record["solver"] = args.solver
    record["wbound"] = format_weight(wbound)
    print(json.dumps(record, indent=2))
    return EXIT_SOLVED if not outcome.is_nil else EXIT_NIL


def cmd_gen(args) -> int:
    if args.generator == "random":
        lo, hi = args.weights.split(":")
        inst = gen_random(
            args.problem, args.n, args.density, (int(lo), int(hi)), args.seed
        )
        text = serialize_instance(inst)
        header = (
            f"c random {args.problem} n={args.n} density={args.density}"
            f" weights={args.weights} seed={args.seed}\n"
        )
        text = header + text
    else:
        left = list(range(1, args.left + 1))
        right = list(range(args.left + 1, args.left + args.right + 1))
        edges = []
        if args.edges.strip():
            for token in args.edges.split(","):
                u, v = token.split("-")
                edges.append((int(u), int(v)))
        red = gen_cvcb_reduction(left, right, edges, args.kl, args.kr)
        text = (
            f"c cvcb reduction kl={args.kl} kr={args.kr}\n"
            f"c wprime {format_weight(red.wprime)}\n"
            f"c kprime {red.kprime}\n"
        ) + serialize_instance(Instance("wvc", red.graph))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_SOLVED


def cmd_analyze(args) -> int:
    vector = [parse_weight(tok) for tok in args.vector.split(",")]
    root = branching_root(vector, parse_weight(args.tol))
    print(f"{float(root):.6f}")
    return EXIT_SOLVED


def cmd_report(args) -> int:
    from wbranch.report import run_growth_experiment, write_growth_report

    rows = run_growth_experiment(
        kmin=args.kmin,
        kmax=args.kmax,
        samples=args.samples,
        seed=args.seed,
        component_bound=args.bound,
    )
    paths = write_growth_report(rows, args.outdir)
    print(json.dumps({"rows": len(rows), **paths}, indent=2))
    return EXIT_SOLVED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "report":
            return cmd_report(args)
        parser.error(f"unknown command {args.command!r}")
    except (OSError, ValueError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
