"""Command-line front end: verify routes, solve queries, generate and bench.

Exit codes: 0 robust / yes, 1 not robust / no, 2 usage, parse or contract
error, 3 enumeration budget exceeded.  Error paths print a single
machine-parsable ``error: <reason>`` line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from pathlib import Path

from . import fes, pareto, tfvs
from .graphio import read_cnf, read_graph, read_mcc, read_query, write_graph
from .oracle import brute_force_solve
from .reductions import (
    GadgetInstance,
    eval_mcpsat,
    mcc_to_mcpsat,
    mcpsat_to_drp,
    threesat_to_mcpsat,
)
from .temporal_graph import (
    INF,
    BudgetError,
    DRPInstance,
    Route,
    TemporalGraph,
    TimeArc,
    ValidationError,
    build_graph,
    underlying_graph,
)
from .verifier import worst_case_table
from .fes import minimum_feedback_edge_set, prune_degree_one

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _resolve_vertex(token: str, g: TemporalGraph, names: dict[int, str]) -> int:
    by_name = {name: vid for vid, name in names.items()}
    if token in by_name:
        return by_name[token]
    try:
        vid = int(token)
    except ValueError:
        raise ValidationError(f"unknown vertex {token!r}") from None
    if not 0 <= vid < g.vertex_count:
        raise ValidationError(f"vertex id {vid} out of range [0, {g.vertex_count})")
    return vid


def _format_route(route: Route, names: dict[int, str]) -> str:
    return " ".join(names.get(v, str(v)) for v in route)


def _format_time(t) -> str:
    return "inf" if t == INF else str(t)


def _parse_spec(spec: str, defaults: dict[str, int]) -> dict[str, int]:
    out = dict(defaults)
    for token in spec.replace(",", " ").split():
        key, _, value = token.partition("=")
        if not value or key not in out:
            raise ValidationError(
                f"bad spec token {token!r}; known keys: {sorted(out)}"
            )
        try:
            out[key] = int(value)
        except ValueError:
            raise ValidationError(f"spec value for {key!r} is not an integer") from None
    return out


def _random_graph(rng: random.Random, n: int, arcs: int, tmax: int, lmax: int) -> TemporalGraph:
    built = []
    for _ in range(arcs):
        u = rng.randrange(n)
        v = rng.randrange(n - 1) if n > 1 else 0
        if n > 1 and v >= u:
            v += 1
        built.append(TimeArc(u, v, rng.randint(0, tmax), rng.randint(0, lmax)))
    return build_graph(n, built)


def _query_args(args, g: TemporalGraph, names: dict[int, str]) -> DRPInstance:
    fields = {}
    if args.query:
        fields.update(read_query(args.query))
    if args.src is not None:
        fields["s"] = args.src
    if args.dst is not None:
        fields["z"] = args.dst
    if args.x is not None:
        fields["x"] = str(args.x)
    if args.delta is not None:
        fields["delta"] = str(args.delta)
    missing = [k for k in ("s", "z", "x", "delta") if k not in fields]
    if missing:
        raise ValidationError(f"missing query fields: {', '.join(missing)}")
    return DRPInstance(
        g,
        _resolve_vertex(fields["s"], g, names),
        _resolve_vertex(fields["z"], g, names),
        int(fields["x"]),
        int(fields["delta"]),
    )


def _cmd_verify(args) -> int:
    g, names = read_graph(args.graph)
    route = tuple(_resolve_vertex(tok, g, names) for tok in args.route)
    table = worst_case_table(g, route, args.x, args.delta)
    if args.table:
        for j, row in enumerate(table.rows):
            label = names.get(route[j], str(route[j]))
            cells = " ".join(_format_time(t) for t in row)
            print(f"prefix {j} ({label}): {cells}")
    if table.rows[-1][args.x] < INF:
        print("robust")
        return EXIT_YES
    broken_j = next(j for j, row in enumerate(table.rows) if row[args.x] == INF)
    broken_y = next(y for y, t in enumerate(table.rows[broken_j]) if t == INF)
    print(f"broken at prefix {broken_j}, budget {broken_y}")
    return EXIT_NO


_SOLVERS = ("pareto", "fes", "tfvs", "brute")


def _run_solver(name: str, inst: DRPInstance) -> tuple[bool, Route | None]:
    if name == "pareto":
        found = pareto.solve(inst)
        return (found is not None), (found[0] if found else None)
    if name == "fes":
        route = fes.solve(inst)
        return (route is not None), route
    if name == "tfvs":
        return tfvs.solve(inst)
    if name == "brute":
        route = brute_force_solve(inst)
        return (route is not None), route
    raise ValidationError(f"unknown algorithm {name!r}")


def _cmd_solve(args) -> int:
    g, names = read_graph(args.graph)
    inst = _query_args(args, g, names)

    if args.all_check:
        answers: dict[str, bool] = {}
        witness: Route | None = None
        for name in _SOLVERS:
            try:
                yes, route = _run_solver(name, inst)
            except BudgetError:
                continue  # not applicable at this size
            answers[name] = yes
            if yes and witness is None:
                witness = route
        if len(set(answers.values())) > 1:
            detail = ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(answers.items()))
            print(f"error: solver disagreement: {detail}", file=sys.stderr)
            return EXIT_USAGE
        if answers and next(iter(answers.values())):
            print(_format_route(witness, names))
            return EXIT_YES
        print("no robust route")
        return EXIT_NO

    algo = args.algo
    if algo is None:
        pruned = prune_degree_one(underlying_graph(g), inst.s, inst.z)
        algo = "fes" if len(minimum_feedback_edge_set(pruned)) <= args.fes_threshold else "pareto"
    yes, route = _run_solver(algo, inst)
    if yes:
        print(_format_route(route, names))
        return EXIT_YES
    print("no robust route")
    return EXIT_NO


def _exhaustive_expected(mcp) -> bool | None:
    total = 1
    for size in mcp.sizes:
        total *= size
    if total > 10**6:
        return None
    return any(
        eval_mcpsat(mcp, choice)
        for choice in product(*(range(1, size + 1) for size in mcp.sizes))
    )


def _write_generated(out: str, gadget: GadgetInstance, source: str, expected: bool | None) -> None:
    g = gadget.drp.graph
    write_graph(out, g, names=None)
    meta = {
        "source": source,
        "s": gadget.drp.s,
        "z": gadget.drp.z,
        "x": gadget.drp.x,
        "delta": gadget.drp.delta,
        "expected": expected,
        "layout": list(gadget.layout),
        "provenance": {str(k): v for k, v in sorted(gadget.provenance.items())},
    }
    Path(out + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _cmd_generate(args) -> int:
    if args.from_cnf:
        mcp = threesat_to_mcpsat(read_cnf(args.from_cnf))
        gadget = mcpsat_to_drp(mcp)
        _write_generated(args.out, gadget, "cnf", _exhaustive_expected(mcp))
    elif args.from_mcc:
        mcp = mcc_to_mcpsat(read_mcc(args.from_mcc))
        gadget = mcpsat_to_drp(mcp)
        _write_generated(args.out, gadget, "mcc", _exhaustive_expected(mcp))
    else:
        spec = _parse_spec(
            args.random,
            {"n": 10, "arcs": 30, "tmax": 20, "lmax": 3, "x": 1, "delta": 1, "seed": 0},
        )
        rng = random.Random(spec["seed"])
        g = _random_graph(rng, spec["n"], spec["arcs"], spec["tmax"], spec["lmax"])
        write_graph(args.out, g)
        meta = {
            "source": "random",
            "s": 0,
            "z": spec["n"] - 1,
            "x": spec["x"],
            "delta": spec["delta"],
            "expected": None,
            "layout": None,
            "provenance": None,
        }
        Path(args.out + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    print(f"wrote {args.out} and {args.out}.meta.json")
    return EXIT_YES


def _bench_one(name: str, inst: DRPInstance) -> tuple[str, int]:
    start = time.perf_counter()
    try:
        yes, _ = _run_solver(name, inst)
        answer = "yes" if yes else "no"
    except BudgetError:
        answer = "budget"
    micros = int((time.perf_counter() - start) * 1_000_000)
    return answer, micros


def _cmd_bench(args) -> int:
    spec = _parse_spec(
        args.random,
        {"count": 10, "n": 7, "arcs": 14, "tmax": 12, "lmax": 3, "x": 1, "delta": 2, "seed": 0},
    )
    seed = args.seed if args.seed is not None else spec["seed"]
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in _SOLVERS:
            raise ValidationError(f"unknown algorithm {a!r}")
    instances = []
    for i in range(spec["count"]):
        rng = random.Random((seed, i))
        g = _random_graph(rng, spec["n"], spec["arcs"], spec["tmax"], spec["lmax"])
        instances.append(DRPInstance(g, 0, spec["n"] - 1, spec["x"], spec["delta"]))

    jobs = [(i, algo) for i in range(len(instances)) for algo in algos]

    def run(job: tuple[int, str]):
        i, algo = job
        return _bench_one(algo, instances[i])

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(run, jobs))
    else:
        outcomes = [run(job) for job in jobs]

    rows = [
        (
            algo,
            instances[i].graph.vertex_count,
            len(instances[i].graph.arcs),
            instances[i].x,
            instances[i].delta,
            answer,
            micros,
        )
        for (i, algo), (answer, micros) in zip(jobs, outcomes)
    ]

    header = ("algo", "n", "m", "x", "delta", "answer", "micros")
    widths = [max(len(str(cell)) for cell in [head, *[r[k] for r in rows]]) for k, head in enumerate(header)]
    print("  ".join(head.ljust(w) for head, w in zip(header, widths)))
    for row in rows:
        print("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)))

    target = Path(args.out) if args.out else None
    if target is not None:
        with target.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    return EXIT_YES


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delayrobust",
        description="Verify and find delay-robust routes in temporal graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="check whether a given route survives delays")
    p_verify.add_argument("graph", help="temporal graph file")
    p_verify.add_argument("--route", nargs="+", required=True, help="vertex ids or names")
    p_verify.add_argument("--x", type=int, required=True, help="number of delays")
    p_verify.add_argument("--delta", type=int, required=True, help="delay magnitude")
    p_verify.add_argument("--table", action="store_true", help="print the worst-case table")
    p_verify.set_defaults(func=_cmd_verify)

    p_solve = sub.add_parser("solve", help="search for a delay-robust route")
    p_solve.add_argument("graph", help="temporal graph file")
    p_solve.add_argument("--from", dest="src", help="source vertex (id or name)")
    p_solve.add_argument("--to", dest="dst", help="target vertex (id or name)")
    p_solve.add_argument("--x", type=int, help="number of delays")
    p_solve.add_argument("--delta", type=int, help="delay magnitude")
    p_solve.add_argument("--query", help="query file with 'key value' lines")
    p_solve.add_argument("--algo", choices=_SOLVERS, help="solver (default: auto)")
    p_solve.add_argument(
        "--all-check", action="store_true",
        help="run every applicable solver and fail on disagreement",
    )
    p_solve.add_argument(
        "--fes-threshold", type=int, default=12,
        help="auto-pick the feedback-edge solver up to this feedback edge number",
    )
    p_solve.set_defaults(func=_cmd_solve)

    p_gen = sub.add_parser("generate", help="produce a graph file plus metadata sidecar")
    src = p_gen.add_mutually_exclusive_group(required=True)
    src.add_argument("--from-cnf", help="DIMACS CNF input")
    src.add_argument("--from-mcc", help="colored-graph input")
    src.add_argument("--random", help="spec like 'n=20 arcs=60 seed=7'")
    p_gen.add_argument("out", help="output graph path (sidecar gets .meta.json)")
    p_gen.set_defaults(func=_cmd_generate)

    p_bench = sub.add_parser("bench", help="time the solvers on a random suite")
    p_bench.add_argument(
        "--random", default="",
        help="suite spec like 'count=10 n=7 arcs=14 x=1 delta=2 seed=3'",
    )
    p_bench.add_argument("--algos", default="pareto,fes", help="comma-separated solvers")
    p_bench.add_argument("--out", help="CSV output path")
    p_bench.add_argument("--jobs", type=int, default=1, help="parallel instances")
    p_bench.add_argument("--seed", type=int, help="override the suite seed")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
