"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, closed_forms
from .engine import execute, strategy_from_dict, strategy_to_dict
from .errors import BudgetExceededError, FaultwalkError
from .game import DEFAULT_GAME_BUDGET, minimax_lower_bound
from .graph import (
    EMPTY,
    build_complete,
    build_hypercube,
    build_ring,
    build_torus,
    parse_faults,
    parse_graph,
    ring_scenario,
    serialize_graph,
)
from .opt import opt_covering_walk, opt_ring
from .overhead import (
    DEFAULT_EDGE_BUDGET,
    DEFAULT_ORACLE_BUDGET,
    ExplicitList,
    FullPowerset,
    RingScenarios,
    default_workers,
    overhead,
    ratio,
    ratio_dict,
    ratio_report,
)
from .tables import approx, render
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

HARD_CAPS = {"edge_budget": 26, "oracle_budget": 22, "game_budget": 40}


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or an integer, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _read(path: str) -> str:
    return Path(path).read_text()


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_strategy(text: str):
    if Path(text).is_file():
        text = _read(text)
    text = text.strip()
    data = json.loads(text) if text.startswith("{") else text
    return strategy_from_dict(data)


def _progress(done: int, total: int):
    if total >= 10_000 and (done == total or done % max(total // 10, 1) < 4096):
        print(f"progress: {done}/{total} configurations", file=sys.stderr, flush=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faultwalk",
        description="Exploration of port-labeled graphs with faulty edges: exact overheads.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def outputs(p, formats=True):
        p.add_argument("--out", help="write results here instead of stdout")
        if formats:
            p.add_argument("--format", choices=("json", "csv", "md"), default="md")

    def budgets(p, *names):
        if "edge" in names:
            p.add_argument("--edge-budget", type=int, default=DEFAULT_EDGE_BUDGET,
                           help="max edges for powerset enumeration")
        if "oracle" in names:
            p.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET,
                           help="max component size for the exact optimum search")
        if "game" in names:
            p.add_argument("--game-budget", type=int, default=DEFAULT_GAME_BUDGET,
                           help="max ring size for the minimax game")

    p = sub.add_parser("generate", help="write a standard Hamiltonian graph as JSON")
    p.add_argument("kind", choices=("ring", "complete", "hypercube", "torus"))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    outputs(p, formats=False)

    p = sub.add_parser("explore", help="run one strategy on one fault configuration")
    p.add_argument("--graph", required=True)
    p.add_argument("--faults")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--strategy", required=True, help="JSON object, kind name, or path")
    budgets(p, "oracle")
    outputs(p, formats=False)

    p = sub.add_parser("overhead", help="worst-case cost/opt over a fault family")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--family", choices=("powerset", "ring", "list"))
    p.add_argument("--faults", action="append", default=[],
                   help="fault configuration file (repeat for --family list)")
    p.add_argument("--per-config", action="store_true")
    p.add_argument("--workers", type=int, default=default_workers())
    budgets(p, "edge", "oracle")
    outputs(p)
    p.set_defaults(format="json")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n", type=parse_range, required=True)
    p.add_argument("--workers", type=int, default=default_workers())
    budgets(p, "edge", "oracle", "game")
    outputs(p)

    p = sub.add_parser("lowerbound", help="minimax lower bound over regular ring strategies")
    p.add_argument("--n", type=parse_range, required=True)
    budgets(p, "game")
    outputs(p)

    p = sub.add_parser("ratios", help="DFS bound over the ring lower bound, per n")
    p.add_argument("--n", type=parse_range, required=True)
    outputs(p)
    return parser


def _check_budgets(args):
    for name, cap in HARD_CAPS.items():
        value = getattr(args, name, None)
        if value is not None and not 1 <= value <= cap:
            raise UsageError(f"--{name.replace('_', '-')} must lie in [1, {cap}], got {value}")


def cmd_generate(args):
    k = args.kind
    need = {"ring": ["n"], "complete": ["n"], "hypercube": ["d"], "torus": ["rows", "cols"]}[k]
    missing = [f"--{x}" for x in need if getattr(args, x) is None]
    if missing:
        raise UsageError(f"generate {k} needs {' '.join(missing)}")
    if k == "ring":
        g = build_ring(args.n)
    elif k == "complete":
        g = build_complete(args.n)
    elif k == "hypercube":
        g = build_hypercube(args.d)
    else:
        g = build_torus(args.rows, args.cols)
    return serialize_graph(g) + "\n", True


def cmd_explore(args):
    g = parse_graph(_read(args.graph))
    f = parse_faults(_read(args.faults), g) if args.faults else EMPTY
    spec = _load_strategy(args.strategy)
    trace = execute(g, f, args.start, spec)
    if g.is_ring:
        opt = opt_ring(g.n, ring_scenario(g, f, args.start))
    else:
        opt = opt_covering_walk(g, f, args.start, budget=args.oracle_budget)
    r = ratio(trace.cost, opt.cost)
    out = {
        "strategy": strategy_to_dict(spec),
        "trace": trace.to_dict(),
        "cost": trace.cost,
        "opt": opt.cost,
        "ratio": ratio_dict(r),
        "ratioText": f"{r.numerator}/{r.denominator}",
    }
    return json.dumps(out, indent=1) + "\n", True


def cmd_overhead(args):
    g = parse_graph(_read(args.graph))
    spec = _load_strategy(args.strategy)
    family_name = args.family or ("ring" if g.is_ring else "powerset")
    if family_name == "list":
        if not args.faults:
            raise UsageError("--family list needs at least one --faults file")
        family = ExplicitList(tuple(parse_faults(_read(p), g) for p in args.faults))
    else:
        if args.faults:
            raise UsageError("--faults is only used with --family list")
        family = FullPowerset() if family_name == "powerset" else RingScenarios()
    rep = overhead(
        g, args.start, spec, family,
        edge_budget=args.edge_budget, oracle_budget=args.oracle_budget,
        keep_configs=args.per_config, workers=args.workers, progress=_progress,
    )
    if args.format == "json":
        return json.dumps(rep.to_dict(), indent=1) + "\n", True
    row = {
        "strategy": json.dumps(strategy_to_dict(spec)),
        "graph": rep.graph,
        "family": rep.family,
        "configurations": rep.configurations,
        "overhead": rep.overhead,
        "approx": approx(rep.overhead),
        "witness": json.dumps([list(e) for e in rep.witness]),
    }
    return render([row], list(row), args.format), True


def cmd_verify(args):
    columns, rows = run_suite(
        args.suite, args.n,
        edge_budget=args.edge_budget, oracle_budget=args.oracle_budget,
        game_budget=args.game_budget, workers=args.workers, progress=_progress,
    )
    ok = all(r["pass"] for r in rows)
    if not ok:
        first = next(r for r in rows if not r["pass"])
        print(f"verification failed at row: {first}", file=sys.stderr)
    return render(rows, columns, args.format), ok


def cmd_lowerbound(args):
    rows = []
    for n in args.n:
        game = minimax_lower_bound(n, budget=args.game_budget)
        closed = closed_forms.lower_bound(n)
        rows.append({"n": n, "minimax": game, "closed_form": closed, "approx": approx(game),
                     "pass": game == closed})
    return render(rows, ["n", "minimax", "closed_form", "approx", "pass"], args.format), all(
        r["pass"] for r in rows
    )


def cmd_ratios(args):
    rows = [
        {"n": r.n, "dfs_bound": r.dfs_bound, "lower_bound": r.lower_bound,
         "quotient": r.quotient, "approx": approx(r.quotient), "pass": r.ok}
        for r in ratio_report(args.n)
    ]
    columns = ["n", "dfs_bound", "lower_bound", "quotient", "approx", "pass"]
    return render(rows, columns, args.format), all(r["pass"] for r in rows)


COMMANDS = {
    "generate": cmd_generate,
    "explore": cmd_explore,
    "overhead": cmd_overhead,
    "verify": cmd_verify,
    "lowerbound": cmd_lowerbound,
    "ratios": cmd_ratios,
}


def _manifest(args, argv, started, out_path) -> dict:
    params = {k: v for k, v in vars(args).items() if k != "func"}
    inputs = {}
    for key in ("graph", "faults", "strategy"):
        val = params.get(key)
        for path in val if isinstance(val, list) else [val]:
            if isinstance(path, str) and os.path.isfile(path):
                inputs[path] = _digest(path)
    if isinstance(params.get("n"), list):
        params["n"] = f"{params['n'][0]}..{params['n'][-1]}"
    return {
        "tool": "faultwalk",
        "version": __version__,
        "argv": argv,
        "parameters": params,
        "inputDigests": inputs,
        "wallTimeSeconds": round(time.perf_counter() - started, 6),
        "results": out_path,
    }


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        _check_budgets(args)
        payload, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FaultwalkError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(payload)
        manifest = _manifest(args, argv, started, args.out)
        Path(args.out + ".manifest.json").write_text(json.dumps(manifest, indent=1) + "\n")
    else:
        sys.stdout.write(payload)
        print(json.dumps(_manifest(args, argv, started, None)), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
