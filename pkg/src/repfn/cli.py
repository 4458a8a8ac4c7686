"""Command-line front end.

Exit codes: 0 success or verified, 1 a verification found a violated
assertion (or a witness could not be certified), 2 usage or set-spec
error, 3 resource budget exceeded.  Reports go to stdout as exactly one
CSV or JSON document; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify
from .core import DEFAULT_MEMORY_BUDGET, RepKind, batch_table
from .diagram import render_diagram
from .errors import (
    BudgetExceededError,
    EmptySetError,
    InsufficientComplementError,
    ScanBoundExceeded,
    SelfCheckError,
    SetSpecError,
)
from .monotonicity import find_violations, natural_density_estimate
from .pool import DEFAULT_SEED
from .sets import parse_set_spec
from .witnesses import first_r2_decrease_bruteforce, predict_r2_decrease, r3_monotone_greedy_search

DEFAULT_WITNESS_SCAN = 512


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="repfn",
        description="Additive representation functions r1, r2, r3 over decidable integer sets.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="compute r1, r2, r3 on [0, N]")
    _add_set(t)
    t.add_argument("--max", type=int, required=True, metavar="N")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--strategy", choices=("naive", "word", "auto"), default="auto")
    _add_common(t)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("violations", help="list monotonicity failures of one function")
    _add_set(v)
    v.add_argument("--max", type=int, required=True, metavar="N")
    v.add_argument("--kind", choices=("r1", "r2", "r3"), default="r1")
    v.add_argument("--strict", action="store_true", help="report failures of strict increase")
    v.add_argument("--format", choices=("csv", "json"), default="json")
    v.add_argument("--strategy", choices=("naive", "word", "auto"), default="auto")
    _add_common(v)
    v.set_defaults(func=cmd_violations)

    d = sub.add_parser("density", help="exact member count and ratio on [1, N]")
    _add_set(d)
    d.add_argument("--max", type=int, required=True, metavar="N")
    _add_common(d)
    d.set_defaults(func=cmd_density)

    w = sub.add_parser("witness", help="predict and verify an r2 decrease")
    _add_set(w)
    w.add_argument(
        "--max",
        type=int,
        default=DEFAULT_WITNESS_SCAN,
        metavar="N",
        help=f"complement scan bound (default {DEFAULT_WITNESS_SCAN})",
    )
    _add_common(w)
    w.set_defaults(func=cmd_witness)

    r = sub.add_parser("render", help="plot member pairs (a, b) as points (a + b, a)")
    _add_set(r)
    r.add_argument("--max", type=int, required=True, metavar="N", help="largest pair sum shown")
    r.add_argument("--format", choices=("svg", "ascii"), default="svg")
    _add_common(r)
    r.set_defaults(func=cmd_render)

    s = sub.add_parser("search-r3", help="greedy search for exclusions keeping r3 monotone")
    s.add_argument("--max", type=int, required=True, metavar="N")
    s.add_argument("--exclusions", type=int, default=8, help="exclusion budget (default 8)")
    _add_common(s)
    s.set_defaults(func=cmd_search_r3)

    vf = sub.add_parser("verify", help="run a named verification suite")
    vf.add_argument("suite", choices=verify.SUITE_NAMES + ("all",))
    vf.add_argument("--seed", type=int, default=DEFAULT_SEED)
    vf.add_argument(
        "--self-test-corrupt",
        action="store_true",
        help="perturb one computed value per suite; the run must then fail",
    )
    _add_common(vf)
    vf.set_defaults(func=cmd_verify)

    return p


def _add_set(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--set", required=True, metavar="SPEC", help='set-spec, e.g. "complement(finite:2,5)"')


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--budget", type=int, default=DEFAULT_MEMORY_BUDGET, metavar="BYTES")
    sp.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _strategy(name: str) -> str:
    return "word_parallel" if name == "word" else name


def cmd_table(args: argparse.Namespace) -> int:
    a = parse_set_spec(args.set)
    table = batch_table(a, args.max, _strategy(args.strategy), memory_budget=args.budget)
    if args.format == "csv":
        _emit(args, table.to_csv())
    else:
        _emit(args, json.dumps(table.to_json_obj()) + "\n")
    return 0


def cmd_violations(args: argparse.Namespace) -> int:
    a = parse_set_spec(args.set)
    table = batch_table(a, args.max, _strategy(args.strategy), memory_budget=args.budget)
    report = find_violations(table, RepKind(args.kind), args.strict)
    if args.format == "csv":
        _emit(args, report.to_csv())
    else:
        _emit(args, json.dumps(report.to_json_obj()) + "\n")
    return 0


def cmd_density(args: argparse.Namespace) -> int:
    a = parse_set_spec(args.set)
    est = natural_density_estimate(a, args.max)
    obj = {"set": a.spec(), **est.to_json_obj()}
    _emit(args, json.dumps(obj) + "\n")
    return 0


def cmd_witness(args: argparse.Namespace) -> int:
    a = parse_set_spec(args.set)
    w = predict_r2_decrease(a, args.max)
    obj = w.to_json_obj()
    obj["scan_bound"] = args.max
    obj["brute_force_first"] = first_r2_decrease_bruteforce(a, args.max, memory_budget=args.budget)
    _emit(args, json.dumps(obj) + "\n")
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    a = parse_set_spec(args.set)
    _emit(args, render_diagram(a, args.max, args.format, budget=args.budget))
    return 0


def cmd_search_r3(args: argparse.Namespace) -> int:
    result = r3_monotone_greedy_search(args.max, args.exclusions, memory_budget=args.budget)
    obj = {
        "set": result.prefix_set.spec(),
        "max_n": result.max_n,
        "excluded": list(result.excluded),
        "verified": True,
    }
    _emit(args, json.dumps(obj) + "\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    names = "all" if args.suite == "all" else (args.suite,)
    results = verify.run_suites(names, seed=args.seed, corrupt=args.self_test_corrupt)
    payload = [r.to_json_obj() for r in results]
    _emit(args, json.dumps(payload, indent=2) + "\n")
    failed = [r.suite for r in results if not r.passed]
    if failed:
        print(f"failed suites: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SetSpecError as exc:
        print(f"set-spec error: {exc}", file=sys.stderr)
        return 2
    except (EmptySetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceededError, ScanBoundExceeded) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except (InsufficientComplementError, SelfCheckError) as exc:
        print(f"not certified: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
