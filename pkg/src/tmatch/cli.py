"""``tm``: solve, verify and benchmark Delta-temporal matching instances.

Exit codes: 0 ok (or "yes"), 1 "no" or invalid matching, 2 input error,
3 a size guard or budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bench import SUITES, run_suite, write_csv
from .cover import DEFAULT_BUDGET, CoverBudgetExceeded, sliding_nu, window_nu
from .dp import solve
from .oracle import OracleBudget, OracleBudgetExceeded, brute_force, random_instance
from .representative import RepGuardError
from .temporal import (
    Matching,
    ParseError,
    TemporalGraph,
    TimeEdge,
    first_violation,
    format_instance,
    format_matching,
    pad_lifetime,
    parse_instance,
    parse_matching,
)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_graph(path: str) -> TemporalGraph:
    try:
        return parse_instance(_read_text(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_matching(path: str) -> Matching:
    """Accepts the text format (with an optional yes/no line) or ``solve --json`` output."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            rows = json.loads(text)["matching"]
            return tuple(sorted(TimeEdge.of(int(u), int(w), int(t)) for t, u, w in rows))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"{path}: not a solve report ({exc})") from None
    lines = [ln for ln in text.splitlines() if ln.strip() not in ("yes", "no")]
    try:
        return parse_matching("\n".join(lines))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def cmd_solve(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    log = None
    if args.trace:
        trace = open(args.trace, "w", encoding="utf-8")
        log = lambda rec: print(json.dumps(rec), file=trace, flush=True)  # noqa: E731
    try:
        report = solve(g, args.delta, args.k, strict_nu=args.strict_nu, budget=args.budget, window_log=log)
    finally:
        if args.trace:
            trace.close()
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        if args.k is not None:
            print("yes" if report.decision else "no")
        sys.stdout.write(format_matching(report.matching))
        print(
            f"# delta {report.delta} (effective {report.effective_delta}), nu_hat {report.nu_hat}, "
            f"{len(report.windows)} windows, {report.ms['total']:.1f} ms",
            file=sys.stderr,
        )
    return EXIT_NO if report.decision is False else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    m = _load_matching(args.matching)
    bad = first_violation(g, m, args.delta)
    if bad is None:
        print(f"valid: {len(m)} time edges")
        return EXIT_OK
    a, b = bad
    if b is None:
        print(f"invalid: time edge {a.t} {a.u} {a.w} is not in the graph")
    else:
        print(f"invalid: {a.t} {a.u} {a.w} and {b.t} {b.u} {b.w} are not {args.delta}-independent")
    return EXIT_NO


def cmd_nu(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    delta = min(args.delta, g.lifetime)
    padded = pad_lifetime(g, delta)
    bound = window_nu(padded, delta, args.budget)
    print(f"nu_hat {bound.nu_hat}")
    print("windows " + " ".join(map(str, bound.per_window)))
    if args.strict:
        print(f"nu {sliding_nu(padded, delta, args.budget)}")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.file)
    size, witness = brute_force(g, args.delta, OracleBudget(args.max_edges, args.max_nodes))
    sys.stdout.write(format_matching(witness))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if not 0.0 <= args.p <= 1.0:
        raise InputError("--p must lie in [0, 1]")
    g = random_instance(args.seed, args.n, args.tau, args.delta, args.p)
    sys.stdout.write(f"# seed {args.seed} n {args.n} tau {args.tau} delta {args.delta} p {args.p}\n")
    sys.stdout.write(format_instance(g))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    records = run_suite(args.suite, args.seed, args.workers, args.repeats)
    if args.out in (None, "-"):
        write_csv(records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            count = write_csv(records, fh)
        print(f"wrote {count} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "solve",
        help="maximum Delta-temporal matching",
        description="Delta larger than the lifetime is clamped to the lifetime; "
        "the lifetime is then padded with empty layers to a multiple of Delta.",
    )
    p.add_argument("file", help="instance file ('-' for stdin)")
    p.add_argument("--delta", type=_positive, required=True)
    p.add_argument("--k", type=int, help="decision mode: answer yes iff the optimum is >= K")
    p.add_argument("--json", action="store_true", help="print the full report as JSON")
    p.add_argument("--strict-nu", action="store_true", help="use the sliding-window cover number")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest cover number tried")
    p.add_argument("--trace", metavar="FILE", help="write one JSON line per window")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a matching against an instance")
    p.add_argument("file")
    p.add_argument("matching", help="matching file (text or solve --json output)")
    p.add_argument("--delta", type=_positive, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("nu", help="per-window vertex cover numbers")
    p.add_argument("file")
    p.add_argument("--delta", type=_positive, required=True)
    p.add_argument("--strict", action="store_true", help="also print the sliding-window value")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_nu)

    p = sub.add_parser("oracle", help="exhaustive search (small instances only)")
    p.add_argument("file")
    p.add_argument("--delta", type=_positive, required=True)
    p.add_argument("--max-edges", type=int, default=OracleBudget.max_time_edges)
    p.add_argument("--max-nodes", type=int, default=OracleBudget.max_nodes)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="random instance on stdout")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", type=_positive, required=True)
    p.add_argument("--delta", type=_positive, default=1)
    p.add_argument("--p", type=float, default=0.3, help="edge probability")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="benchmark suite as CSV")
    p.add_argument("--suite", choices=SUITES, default="linear")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--workers", type=int, help="process pool size (TM_THREADS overrides; default 1)")
    p.add_argument("--repeats", type=_positive, default=3, help="instances per size")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RepGuardError, CoverBudgetExceeded, OracleBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
