"""Command line: ``analyze``, ``family`` and ``suite``.

Exit codes: 0 identifiable / suite passed, 1 unidentifiable / suite
mismatch, 2 any error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Sequence

from . import report
from .families import KINDS, Family, build
from .ident import DEFAULT_BOUND, DEFAULT_SEED, DEFAULT_TRIALS, analyze
from .model import ModelError, ModelSpec, dumps_model, load_model, save_model
from .poly import StructuralError
from .suites import SUITES, format_suite, run_suite

EXIT_OK, EXIT_UNIDENTIFIABLE, EXIT_ERROR = 0, 1, 2


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                   help="sample rate constants from 1..BOUND")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock time (makes output non-reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compident",
        description="Generic local identifiability of linear compartmental models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a model JSON file")
    p.add_argument("path")
    _add_analysis_flags(p)

    p = sub.add_parser("family", help="generate a family model, optionally analyze it")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--in", dest="inputs", type=_int_list, default=[1])
    p.add_argument("--out", dest="outputs", type=_int_list, default=[1])
    p.add_argument("--leak", dest="leaks", type=_int_list, default=[])
    p.add_argument("--add-incoming", type=_int_list, default=[])
    p.add_argument("--add-outgoing", type=_int_list, default=[])
    p.add_argument("--emit", help="write the model JSON to this file")
    p.add_argument("--analyze", action="store_true")
    _add_analysis_flags(p)

    p = sub.add_parser("suite", help="run a theorem sweep")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def _emit_analysis(m: ModelSpec, args) -> int:
    start = time.perf_counter()
    a = analyze(m, args.trials, args.seed, args.bound)
    elapsed = time.perf_counter() - start if args.timing else None
    render = report.to_json if args.format == "json" else report.to_text
    sys.stdout.write(render(a, args.bound, elapsed))
    return EXIT_OK if a.verdict.identifiable else EXIT_UNIDENTIFIABLE


def cmd_analyze(args) -> int:
    return _emit_analysis(load_model(args.path), args)


def cmd_family(args) -> int:
    f = Family(args.kind, args.n, tuple(args.inputs), tuple(args.outputs), tuple(args.leaks),
               tuple(args.add_incoming), tuple(args.add_outgoing))
    m = build(f)
    if args.emit:
        save_model(m, args.emit)
    if args.analyze:
        return _emit_analysis(m, args)
    if not args.emit:
        sys.stdout.write(dumps_model(m) + "\n")
    return EXIT_OK


def cmd_suite(args) -> int:
    results = run_suite(args.name, args.max_n, args.trials, args.seed, args.jobs)
    sys.stdout.write(format_suite(args.name, results, args.max_n, args.trials, args.seed))
    failed = any(r.expected is not None and not r.ok for r in results)
    return EXIT_UNIDENTIFIABLE if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    handler = {"analyze": cmd_analyze, "family": cmd_family, "suite": cmd_suite}[args.command]
    try:
        return handler(args)
    except (ModelError, StructuralError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
