"""Command-line front end.

Exit codes: 0 success / verified, 1 a claim disagrees with a computation,
2 usage or capacity error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .certificates import certificate_record, check_certificate, formula_value, has_certificate
from .graph import build_flower_snark, copy_weights, export_graph, weight_histogram
from .lp import LP_VARIANTS, export_lp
from .report import build_report
from .solvers import CapacityError, check_capacity, enumerate_valid_sets, solve
from .validators import Variant, validate

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

SOLVE_CHOICES = [v.value for v in Variant if v != Variant.MINIMAL]
SET_CHOICES = [v.value for v in Variant if not v.takes_guards]


class UsageError(Exception):
    pass


def _n(text: str) -> int:
    n = int(text)
    if n < 3:
        raise argparse.ArgumentTypeError("n must be at least 3")
    return n


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def cmd_gen(args) -> int:
    sys.stdout.write(export_graph(build_flower_snark(args.n), args.format))
    return EXIT_OK


def cmd_solve(args) -> int:
    variant = Variant(args.variant)
    g = build_flower_snark(args.n)
    try:
        result = solve(
            g,
            variant,
            long_running=args.long_running,
            workers=args.workers,
            deterministic=args.deterministic,
            prefilter=not args.no_prefilter,
        )
    except CapacityError as exc:
        raise UsageError(str(exc)) from exc
    ok = validate(g, variant, result.witness)
    if args.deterministic:
        # timing goes to stderr so stdout is byte-stable
        print(f"elapsed_ms={result.elapsed * 1000:.3f}", file=sys.stderr)
    payload = result.to_dict(include_timing=not args.deterministic)
    if args.pretty:
        sys.stdout.write(
            f"{variant.value}(J_{args.n}) = {result.optimum}\n"
            f"witness: {' '.join(payload['witness'])}\n"
            f"size {result.proof_bound} refuted; {result.candidates_examined} candidates examined\n"
        )
    else:
        _emit(payload)
    if not ok:
        print("self-check failed: witness does not validate", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_certify(args) -> int:
    if not has_certificate(args.variant, args.n):
        raise UsageError(f"no construction for {args.variant} at n={args.n}; use `solve`")
    size, valid = check_certificate(args.variant, args.n)
    formula = formula_value(args.variant, args.n)
    out = certificate_record(args.variant, args.n)
    out.update(formula=formula, valid=valid)
    if args.pretty:
        sys.stdout.write(
            f"{args.variant} certificate for J_{args.n}: size {size}, formula {formula}, "
            f"{'valid' if valid else 'INVALID'}\n"
        )
    else:
        _emit(out)
    return EXIT_OK if valid and size == formula else EXIT_MISMATCH


def cmd_formulas(args) -> int:
    report = build_report(
        args.n_max, with_solver=args.with_solver, long_running=args.long_running, workers=args.workers
    )
    sys.stdout.write(report.to_table() if args.pretty else report.to_json() + "\n")
    return EXIT_OK if report.all_agree else EXIT_MISMATCH


def cmd_export_lp(args) -> int:
    if Variant(args.variant) not in LP_VARIANTS:
        raise UsageError(f"LP export covers {', '.join(v.value for v in LP_VARIANTS)} only")
    text = export_lp(build_flower_snark(args.n), args.variant)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_patterns(args) -> int:
    variant = Variant(args.variant)
    g = build_flower_snark(args.n)
    try:
        check_capacity(variant, args.n, args.long_running)
    except CapacityError as exc:
        raise UsageError(str(exc)) from exc
    if not 0 <= args.size <= g.num_vertices:
        raise UsageError(f"size must lie in 0..{g.num_vertices}")
    rows = [
        {"set": s.labels(), "copy_weights": list(copy_weights(g, s)), "histogram": list(weight_histogram(g, s))}
        for s in enumerate_valid_sets(g, variant, args.size, limit=args.limit)
    ]
    _emit(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snarkdom", description="Domination variants on flower snarks J_n.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print J_n")
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--format", choices=["dimacs", "json", "adjlist"], default="dimacs")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="exact value by exhaustive search")
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--variant", choices=SOLVE_CHOICES, required=True)
    p.add_argument("--deterministic", action="store_true", help="lexicographically least witness, byte-stable output")
    p.add_argument("--long-running", action="store_true", help="allow the opt-in larger instances")
    p.add_argument("--workers", type=int, default=None, help="default: $SNARKDOM_THREADS or CPU count")
    p.add_argument("--no-prefilter", action="store_true", help="plain brute force (n <= 4)")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="build and check the explicit construction")
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--variant", choices=SOLVE_CHOICES, required=True)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("formulas", help="formula / certificate / solver agreement report")
    p.add_argument("--n-max", type=_n, required=True)
    p.add_argument("--with-solver", action="store_true")
    p.add_argument("--long-running", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("export-lp", help="write a CPLEX LP model")
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--variant", choices=SOLVE_CHOICES, required=True)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("patterns", help="list valid sets of one size with their copy weights")
    p.add_argument("--n", type=_n, required=True)
    p.add_argument("--variant", choices=SET_CHOICES, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--long-running", action="store_true")
    p.set_defaults(func=cmd_patterns)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"snarkdom {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
