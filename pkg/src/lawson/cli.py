"""Command line interface.

    lawson report --family xi --m 3 --k 2 [--format json|csv|md] [--verify]
                  [--allow-excluded] [--export-complex PATH] [--cap N]
    lawson batch  --family eta --m-range 2..4 --k-range 2..4 [--format ...]
                  [--verify] [--cap N]

Exit codes: 0 success, 2 invalid parameters (including the excluded (2, 2)
pair without --allow-excluded), 3 cross-check failure in verify mode,
4 group closure cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .errors import CapExceeded, CrossCheckError, LawsonError, ValidationError
from .report import parse_range, run_batch, run_single, to_csv, to_json, to_markdown

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CROSS_CHECK = 3
EXIT_CAP = 4


def _add_common(parser):
    parser.add_argument("--family", required=True, help="surface family: xi or eta")
    parser.add_argument("--format", choices=["json", "csv", "md"], default="json")
    parser.add_argument("--verify", action="store_true",
                        help="recompute every quantity along an independent path")
    parser.add_argument("--cap", type=int, default=10000,
                        help="element cap for group closures")


def build_parser():
    parser = argparse.ArgumentParser(prog="lawson",
                                     description="Bipolar classification of the xi and "
                                                 "eta spherical surface families")
    sub = parser.add_subparsers(dest="command", required=True)

    report_cmd = sub.add_parser("report", help="analyze a single (family, m, k)")
    _add_common(report_cmd)
    report_cmd.add_argument("--m", type=int, required=True)
    report_cmd.add_argument("--k", type=int, required=True)
    report_cmd.add_argument("--allow-excluded", action="store_true",
                            help="force the excluded (2, 2) pair")
    report_cmd.add_argument("--export-complex", default=None, metavar="PATH",
                            help="write the decided domain complex as text")

    batch_cmd = sub.add_parser("batch", help="analyze a rectangle of (m, k) pairs")
    _add_common(batch_cmd)
    batch_cmd.add_argument("--m-range", required=True, metavar="A..B")
    batch_cmd.add_argument("--k-range", required=True, metavar="A..B")
    return parser


def _render(reports, failures, fmt):
    if fmt == "json":
        return to_json(reports, failures)
    if fmt == "csv":
        return to_csv(reports)
    return to_markdown(reports)


def _exit_code_for(exc):
    if isinstance(exc, ValidationError):
        return EXIT_VALIDATION
    if isinstance(exc, CrossCheckError):
        return EXIT_CROSS_CHECK
    if isinstance(exc, CapExceeded):
        return EXIT_CAP
    return EXIT_VALIDATION if not isinstance(exc, LawsonError) else EXIT_CROSS_CHECK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            report = run_single(args.family, args.m, args.k, verify=args.verify,
                                allow_excluded=args.allow_excluded, cap=args.cap,
                                export_complex_path=args.export_complex)
            sys.stdout.write(_render([report], [], args.format))
            return EXIT_OK
        m_range = parse_range(args.m_range)
        k_range = parse_range(args.k_range)
        reports, failures = run_batch(args.family, m_range, k_range,
                                      verify=args.verify, cap=args.cap)
        sys.stdout.write(_render(reports, failures, args.format))
        if failures:
            codes = {"ValidationError": EXIT_VALIDATION, "ExcludedCase": EXIT_VALIDATION,
                     "CapExceeded": EXIT_CAP}
            worst = max(codes.get(f["error"], EXIT_CROSS_CHECK) for f in failures)
            sys.stderr.write(f"{len(failures)} pair(s) failed\n")
            return worst
        return EXIT_OK
    except LawsonError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return _exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
