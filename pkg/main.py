#!/usr/bin/env python3
"""
fracslice - Main Entry Point

Batch driver for fractional slice calculus of complex order on
quaternionic domains: verifies the identity suite, evaluates the
fractional slice Cauchy-Riemann operators at points and over grids.
"""

import argparse
import sys

from src.cli.commands import (
    BUILTIN_NAMES,
    EXIT_FAILED,
    EXIT_USAGE,
    IDENTITY_NAMES,
    KERNEL_TRUNCATION,
    OPERATOR_NAMES,
    cmd_eval,
    cmd_grid,
    cmd_verify,
    enable_debug,
    validate_environment,
)


def _common_flags() -> argparse.ArgumentParser:
    """Flags shared by every subcommand"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration (default: built-in defaults)")
    common.add_argument(
        "--variant",
        choices=("corrected", "displayed"),
        help="reading of identities with two readings (default: FRACSLICE_VARIANT or corrected)",
    )
    common.add_argument("--seed", type=int, help="seed of all random test data (default: FRACSLICE_SEED or 7)")
    common.add_argument("--format", choices=("json", "csv"), help="output format (see each subcommand for its default)")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")
    return common


def _operator_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("operator", choices=OPERATOR_NAMES, help="operator to evaluate")
    parser.add_argument(
        "--function",
        default="example45",
        help=f"builtin ({', '.join(BUILTIN_NAMES)}) or inline MonomialSum JSON",
    )
    parser.add_argument("--backend", choices=("symbolic", "sampled"), help="evaluation path (default: symbolic when exact)")
    parser.add_argument("--zeta", metavar="X,Y", help="kernel_N only: zeta = X + unit*Y on the slice of q")
    parser.add_argument("--truncation", type=int, default=KERNEL_TRUNCATION, help="kernel_N only: series truncation")


def parse_arguments(argv=None):
    """Parse command line arguments"""
    parser = argparse.ArgumentParser(
        description="fracslice - fractional slice calculus of complex order on quaternionic domains",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_flags()

    verify = subparsers.add_parser(
        "verify",
        parents=[common],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        help="run identity checks and write report.json / report.csv",
        description=f"Identities: {', '.join(IDENTITY_NAMES)}. Without --format both report files are written "
        "to --out (default: FRACSLICE_OUT_DIR or reports).",
    )
    verify.add_argument("names", nargs="*", default=["all"], help="identity names, or all")
    verify.set_defaults(handler=cmd_verify)

    evaluate = subparsers.add_parser(
        "eval",
        parents=[common],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        help="evaluate an operator at one point",
        description="Prints the value as [w, x1, x2, x3] (JSON by default).",
    )
    _operator_flags(evaluate)
    evaluate.add_argument("--unit", default="e1", help="slice unit: e1, e2, e3 or U1,U2,U3")
    evaluate.add_argument("--x", type=float, default=0.5, help="x coordinate")
    evaluate.add_argument("--y", type=float, default=0.5, help="y coordinate")
    evaluate.set_defaults(handler=cmd_eval)

    grid = subparsers.add_parser(
        "grid",
        parents=[common],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        help="evaluate an operator over the configured grid",
        description="Rows u1,u2,u3,x,y,w,qx1,qx2,qx3 (CSV by default), to stdout or DIR/grid.csv.",
    )
    _operator_flags(grid)
    grid.set_defaults(handler=cmd_grid)

    return parser.parse_args(argv)


def main(argv=None):
    """Main entry point"""
    args = parse_arguments(argv)

    if args.debug:
        enable_debug()

    try:
        validate_environment()
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args)
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
