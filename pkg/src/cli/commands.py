"""
Commands - the verify, eval and grid subcommands

Each ``cmd_*`` takes the parsed argparse namespace and returns the process
exit code: 0 when everything passed, 1 when an identity or evaluation
failed, 2 on a usage or configuration error.
"""

import csv
import io
import json
import os
import sys
import warnings
from typing import List, Optional, Sequence

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.config import Config, RunConfig  # noqa: E402
from utils.errors import ConfigError, ConvergenceWarning, FracSliceError  # noqa: E402
from utils.logger import enable_debug, get_logger  # noqa: E402
from algebra.quaternion import E1, E2, E3, ImaginaryUnit, SliceComplex, embed  # noqa: E402
from fractional.monomials import MonomialSum  # noqa: E402
from slices.functions import SliceFunction, SymbolicFunction, builtin, builtin_names  # noqa: E402
from slices.operators import OPERATORS, assoc_integral_map, evaluate_grid  # noqa: E402
from verification.kernels import KERNEL_TRUNCATION, kernel_N  # noqa: E402
from verification.registry import IDENTITY_NAMES, RunContext, resolve_names, run_identities  # noqa: E402
from verification.report import atomic_write, summary_table, write_reports  # noqa: E402

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

OPERATOR_NAMES = tuple(OPERATORS) + ("assoc_map", "kernel_N")
BUILTIN_NAMES = tuple(builtin_names())
GRID_HEADER = ["u1", "u2", "u3", "x", "y", "w", "qx1", "qx2", "qx3"]
NAMED_UNITS = {"e1": E1, "e2": E2, "e3": E3}

__all__ = [
    "cmd_verify",
    "cmd_eval",
    "cmd_grid",
    "enable_debug",
    "validate_environment",
    "IDENTITY_NAMES",
    "KERNEL_TRUNCATION",
    "OPERATOR_NAMES",
    "BUILTIN_NAMES",
    "EXIT_OK",
    "EXIT_FAILED",
    "EXIT_USAGE",
]


def validate_environment() -> bool:
    """Check the process settings read from the environment"""
    return Config.validate()


def _usage_error(message: str) -> int:
    print(f"Error: {message}", file=sys.stderr)
    return EXIT_USAGE


def load_context(args) -> RunContext:
    """
    RunConfig from --config with --seed and --variant applied on top

    Raises:
        ConfigError: On an unreadable or invalid configuration
    """
    config = RunConfig.load(args.config).with_overrides(seed=args.seed, variant=args.variant)
    try:
        return RunContext.from_config(config)
    except FracSliceError as exc:
        raise ConfigError(str(exc)) from exc


def parse_unit(text: str) -> ImaginaryUnit:
    """``e1``, ``e2``, ``e3`` or three comma-separated components"""
    if text.lower() in NAMED_UNITS:
        return NAMED_UNITS[text.lower()]
    try:
        return ImaginaryUnit.from_vector([float(part) for part in text.split(",")])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid unit {text!r}: {exc}") from exc


def parse_pair(text: str, label: str) -> List[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"invalid {label} {text!r}: {exc}") from exc
    if len(values) != 2:
        raise ConfigError(f"{label} needs two comma-separated numbers, got {text!r}")
    return values


def resolve_function(text: str, ctx: RunContext) -> SliceFunction:
    """
    A builtin name, or an inline MonomialSum JSON document

    Raises:
        ConfigError: On malformed JSON or an unknown builtin
    """
    if text.lstrip().startswith(("{", "[")):
        try:
            return SymbolicFunction(MonomialSum.from_dict(json.loads(text)), "inline")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"function is not valid JSON: {exc}") from exc
        except FracSliceError as exc:
            raise ConfigError(str(exc)) from exc
    try:
        return builtin(text, ctx.dom, ctx.orders)
    except FracSliceError as exc:
        raise ConfigError(str(exc)) from exc


def operator_evaluator(args, f: SliceFunction, ctx: RunContext):
    """Vectorized evaluator (unit, x, y) -> (..., 4) for the selected operator"""
    name = args.operator
    if name in OPERATORS:
        op = OPERATORS[name]
        return lambda unit, x, y: op.evaluate_array(f, ctx.dom, ctx.orders, unit, x, y, ctx.cfg, args.backend)
    if name == "assoc_map":
        return assoc_integral_map(f, ctx.dom, ctx.orders, ctx.variant, ctx.cfg, args.backend).evaluate_array
    if args.zeta is None:
        raise ConfigError("kernel_N needs --zeta X,Y")
    zx, zy = parse_pair(args.zeta, "zeta")

    def kernel(unit: ImaginaryUnit, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        out = np.empty(x.shape + (4,))
        for index in np.ndindex(x.shape):
            q = embed(complex(x[index], y[index]), unit)
            out[index] = kernel_N(SliceComplex(zx, zy, unit), q, ctx.dom.a, ctx.orders, args.truncation).to_array()
        return out

    return kernel


def _surface_warnings(caught: Sequence[warnings.WarningMessage]) -> List[str]:
    messages = []
    for w in caught:
        logger.warning("%s", w.message)
        messages.append(str(w.message))
    return sorted(set(messages))


def cmd_verify(args) -> int:
    """Run identity checks, write report files and print the summary table"""
    try:
        names = resolve_names(args.names)
        ctx = load_context(args)
    except ConfigError as exc:
        return _usage_error(str(exc))

    logger.info("verifying %d identities (seed %d, variant %s)", len(names), ctx.seed, ctx.variant)
    reports = run_identities(names, ctx)
    formats = (args.format,) if args.format else ("json", "csv")
    out_dir = args.out or Config.OUT_DIR
    try:
        written = write_reports(reports, out_dir, formats)
    except OSError as exc:
        return _usage_error(f"cannot write reports to {out_dir}: {exc}")
    print(summary_table(reports))
    for path in written:
        logger.info("wrote %s", path)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_eval(args) -> int:
    """Evaluate one operator at one point and print the quaternion"""
    try:
        ctx = load_context(args)
        f = resolve_function(args.function, ctx)
        unit = parse_unit(args.unit)
        evaluator = operator_evaluator(args, f, ctx)
    except ConfigError as exc:
        return _usage_error(str(exc))

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConvergenceWarning)
        try:
            value = evaluator(unit, np.array(args.x), np.array(args.y))
        except FracSliceError as exc:
            print(f"Error: {args.operator} at unit {unit.to_list()}, x={args.x}, y={args.y}: {exc}", file=sys.stderr)
            return EXIT_FAILED
    notes = _surface_warnings(caught)

    components = [float(c) for c in np.asarray(value).reshape(4)]
    if (args.format or "json") == "csv":
        print(_csv_text([GRID_HEADER, _csv_row(unit, args.x, args.y, components)]), end="")
    else:
        document = {
            "operator": args.operator,
            "function": f.name,
            "unit": unit.to_list(),
            "x": args.x,
            "y": args.y,
            "value": components,
            "warnings": notes,
        }
        print(json.dumps(document, indent=2))
    return EXIT_OK


def _csv_row(unit: ImaginaryUnit, x: float, y: float, components: Optional[Sequence[float]]) -> List[str]:
    cells = [format(c, ".17g") for c in unit.vector] + [format(x, ".17g"), format(y, ".17g")]
    if components is None:
        return cells + [""] * 4
    return cells + [format(c, ".17g") for c in components]


def _csv_text(rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(rows)
    return buffer.getvalue()


def grid_to_csv(rows) -> str:
    """One row per grid point; failed points leave the value cells empty"""
    lines = [GRID_HEADER]
    for unit, x, y, value, _ in rows:
        lines.append(_csv_row(unit, x, y, None if value is None else np.asarray(value).reshape(4)))
    return _csv_text(lines)


def grid_to_json(rows) -> str:
    out = []
    for unit, x, y, value, error in rows:
        entry = {"unit": unit.to_list(), "x": x, "y": y, "value": None if value is None else np.asarray(value).reshape(4).tolist()}
        if error is not None:
            entry["error"] = error
        out.append(entry)
    return json.dumps(out, indent=2) + "\n"


def cmd_grid(args) -> int:
    """Evaluate one operator over the configured grid and dump the values"""
    try:
        ctx = load_context(args)
        f = resolve_function(args.function, ctx)
        evaluator = operator_evaluator(args, f, ctx)
    except ConfigError as exc:
        return _usage_error(str(exc))

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConvergenceWarning)
        rows = evaluate_grid(evaluator, ctx.grid)
    _surface_warnings(caught)

    failed = [row for row in rows if row[4] is not None]
    for unit, x, y, _, error in failed:
        logger.warning("%s failed at unit %s, x=%r, y=%r: %s", args.operator, unit.to_list(), x, y, error)

    fmt = args.format or "csv"
    text = grid_to_json(rows) if fmt == "json" else grid_to_csv(rows)
    if args.out:
        path = os.path.join(args.out, f"grid.{fmt}")
        try:
            atomic_write(path, text)
        except OSError as exc:
            return _usage_error(f"cannot write {path}: {exc}")
        logger.info("wrote %d grid rows to %s", len(rows), path)
    else:
        sys.stdout.write(text)
    return EXIT_FAILED if failed else EXIT_OK
