"""
Registry - named identity checks, each bound to the data it runs on

Every entry takes a RunContext and returns one or more reports. Random
data comes from a generator seeded with (seed, position of the name), so
each identity sees the same data whether it runs alone, in ``all`` or in
parallel with others.
"""

import math
import os
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.config import RunConfig  # noqa: E402
from utils.errors import ConfigError, FracSliceError  # noqa: E402
from utils.logger import get_logger  # noqa: E402
from utils.parallel import ordered_map  # noqa: E402
from algebra.quaternion import random_units  # noqa: E402
from fractional.orders import OrderPair  # noqa: E402
from fractional.quadrature import QuadratureConfig  # noqa: E402
from slices.domain import GridSpec, SliceDomain, build_grid, orders_from_settings  # noqa: E402
from slices.functions import (  # noqa: E402
    SymbolicFunction,
    default_example45,
    identity,
    kernel_linear,
    qpower,
    zero,
)
from slices.operators import is_rl_slice_regular  # noqa: E402
from verification.kernels import (  # noqa: E402
    ContourSpec,
    SeriesCoefficients,
    verify_cauchy,
    verify_kernel_cauchy,
    verify_kernel_N,
    verify_series_expansion,
)
from verification.report import VerificationReport  # noqa: E402
from verification.theorems import (  # noqa: E402
    anchored,
    interior_points,
    random_quaternion,
    random_sum,
    slice_pairs,
    verify_assoc_sampled,
    verify_caputo_membership_equiv,
    verify_caputo_rl_slice,
    verify_caputo_sampled,
    verify_example45_kernel,
    verify_factorization,
    verify_factorization_sampled,
    verify_fractional_representation,
    verify_fractional_splitting,
    verify_fund_theorem_numeric,
    verify_fund_theorem_symbolic,
    verify_gamma_quality,
    verify_membership_equivalence,
    verify_power_rule,
    verify_prop_fract131,
    verify_representation_classical,
    verify_rl_caputo_link,
    verify_splitting_classical,
)

logger = get_logger(__name__)

SYMBOLIC_IDENTITY_TOLERANCE = 1e-13


@dataclass(frozen=True)
class RunContext:
    """Resolved objects of one run configuration"""

    dom: SliceDomain
    orders: OrderPair
    cfg: QuadratureConfig
    grid: GridSpec
    seed: int
    variant: str
    tolerances: Dict[str, float]

    @classmethod
    def from_config(cls, config: RunConfig) -> "RunContext":
        dom = SliceDomain.from_settings(config.domain)
        return cls(
            dom=dom,
            orders=orders_from_settings(config.orders),
            cfg=QuadratureConfig.from_settings(config.quadrature),
            grid=build_grid(dom, config.grid, config.seed),
            seed=config.seed,
            variant=config.variant,
            tolerances=dict(config.tolerances),
        )

    def rng(self, name: str, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, IDENTITY_NAMES.index(name), stream])

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    @property
    def sampled_tol(self) -> float:
        return self.tolerances["sampled"]

    @property
    def small_grid(self) -> GridSpec:
        """Grid for the quadrature paths"""
        return self.grid.subset(2, 2, 2)


Entry = Callable[[RunContext], List[VerificationReport]]


def _symbolic(expr, name: str) -> SymbolicFunction:
    return SymbolicFunction(expr, name)


def _smooth_sum(ctx: RunContext, rng: np.random.Generator) -> SymbolicFunction:
    """Random sum whose endpoint behaviour the quadrature resolves to the sampled tolerance"""
    return _symbolic(random_sum(rng, ctx.dom.a, terms=3, min_re=0.6), "random_sum")


def _anchored_example(ctx: RunContext) -> SymbolicFunction:
    return default_example45(ctx.dom, ctx.orders, "anchored")


def run_gamma(ctx: RunContext) -> List[VerificationReport]:
    return [verify_gamma_quality(ctx.tol("gamma"))]


def run_power_rule(ctx: RunContext) -> List[VerificationReport]:
    return [verify_power_rule(ctx.dom, ctx.tol("power_rule"), ctx.cfg)]


def run_fund_theorem(ctx: RunContext) -> List[VerificationReport]:
    return [
        verify_fund_theorem_numeric(ctx.dom, ctx.orders.alpha, ctx.tol("fund_theorem"), ctx.cfg),
        verify_fund_theorem_symbolic(ctx.rng("fund_theorem"), ctx.dom, SYMBOLIC_IDENTITY_TOLERANCE),
    ]


def run_rl_caputo_link(ctx: RunContext) -> List[VerificationReport]:
    return [
        verify_rl_caputo_link(ctx.rng("rl_caputo_link"), ctx.dom, ctx.tol("rl_caputo_link")),
        verify_rl_caputo_link(ctx.rng("rl_caputo_link", 1), ctx.dom, ctx.sampled_tol, "sampled", ctx.cfg),
    ]


def run_example45_kernel(ctx: RunContext) -> List[VerificationReport]:
    symbolic = verify_example45_kernel(ctx.rng("example45_kernel"), ctx.dom, ctx.tol("example45_kernel"), ctx.variant)
    # corrected example45 is identically zero; the quadrature path needs nonzero lines
    member = kernel_linear(random_quaternion(ctx.rng("example45_kernel", 1)), ctx.orders, ctx.dom)
    sampled = is_rl_slice_regular(member, ctx.dom, ctx.orders, ctx.grid, ctx.sampled_tol, ctx.cfg, "sampled", ctx.variant)
    sampled.identity_name = "example45_kernel"
    return [symbolic, sampled]


def run_splitting(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("splitting")
    f = qpower(3, random_quaternion(rng), ctx.dom.a)
    return [verify_splitting_classical(f, ctx.grid, ctx.tol("splitting"))]


def run_representation(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("representation")
    pairs = slice_pairs(ctx.dom, rng, 20)
    reports = [
        verify_representation_classical(qpower(n, random_quaternion(rng), ctx.dom.a), pairs, ctx.tol("representation"))
        for n in range(6)
    ]
    return [VerificationReport.merged(reports)]


def run_frac_splitting(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("frac_splitting")
    tol = ctx.tol("frac_splitting")
    members = [kernel_linear(random_quaternion(rng), ctx.orders, ctx.dom), _anchored_example(ctx)]
    symbolic = VerificationReport.merged(
        [verify_fractional_splitting(f, ctx.dom, ctx.orders, ctx.grid, tol) for f in members]
    )
    sampled = verify_assoc_sampled(
        "frac_splitting", _smooth_sum(ctx, rng), ctx.dom, ctx.orders, ctx.small_grid, ctx.sampled_tol, ctx.cfg
    )
    return [symbolic, sampled]


def run_frac_representation(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("frac_representation")
    tol = ctx.tol("frac_representation")
    pairs = slice_pairs(ctx.dom, rng, 5)
    same_slice = [(x, y, unit, unit) for x, y, unit, _ in pairs]
    members = [_anchored_example(ctx), kernel_linear(random_quaternion(rng), ctx.orders, ctx.dom)]
    reports = [
        verify_fractional_representation(f, ctx.dom, ctx.orders, points, tol, ctx.variant)
        for f in members
        for points in (pairs, same_slice)
    ]
    return [VerificationReport.merged(reports)]


def run_fract131(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("fract131")
    f = kernel_linear(random_quaternion(rng), ctx.orders, ctx.dom)
    pairs = slice_pairs(ctx.dom, rng, 10)
    return [verify_prop_fract131(f, ctx.dom, ctx.orders, pairs, ctx.tol("fract131"), ctx.variant)]


def run_corollary_real(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("corollary_real")
    orders = ctx.orders.real_parts()
    f = kernel_linear(random_quaternion(rng), orders, ctx.dom)
    pairs = slice_pairs(ctx.dom, rng, 10)
    return [
        verify_prop_fract131(f, ctx.dom, orders, pairs, ctx.tol("corollary_real"), ctx.variant, name="corollary_real")
    ]


def run_series(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("series")
    coeffs = SeriesCoefficients(tuple(random_quaternion(rng) for _ in range(5)))
    points = interior_points(ctx.dom, rng, 10, ctx.grid.units)
    return [verify_series_expansion(coeffs, ctx.dom, ctx.orders, points, ctx.tol("series"), ctx.variant)]


def run_kernel_N(ctx: RunContext) -> List[VerificationReport]:
    return [verify_kernel_N(ctx.rng("kernel_N"), ctx.dom, ctx.tol("kernel_N"))]


def run_kernel_cauchy(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("kernel_cauchy")
    coeffs = SeriesCoefficients(tuple(random_quaternion(rng) for _ in range(5)))
    points = interior_points(ctx.dom, rng, 5, ctx.grid.units)
    return [verify_kernel_cauchy(coeffs, ctx.dom, ctx.orders, points, ctx.tol("kernel_cauchy"))]


def run_caputo_slice(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("caputo_slice")
    f = _symbolic(random_sum(rng, ctx.dom.a), "random_sum")
    return [
        verify_caputo_rl_slice(f, ctx.dom, ctx.orders, ctx.grid, ctx.tol("caputo_slice"), ctx.variant),
        verify_caputo_sampled(_smooth_sum(ctx, rng), ctx.dom, ctx.orders, ctx.small_grid, ctx.sampled_tol, ctx.cfg),
    ]


def run_caputo_membership(ctx: RunContext) -> List[VerificationReport]:
    a = ctx.dom.a
    functions = [
        zero(a),
        _anchored_example(ctx),
        _symbolic(anchored(qpower(2, anchor_a=a).expr), "anchored_square"),
    ]
    reports = [
        verify_caputo_membership_equiv(f, ctx.dom, ctx.orders, ctx.grid, ctx.tol("caputo_membership"), ctx.cfg)
        for f in functions
    ]
    return [VerificationReport.merged(reports)]


def run_cauchy(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("cauchy")
    dom = ctx.dom
    contour = ContourSpec(0.5 * (dom.a + dom.b), 0.45 * (dom.b - dom.a))
    f = qpower(3, random_quaternion(rng), dom.a)
    points = []
    for unit in random_units(rng, 5):
        phi = float(rng.uniform(0.2, math.pi - 0.2))
        points.append((unit, contour.center + 0.6 * contour.radius * math.cos(phi), 0.6 * contour.radius * math.sin(phi)))
    return [verify_cauchy(f, contour, points, ctx.tol("cauchy"))]


def run_factorization(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("factorization")
    polynomial = _symbolic(random_sum(rng, ctx.dom.a, integer=True), "integer_sum")
    return [
        verify_factorization(polynomial, ctx.dom, ctx.orders, ctx.grid, ctx.tol("factorization"), ctx.variant),
        verify_factorization_sampled(_smooth_sum(ctx, rng), ctx.dom, ctx.orders, ctx.small_grid, ctx.sampled_tol, ctx.cfg),
    ]


def run_membership_equiv(ctx: RunContext) -> List[VerificationReport]:
    rng = ctx.rng("membership_equiv")
    functions = [kernel_linear(random_quaternion(rng), ctx.orders, ctx.dom), identity(ctx.dom.a)]
    reports = [
        verify_membership_equivalence(f, ctx.dom, ctx.orders, ctx.grid, ctx.tol("membership_equiv"), ctx.variant, ctx.cfg)
        for f in functions
    ]
    return [VerificationReport.merged(reports)]


REGISTRY: Dict[str, Entry] = {
    "power_rule": run_power_rule,
    "fund_theorem": run_fund_theorem,
    "rl_caputo_link": run_rl_caputo_link,
    "example45_kernel": run_example45_kernel,
    "splitting": run_splitting,
    "representation": run_representation,
    "frac_splitting": run_frac_splitting,
    "frac_representation": run_frac_representation,
    "fract131": run_fract131,
    "corollary_real": run_corollary_real,
    "series": run_series,
    "kernel_N": run_kernel_N,
    "caputo_slice": run_caputo_slice,
    "caputo_membership": run_caputo_membership,
    "cauchy": run_cauchy,
    "factorization": run_factorization,
    "membership_equiv": run_membership_equiv,
    "kernel_cauchy": run_kernel_cauchy,
    "gamma": run_gamma,
}

IDENTITY_NAMES = tuple(REGISTRY)


def resolve_names(names: Sequence[str]) -> List[str]:
    """
    Expand "all" and check every name

    Raises:
        ConfigError: On an unknown identity name
    """
    if not names or "all" in names:
        return list(IDENTITY_NAMES)
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise ConfigError(f"unknown identity names: {', '.join(unknown)}; choose from {', '.join(IDENTITY_NAMES)}")
    return list(dict.fromkeys(names))


def run_identity(name: str, ctx: RunContext) -> List[VerificationReport]:
    """Run one entry; an error outside the per-point guards becomes a failed report"""
    try:
        reports = REGISTRY[name](ctx)
    except FracSliceError as exc:
        logger.error("%s could not run: %s", name, exc)
        failed = VerificationReport(name, ctx.variant, ctx.tol(name), notes=[f"not run: {exc}"])
        failed.checks_ok = False
        return [failed]
    for report in reports:
        logger.info("%s [%s, %s]: passed=%s residual=%.3e", name, report.variant, report.backend, report.passed, report.residual)
    return reports


def run_identities(names: Sequence[str], ctx: RunContext, threads: int = None) -> List[VerificationReport]:
    """Run the named identities in parallel; reports come back in name order"""
    batches = ordered_map(lambda name: run_identity(name, ctx), resolve_names(names), threads)
    return [report for batch in batches for report in batch]
