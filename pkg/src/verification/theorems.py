"""
Theorems - numerical and symbolic checks of the slice function identities

Each ``verify_*`` routine returns a VerificationReport. Symbolic checks
compare exact MonomialSum evaluations; sampled checks go through the
quadrature engine and are reported with their own, looser tolerance.
Identities with two readings run both and record the other reading's
outcome on the selected one.
"""

import os
import sys
from dataclasses import replace
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.config import VARIANTS  # noqa: E402
from utils.errors import DomainError, FracSliceError  # noqa: E402
from utils.logger import get_logger  # noqa: E402
from algebra.quaternion import (  # noqa: E402
    E1,
    E2,
    ImaginaryUnit,
    Quaternion,
    combine_array,
    embed,
    orthogonal_unit,
    project_array,
    qarray_mul,
    random_units,
    split_array,
)
from special.gamma_functions import cpow, cpow_array, gamma, rgamma  # noqa: E402
from fractional.monomials import (  # noqa: E402
    MonomialSum,
    MonomialTerm,
    freeze_x,
    freeze_y,
    sym_caputo_x,
    sym_partial,
    sym_rl_derivative_x,
    sym_rl_derivative_y,
    sym_rl_integral_x,
)
from fractional.numeric_operators import caputo_left, rl_derivative_left  # noqa: E402
from fractional.orders import ComplexOrder, OrderPair, Side  # noqa: E402
from fractional.quadrature import (  # noqa: E402
    DEFAULT_QUADRATURE,
    Integrand1D,
    QuadratureConfig,
    fractional_integral,
)
from slices.domain import GridPoint, GridSpec, SliceDomain  # noqa: E402
from slices.functions import EXAMPLE45_VARIANTS, SliceFunction, example45  # noqa: E402
from slices.operators import (  # noqa: E402
    D_CAPUTO_LEFT,
    D_RL_LEFT,
    D_RL_RIGHTSIDED,
    assoc_integral_map,
    cr_bar,
    cr_bar_sum,
    evaluate_grid,
    grid_residuals,
    integral_sums,
    orient,
    resolve_backend,
)
from verification.report import PointResidual, VerificationReport  # noqa: E402

logger = get_logger(__name__)

NO_VARIANT = "none"

Evaluator = Callable[[ImaginaryUnit, np.ndarray, np.ndarray], np.ndarray]
SlicePair = Tuple[float, float, ImaginaryUnit, ImaginaryUnit]


# Shared helpers


def _array(value) -> np.ndarray:
    if isinstance(value, Quaternion):
        return value.to_array()
    value = np.asarray(value)
    if np.iscomplexobj(value):
        return np.stack([value.real, value.imag], axis=-1)
    return value.astype(float)


def compare(unit: ImaginaryUnit, x: float, y: float, lhs, rhs) -> PointResidual:
    """Residual |lhs - rhs| with |rhs| as the relative scale"""
    lhs, rhs = _array(lhs), _array(rhs)
    return PointResidual(unit.vector, float(x), float(y), float(np.linalg.norm(lhs - rhs)), float(np.linalg.norm(rhs)))


def guarded(unit: ImaginaryUnit, x: float, y: float, compute: Callable[[], Tuple]) -> PointResidual:
    """Run compute() -> (lhs, rhs); library errors become a failed point"""
    try:
        lhs, rhs = compute()
    except FracSliceError as exc:
        return PointResidual(unit.vector, float(x), float(y), float("inf"), 0.0, str(exc))
    return compare(unit, x, y, lhs, rhs)


def compare_on_grid(lhs: Evaluator, rhs: Evaluator, grid: GridSpec) -> List[PointResidual]:
    return grid_residuals(evaluate_grid(lhs, grid), evaluate_grid(rhs, grid))


def symbolic_expr(f: SliceFunction) -> MonomialSum:
    if not f.is_symbolic:
        raise DomainError(f"function {f.name} has no symbolic form")
    return f.expr


def represent(on_unit: np.ndarray, on_negative: np.ndarray, unit: ImaginaryUnit, target: ImaginaryUnit) -> np.ndarray:
    """
    Representation-formula combination (1/2)[(1 - t i) v_i + (1 + t i) v_-i]

    Args:
        on_unit: Values on the slice C(i)
        on_negative: Values at the same (x, y) on the slice C(-i)
        unit: The unit i
        target: The unit t of the slice being reconstructed
    """
    w = qarray_mul(target.quaternion.to_array(), unit.quaternion.to_array())
    one = np.array([1.0, 0.0, 0.0, 0.0])
    return 0.5 * (qarray_mul(one - w, on_unit) + qarray_mul(one + w, on_negative))


def shifted(s: MonomialSum, factor: complex, dmu: complex = 0.0, dnu: complex = 0.0) -> MonomialSum:
    """s multiplied by the formal monomial factor * X^dmu * Y^dnu"""
    return s.map_terms(lambda t: [replace(t, scalar=t.scalar * factor, mu=t.mu + dmu, nu=t.nu + dnu)])


def anchored(expr: MonomialSum) -> MonomialSum:
    """
    f(x, y) - f(a, y) - f(x, 0) + f(a, 0): vanishes at x = a and on the real axis

    Raises:
        DomainError: If f has no limit at x = a or y = 0
    """
    at_a = freeze_x(expr, expr.anchor_a)
    on_axis = freeze_y(expr, expr.anchor_y)
    corner = freeze_y(at_a, expr.anchor_y)
    return expr - at_a - on_axis + corner


def split_sum(expr: MonomialSum, unit_i: ImaginaryUnit, unit_j: ImaginaryUnit) -> Tuple[MonomialSum, MonomialSum]:
    """
    Formal sums F, G with values in C(i) such that f = F + G j on the slice C(i)

    Each right constant q is split as z1 + z2 j with z1, z2 in C(i), and
    embed(p) q = embed(p z1) + embed(p z2) j moves z1, z2 into the scalars.
    """
    if expr.is_empty():
        return expr, expr
    consts = np.array([t.right_const.to_list() for t in expr.terms])
    f_parts, g_parts = split_array(consts, unit_i, unit_j)

    def component(parts: np.ndarray) -> MonomialSum:
        return expr.with_terms(MonomialTerm(t.scalar * complex(z), t.mu, t.nu) for t, z in zip(expr.terms, parts))

    return component(f_parts), component(g_parts)


def cr_bar_evaluator(g: SliceFunction, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> Evaluator:
    """Vectorized cr_bar: exact sums for symbolic g, pointwise Richardson otherwise"""
    if g.is_symbolic:
        return cr_bar_sum(g.expr).evaluate_array

    def evaluator(unit: ImaginaryUnit, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        out = np.empty(x.shape + (4,))
        for index in np.ndindex(x.shape):
            out[index] = cr_bar(g, unit, x[index], y[index], cfg).to_array()
        return out

    return evaluator


def with_variants(run: Callable[[str], VerificationReport], variant: str, variants: Sequence[str]) -> VerificationReport:
    """Run the selected reading and record the other readings' outcomes on it"""
    if variant not in variants:
        raise DomainError(f"unknown variant {variant!r}; choose from {', '.join(variants)}")
    main = run(variant)
    for other in variants:
        if other != variant:
            outcome = run(other)
            logger.debug("%s: %s reading passed=%s", main.identity_name, other, outcome.passed)
            main.record_variant(outcome)
    return main


# Random test data


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion(*(scale * rng.uniform(-1.0, 1.0, size=4)))


def random_order(rng: np.random.Generator, imaginary: bool = True) -> ComplexOrder:
    return ComplexOrder(float(rng.uniform(0.15, 0.85)), float(rng.uniform(-0.3, 0.3)) if imaginary else 0.0)


def random_orders(rng: np.random.Generator, imaginary: bool = True) -> OrderPair:
    return OrderPair(random_order(rng, imaginary), random_order(rng, imaginary))


def _random_exponent(rng: np.random.Generator, min_re: float) -> complex:
    if rng.uniform() < 1.0 / 3.0:
        return 0j
    return complex(rng.uniform(min_re, 2.0), rng.uniform(-0.3, 0.3))


def random_sum(
    rng: np.random.Generator,
    anchor_a: float = 0.0,
    terms: int = 4,
    x_only: bool = False,
    integer: bool = False,
    min_re: float = 0.2,
) -> MonomialSum:
    """
    Random sum whose exponents are 0 or have real part in [min_re, 2]

    Such sums are continuous up to x = a and y = 0, so the RL and Caputo
    operators both apply. ``integer`` draws exponents from {0, 1, 2, 3},
    which keeps the sum re-expandable about the right-hand anchors.
    """
    out = []
    for _ in range(terms):
        if integer:
            mu, nu = complex(rng.integers(0, 4)), complex(rng.integers(0, 4))
        else:
            mu, nu = _random_exponent(rng, min_re), _random_exponent(rng, min_re)
        scalar = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        out.append(MonomialTerm(scalar, mu, 0j if x_only else nu, random_quaternion(rng)))
    return MonomialSum(tuple(out), anchor_a)


def interior_points(
    dom: SliceDomain, rng: np.random.Generator, count: int, units: Sequence[ImaginaryUnit]
) -> List[GridPoint]:
    """Seeded points in the middle 80% of the domain, cycling through the given units"""
    span = dom.b - dom.a
    points = []
    for k in range(count):
        x = float(rng.uniform(dom.a + 0.1 * span, dom.b - 0.1 * span))
        y = float(rng.uniform(0.1 * dom.c, 0.9 * dom.c))
        points.append((units[k % len(units)], x, y))
    return points


def slice_pairs(dom: SliceDomain, rng: np.random.Generator, count: int) -> List[SlicePair]:
    """Seeded (x, y, i, i') samples with independent random units"""
    points = interior_points(dom, rng, count, [E1])
    units = random_units(rng, 2 * count)
    return [(x, y, units[2 * k], units[2 * k + 1]) for k, (_, x, y) in enumerate(points)]


# Gamma and real-line operators


def _scalar_point(x: float, y: float, value: complex, reference: complex) -> PointResidual:
    value, reference = complex(value), complex(reference)
    return PointResidual(E1.vector, float(x), float(y), abs(value - reference), abs(reference))


def verify_gamma_quality(tol: float = 1e-10) -> VerificationReport:
    """
    Gamma(1/2)^2 = pi, Gamma(z+1) = z Gamma(z) on re in [0.05, 3], im in [-2, 2],
    and |Gamma(1 + i y)|^2 = pi y / sinh(pi y)
    """
    half = gamma(0.5)
    residuals = [_scalar_point(0.5, 0.0, half * half, np.pi)]
    for re in np.linspace(0.05, 3.0, 7):
        for im in np.linspace(-2.0, 2.0, 5):
            z = complex(re, im)
            residuals.append(_scalar_point(re, im, gamma(z + 1.0), z * gamma(z)))
    for y in (0.5, 1.0, 2.0):
        residuals.append(_scalar_point(1.0, y, abs(gamma(complex(1.0, y))) ** 2, np.pi * y / np.sinh(np.pi * y)))
    return VerificationReport("gamma", NO_VARIANT, tol, residuals, "rel", "symbolic")


POWER_RULE_ORDERS = (0.2 + 0j, 0.5 + 0.3j, 0.5 - 0.3j, 0.8 + 0j, 0.2 + 0.3j)
POWER_RULE_POWERS = (0j, 1 + 0j, 1.5 + 0.1j)


def verify_power_rule(
    dom: SliceDomain, tol: float = 1e-6, cfg: QuadratureConfig = DEFAULT_QUADRATURE, points: int = 10
) -> VerificationReport:
    """Numeric RL derivative of (x - a)^p against Gamma(p+1) (x-a)^(p-alpha) / Gamma(p+1-alpha)"""
    a, b = dom.a, dom.b
    xs = a + 0.05 + (b - a - 0.05) * (np.arange(points) + 0.5) / points
    residuals = []
    for alpha in POWER_RULE_ORDERS:
        for power in POWER_RULE_POWERS:
            f = Integrand1D(lambda t, power=power: cpow_array(t - a, power), a, b)
            for x in xs:

                def compute(alpha=alpha, power=power, f=f, x=x):
                    numeric = rl_derivative_left(f, a, alpha, x, cfg)
                    exact = gamma(power + 1.0) * rgamma(power + 1.0 - alpha) * cpow(x - a, power - alpha)
                    return numeric, exact

                residuals.append(guarded(E1, x, 0.0, compute))
    return VerificationReport("power_rule", NO_VARIANT, tol, residuals, "rel", "sampled")


SMOOTH_FUNCTIONS = (
    ("exp", np.exp),
    ("cos3", lambda t: np.cos(3.0 * t)),
    ("quadratic", lambda t: 1.0 + t * t),
    ("rational", lambda t: 1.0 / (2.0 + t)),
    ("sqrt_shift", lambda t: np.sqrt(t + 0.5)),
)


def verify_fund_theorem_numeric(
    dom: SliceDomain, alpha: ComplexOrder, tol: float = 1e-6, cfg: QuadratureConfig = DEFAULT_QUADRATURE, points: int = 3
) -> VerificationReport:
    """D^alpha I^alpha f = f on smooth functions, both operators numeric"""
    a, b = dom.a, dom.b
    xs = a + (b - a) * np.linspace(0.2, 0.8, points)
    residuals = []
    for _, fn in SMOOTH_FUNCTIONS:
        f = Integrand1D(lambda t, fn=fn: np.asarray(fn(t), dtype=complex), a, b)

        def integral(t: np.ndarray, f=f) -> np.ndarray:
            t = np.asarray(t, dtype=float)
            return fractional_integral(f, a, alpha.value, t.reshape(-1), cfg).reshape(t.shape)

        g = Integrand1D(integral, a, b)
        for x in xs:

            def compute(g=g, fn=fn, x=x):
                return rl_derivative_left(g, a, alpha, x, cfg), complex(fn(x))

            residuals.append(guarded(E1, x, 0.0, compute))
    report = VerificationReport("fund_theorem", NO_VARIANT, tol, residuals, "rel", "sampled")
    report.notes.append("functions: " + ", ".join(name for name, _ in SMOOTH_FUNCTIONS))
    return report


def verify_fund_theorem_symbolic(
    rng: np.random.Generator, dom: SliceDomain, tol: float = 1e-13, count: int = 10
) -> VerificationReport:
    """D^alpha I^alpha s = s on random sums, measured on collected coefficients"""
    residuals = []
    for k in range(count):
        s = random_sum(rng, dom.a)
        alpha = random_order(rng)
        leftover = (sym_rl_derivative_x(sym_rl_integral_x(s, alpha), alpha) - s).collect().max_coefficient()
        residuals.append(PointResidual(E1.vector, float(k), 0.0, leftover, s.max_coefficient()))
    return VerificationReport("fund_theorem", NO_VARIANT, tol, residuals, "rel", "symbolic")


def _line_integrand(s: MonomialSum, dom: SliceDomain) -> Integrand1D:
    """x-only sum on [a, b] as stacked (F, G) components on C(e1) with j = e2"""

    def fn(t: np.ndarray) -> np.ndarray:
        f_part, g_part = split_array(s.evaluate_array(E1, t, 0.0), E1, E2)
        return np.stack([f_part, g_part], axis=-1)

    return Integrand1D(fn, dom.a, dom.b)


def verify_rl_caputo_link(
    rng: np.random.Generator,
    dom: SliceDomain,
    tol: float = 1e-10,
    backend: str = "symbolic",
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    count: int = 20,
) -> VerificationReport:
    """
    C D^alpha f = D^alpha f - f(a) (x - a)^(-alpha) / Gamma(1 - alpha) on [a, b]

    f runs over random x-only sums. The symbolic path compares exact sums;
    the sampled path runs both derivatives through the quadrature.
    """
    residuals = []
    for _ in range(count):
        s = random_sum(rng, dom.a, x_only=True, min_re=0.2 if backend == "symbolic" else 0.6)
        alpha = random_order(rng)
        x = float(rng.uniform(dom.a + 0.1 * (dom.b - dom.a), dom.b - 0.05 * (dom.b - dom.a)))
        correction = shifted(freeze_x(s, dom.a), rgamma(1.0 - alpha.value), -alpha.value)

        def compute(s=s, alpha=alpha, x=x, correction=correction):
            if backend == "symbolic":
                rl = sym_rl_derivative_x(s, alpha) - correction
                return sym_caputo_x(s, alpha).evaluate(E1, x, 0.0), rl.evaluate(E1, x, 0.0)
            line = _line_integrand(s, dom)
            deriv = _line_integrand(sym_partial(s, "x"), dom)
            caputo = caputo_left(line, deriv, dom.a, alpha, x, cfg)
            rl = rl_derivative_left(line, dom.a, alpha, x, cfg)
            lhs = combine_array(caputo[0], caputo[1], E1, E2)
            return lhs, combine_array(rl[0], rl[1], E1, E2) - correction.evaluate_array(E1, x, 0.0)

        residuals.append(guarded(E1, x, 0.0, compute))
    return VerificationReport("rl_caputo_link", NO_VARIANT, tol, residuals, "abs", backend)


# Example 4.5 kernel membership


def random_example45_parameters(rng: np.random.Generator) -> Dict:
    return {
        "q1": random_quaternion(rng),
        "q2": random_quaternion(rng),
        "delta": (float(rng.uniform(0.1, 0.9)), float(rng.uniform(-0.3, 0.3))),
        "gamma_p": (float(rng.uniform(0.1, 0.9)), float(rng.uniform(-0.3, 0.3))),
    }


def verify_example45_kernel(
    rng: np.random.Generator, dom: SliceDomain, tol: float = 1e-12, variant: str = "corrected", count: int = 5
) -> VerificationReport:
    """
    d_rl_left of the product-of-braces example collects to the zero sum

    The residual of each parameter set is the largest collected coefficient,
    relative to the largest coefficient before cancellation.
    """
    cases = [(random_example45_parameters(rng), random_orders(rng)) for _ in range(count)]

    def run(reading: str) -> VerificationReport:
        residuals = []
        for k, (params, orders) in enumerate(cases):
            f = example45(orders=orders, dom=dom, variant=reading, **params)
            raw = D_RL_LEFT.symbolic_sum(f.expr, dom, orders)
            scale = max(raw.max_coefficient(), f.expr.max_coefficient())
            residuals.append(PointResidual(E1.vector, float(k), 0.0, raw.collect().max_coefficient(), scale))
        return VerificationReport("example45_kernel", reading, tol, residuals, "rel", "symbolic")

    return with_variants(run, variant, EXAMPLE45_VARIANTS)


# Classical splitting and representation


def verify_splitting_classical(
    f: SliceFunction, grid: GridSpec, tol: float = 1e-10, unit_j: ImaginaryUnit = None
) -> VerificationReport:
    """
    f = F + G j on each slice with F, G holomorphic

    Residual per point is the largest of |dbar F|, |dbar G| and the
    recombination error |F + G j - f|.

    Raises:
        DomainError: If unit_j is not orthogonal to every grid unit
    """
    if unit_j is not None:
        for unit in grid.units:
            if abs(np.dot(unit.vector, unit_j.vector)) > 1e-12:
                raise DomainError(f"unit {unit_j.to_list()} is not orthogonal to {unit.to_list()}")

    def evaluator(unit: ImaginaryUnit, x, y) -> np.ndarray:
        j = unit_j or orthogonal_unit(unit)
        values = f.evaluate_array(unit, x, y)
        f_part, g_part = split_array(values, unit, j)
        fx, gx = split_array(f.partial_array("x", unit, x, y), unit, j)
        fy, gy = split_array(f.partial_array("y", unit, x, y), unit, j)
        worst = np.maximum(np.abs(0.5 * (fx + 1j * fy)), np.abs(0.5 * (gx + 1j * gy)))
        recombined = combine_array(f_part, g_part, unit, j)
        return np.maximum(worst, np.linalg.norm(recombined - values, axis=-1))[..., None]

    residuals = grid_residuals(evaluate_grid(evaluator, grid))
    report = VerificationReport("splitting", NO_VARIANT, tol, residuals, "abs", "symbolic" if f.is_symbolic else "sampled")
    report.notes.append(f"function {f.name}")
    return report


def verify_representation_classical(
    f: SliceFunction, points: Sequence[SlicePair], tol: float = 1e-12
) -> VerificationReport:
    """f(x + t y) = (1/2)[f(x+iy) + f(x-iy)] + (1/2) t i [f(x-iy) - f(x+iy)]"""
    residuals = []
    for x, y, unit, target in points:

        def compute(x=x, y=y, unit=unit, target=target):
            rhs = represent(f.evaluate_array(unit, x, y), f.evaluate_array(-unit, x, y), unit, target)
            return f.evaluate_array(target, x, y), rhs

        residuals.append(guarded(target, x, y, compute))
    report = VerificationReport("representation", NO_VARIANT, tol, residuals, "rel", "symbolic")
    report.notes.append(f"function {f.name}")
    return report


# Fractional splitting and representation


def verify_fractional_splitting(
    f: SliceFunction, dom: SliceDomain, orders: OrderPair, grid: GridSpec, tol: float = 1e-10
) -> VerificationReport:
    """
    Split f = F + G j on each slice; both associated integral maps must be dbar-closed

    Residual per point is the largest of |dbar assoc(F)|, |dbar assoc(G)|
    and |F + G j - f|.
    """
    expr = orient(symbolic_expr(f), dom, Side.Left)

    def evaluator(unit: ImaginaryUnit, x, y) -> np.ndarray:
        unit_j = orthogonal_unit(unit)
        f_sum, g_sum = split_sum(expr, unit, unit_j)
        recombined = combine_array(
            project_array(f_sum.evaluate_array(unit, x, y), unit),
            project_array(g_sum.evaluate_array(unit, x, y), unit),
            unit,
            unit_j,
        )
        worst = np.linalg.norm(recombined - expr.evaluate_array(unit, x, y), axis=-1)
        for part in (f_sum, g_sum):
            p_sum, q_sum = integral_sums(part, dom, orders)
            worst = np.maximum(worst, np.linalg.norm(cr_bar_sum(p_sum + q_sum).evaluate_array(unit, x, y), axis=-1))
        return worst[..., None]

    residuals = grid_residuals(evaluate_grid(evaluator, grid))
    report = VerificationReport("frac_splitting", NO_VARIANT, tol, residuals, "abs", "symbolic")
    report.notes.append(f"function {f.name}")
    return report


def verify_assoc_sampled(
    name: str,
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float = 1e-5,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> VerificationReport:
    """Quadrature values of the associated integral map against the exact ones"""
    exact = assoc_integral_map(f, dom, orders, backend="symbolic")
    numeric = assoc_integral_map(f, dom, orders, cfg=cfg, backend="sampled")
    residuals = compare_on_grid(numeric.evaluate_array, exact.evaluate_array, grid)
    report = VerificationReport(name, NO_VARIANT, tol, residuals, "abs", "sampled")
    report.notes.append(f"function {f.name}")
    return report


def verify_fractional_representation(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    points: Sequence[SlicePair],
    tol: float = 1e-10,
    variant: str = "corrected",
) -> VerificationReport:
    """
    The associated integral map on C(i') from its values on C(i) and C(-i)

    ``corrected`` combines with (1 -+ i' i) on the left of the map values.
    ``displayed`` writes i' i = w0 + w_perp and moves w_perp past the
    integrals, which conjugates their orders.
    """
    expr = symbolic_expr(f)
    p_sum, q_sum = integral_sums(expr, dom, orders)
    assoc = p_sum + q_sum
    p_conj, q_conj = integral_sums(expr, dom, orders.conjugate())
    assoc_conj = p_conj + q_conj

    def displayed(x: float, y: float, unit: ImaginaryUnit, target: ImaginaryUnit) -> np.ndarray:
        w = qarray_mul(target.quaternion.to_array(), unit.quaternion.to_array())
        w0, w_perp = w[0], np.concatenate([[0.0], w[1:]])
        on_unit = (1.0 - w0) * assoc.evaluate_array(unit, x, y) - qarray_mul(w_perp, assoc_conj.evaluate_array(unit, x, y))
        on_negative = (1.0 + w0) * assoc.evaluate_array(-unit, x, y) + qarray_mul(
            w_perp, assoc_conj.evaluate_array(-unit, x, y)
        )
        return 0.5 * (on_unit + on_negative)

    def run(reading: str) -> VerificationReport:
        residuals = []
        for x, y, unit, target in points:

            def compute(x=x, y=y, unit=unit, target=target):
                if reading == "corrected":
                    rhs = represent(assoc.evaluate_array(unit, x, y), assoc.evaluate_array(-unit, x, y), unit, target)
                else:
                    rhs = displayed(x, y, unit, target)
                return assoc.evaluate_array(target, x, y), rhs

            residuals.append(guarded(target, x, y, compute))
        report = VerificationReport("frac_representation", reading, tol, residuals, "abs", "symbolic")
        report.notes.append(f"function {f.name}")
        return report

    return with_variants(run, variant, VARIANTS)


def verify_prop_fract131(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    points: Sequence[SlicePair],
    tol: float = 1e-8,
    variant: str = "corrected",
    name: str = "fract131",
) -> VerificationReport:
    """
    Gamma-weighted line values of f on C(i') against derivatives of the associated map

    Left side: y^(beta-1)/Gamma(beta) f(x + i'v) + (x-a)^(alpha-1)/Gamma(alpha) f(u + i'y).

    ``corrected`` right side: the representation combination over C(+-i) of
    D_y^(1-beta) D_x^(1-alpha) applied to the associated integral map.
    ``displayed`` right side: the frozen weights v^(-beta)/Gamma(1-beta) and
    (u-a)^(-alpha)/Gamma(1-alpha), realized on C(i), times the same line values.
    """
    expr = orient(symbolic_expr(f), dom, Side.Left)
    alpha, beta = orders.alpha.value, orders.beta.value
    x_line = freeze_y(expr, dom.v)
    y_line = freeze_x(expr, dom.u)
    lhs_sum = shifted(x_line, rgamma(beta), 0.0, beta - 1.0) + shifted(y_line, rgamma(alpha), alpha - 1.0)
    p_sum, q_sum = integral_sums(expr, dom, orders)
    derived = sym_rl_derivative_y(sym_rl_derivative_x(p_sum + q_sum, 1.0 - alpha), 1.0 - beta)
    y_weight = cpow(dom.v, -beta) * rgamma(1.0 - beta)
    x_weight = cpow(dom.u - dom.a, -alpha) * rgamma(1.0 - alpha)

    def rhs(reading: str, x: float, y: float, unit: ImaginaryUnit, target: ImaginaryUnit) -> np.ndarray:
        if reading == "corrected":
            return represent(derived.evaluate_array(unit, x, y), derived.evaluate_array(-unit, x, y), unit, target)
        on_x_line = qarray_mul(embed(y_weight, unit).to_array(), expr.evaluate_array(target, x, dom.v))
        return on_x_line + qarray_mul(embed(x_weight, unit).to_array(), expr.evaluate_array(target, dom.u, y))

    def run(reading: str) -> VerificationReport:
        residuals = []
        for x, y, unit, target in points:

            def compute(x=x, y=y, unit=unit, target=target):
                return lhs_sum.evaluate_array(target, x, y), rhs(reading, x, y, unit, target)

            residuals.append(guarded(target, x, y, compute))
        report = VerificationReport(name, reading, tol, residuals, "rel", "symbolic")
        report.notes.append(f"function {f.name}")
        return report

    return with_variants(run, variant, VARIANTS)


# Caputo and RL operators on slices


def caputo_correction(expr: MonomialSum, dom: SliceDomain, orders: OrderPair, variant: str = "corrected") -> MonomialSum:
    """
    (x-a)^(-+alpha) f(a + i v) / Gamma(1-alpha) + i y^(-+beta) f(u) / Gamma(1-beta)

    The exponents carry a minus sign in the ``corrected`` reading.
    """
    sign = 1.0 if variant == "displayed" else -1.0
    alpha, beta = orders.alpha.value, orders.beta.value
    at_base = freeze_x(freeze_y(expr, dom.v), dom.a)
    on_axis = freeze_y(freeze_x(expr, dom.u), 0.0)
    return shifted(at_base, rgamma(1.0 - alpha), sign * alpha) + shifted(
        on_axis, rgamma(1.0 - beta), 0.0, sign * beta
    ).times_left_unit()


def verify_caputo_rl_slice(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float = 1e-10,
    variant: str = "corrected",
) -> VerificationReport:
    """d_caputo_left(f) = d_rl_left(f) minus the anchor-value corrections"""
    expr = orient(symbolic_expr(f), dom, Side.Left)
    caputo = D_CAPUTO_LEFT.symbolic_sum(expr, dom, orders)
    rl = D_RL_LEFT.symbolic_sum(expr, dom, orders)

    def run(reading: str) -> VerificationReport:
        expected = rl - caputo_correction(expr, dom, orders, reading)
        residuals = compare_on_grid(caputo.evaluate_array, expected.evaluate_array, grid)
        report = VerificationReport("caputo_slice", reading, tol, residuals, "abs", "symbolic")
        report.notes.append(f"function {f.name}")
        return report

    return with_variants(run, variant, VARIANTS)


def verify_caputo_sampled(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float = 1e-5,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> VerificationReport:
    """Quadrature d_caputo_left against the exact RL side with its corrections"""
    expr = orient(symbolic_expr(f), dom, Side.Left)
    expected = D_RL_LEFT.symbolic_sum(expr, dom, orders) - caputo_correction(expr, dom, orders)

    def numeric(unit: ImaginaryUnit, x, y) -> np.ndarray:
        return D_CAPUTO_LEFT.evaluate_array(f, dom, orders, unit, x, y, cfg, "sampled")

    residuals = compare_on_grid(numeric, expected.evaluate_array, grid)
    report = VerificationReport("caputo_slice", NO_VARIANT, tol, residuals, "abs", "sampled")
    report.notes.append(f"function {f.name}")
    return report


def _operator_values(op, f, dom, orders, grid, cfg, backend):
    return evaluate_grid(lambda unit, x, y: op.evaluate_array(f, dom, orders, unit, x, y, cfg, backend), grid)


def kernel_member(norms: Sequence[PointResidual], tol: float) -> bool:
    """Every point evaluated and every |value| at most tol"""
    return all(p.error is None for p in norms) and max((p.residual for p in norms), default=0.0) <= tol


def verify_caputo_membership_equiv(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float = 1e-10,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    backend: str = None,
) -> VerificationReport:
    """
    Caputo kernel membership agrees with RL kernel membership when f(a + i v) = f(u) = 0

    Residual per point is |d_caputo_left(f) - d_rl_left(f)|. The anchor
    values are checked on every grid unit; a violation is reported in the
    notes and fails the report.
    """
    notes = []
    anchors_vanish = True
    for unit in grid.units:
        try:
            at_base = f.evaluate(unit, dom.a, dom.v).norm()
            on_axis = f.evaluate(unit, dom.u, 0.0).norm()
        except FracSliceError as exc:
            anchors_vanish = False
            notes.append(f"anchor values undefined on unit {unit.to_list()}: {exc}")
            break
        if max(at_base, on_axis) > tol:
            anchors_vanish = False
            notes.append(
                f"anchor values do not vanish on unit {unit.to_list()}: "
                f"|f(a + i v)| = {at_base:.3e}, |f(u)| = {on_axis:.3e}"
            )
            break

    used = resolve_backend(f, dom, Side.Left, backend)
    rl = _operator_values(D_RL_LEFT, f, dom, orders, grid, cfg, used)
    caputo = _operator_values(D_CAPUTO_LEFT, f, dom, orders, grid, cfg, used)
    rl_norms, caputo_norms = grid_residuals(rl), grid_residuals(caputo)
    rl_member = kernel_member(rl_norms, tol)
    caputo_member = kernel_member(caputo_norms, tol)

    report = VerificationReport("caputo_membership", NO_VARIANT, tol, grid_residuals(caputo, rl), "abs", used)
    report.checks_ok = anchors_vanish and rl_member == caputo_member
    report.notes.extend(notes)
    report.notes.append(f"function {f.name}: rl kernel {rl_member}, caputo kernel {caputo_member}")
    return report


# Factorization through the associated integral map


def verify_factorization(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float = 1e-10,
    variant: str = "corrected",
) -> VerificationReport:
    """
    d_rl_left(f) = 2 dbar assoc(f) and d_rl_rightsided(f) = -2 dbar assoc_right(f)

    f must be re-expandable about b and c (polynomial exponents).
    """
    expr = symbolic_expr(f)
    left = D_RL_LEFT.symbolic_sum(expr, dom, orders)
    right = D_RL_RIGHTSIDED.symbolic_sum(expr, dom, orders)

    def run(reading: str) -> VerificationReport:
        p_sum, q_sum = integral_sums(expr, dom, orders, reading, Side.Left)
        pr_sum, qr_sum = integral_sums(expr, dom, orders, reading, Side.Right)
        left_cr = cr_bar_sum(p_sum + q_sum).times_left(2.0)
        right_cr = cr_bar_sum(pr_sum + qr_sum).times_left(-2.0)

        def evaluator(unit: ImaginaryUnit, x, y) -> np.ndarray:
            on_left = np.linalg.norm(left.evaluate_array(unit, x, y) - left_cr.evaluate_array(unit, x, y), axis=-1)
            on_right = np.linalg.norm(right.evaluate_array(unit, x, y) - right_cr.evaluate_array(unit, x, y), axis=-1)
            return np.maximum(on_left, on_right)[..., None]

        report = VerificationReport(
            "factorization", reading, tol, grid_residuals(evaluate_grid(evaluator, grid)), "abs", "symbolic"
        )
        report.notes.append(f"function {f.name}")
        return report

    return with_variants(run, variant, VARIANTS)


def verify_factorization_sampled(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float = 1e-5,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> VerificationReport:
    """Quadrature d_rl_left against 2 dbar of the quadrature associated map"""
    assoc = assoc_integral_map(f, dom, orders, cfg=cfg, backend="sampled")
    cr_values = cr_bar_evaluator(assoc, cfg)

    def lhs(unit: ImaginaryUnit, x, y) -> np.ndarray:
        return D_RL_LEFT.evaluate_array(f, dom, orders, unit, x, y, cfg, "sampled")

    residuals = compare_on_grid(lhs, lambda unit, x, y: 2.0 * cr_values(unit, x, y), grid)
    report = VerificationReport("factorization", NO_VARIANT, tol, residuals, "abs", "sampled")
    report.notes.append(f"function {f.name}")
    return report


def verify_membership_equivalence(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float = 1e-10,
    variant: str = "corrected",
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    backend: str = None,
) -> VerificationReport:
    """
    f is in the kernel of d_rl_left exactly when its associated integral map is slice regular

    Residual per point is |d_rl_left(f) - 2 dbar assoc(f)|; the report also
    fails when the two memberships disagree.
    """
    used = resolve_backend(f, dom, Side.Left, backend)
    rl = _operator_values(D_RL_LEFT, f, dom, orders, grid, cfg, used)
    rl_member = kernel_member(grid_residuals(rl), tol)

    def run(reading: str) -> VerificationReport:
        assoc = assoc_integral_map(f, dom, orders, reading, cfg, used)
        cr_values = cr_bar_evaluator(assoc, cfg)
        doubled = evaluate_grid(lambda unit, x, y: 2.0 * cr_values(unit, x, y), grid)
        regular = kernel_member(grid_residuals(doubled), tol)
        report = VerificationReport("membership_equiv", reading, tol, grid_residuals(rl, doubled), "abs", used)
        report.checks_ok = rl_member == regular
        report.notes.append(f"function {f.name}: rl kernel {rl_member}, associated map regular {regular}")
        return report

    return with_variants(run, variant, VARIANTS)
