"""
Operators - fractional slice Cauchy-Riemann operators and the associated integral map

Every operator combines an x-part, taken along the line x + i v, with a
y-part, taken along the line u + i y:

    D f = D_x^alpha f(x + i v) + i * D_y^beta f(u + i y)

Left-linear operators multiply the y-part by the unit on the left, the
right-linear ones on the right. Symbolic functions go through the exact
power rules. Sampled functions are split on the slice as F + G*j and the
two complex components go through the numeric engine together.
"""

import os
import sys
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import DomainError, FracSliceError  # noqa: E402
from utils.logger import get_logger  # noqa: E402
from utils.parallel import ordered_map  # noqa: E402
from algebra.quaternion import (  # noqa: E402
    ImaginaryUnit,
    Quaternion,
    combine_array,
    orthogonal_unit,
    qarray_mul,
    split_array,
)
from fractional.monomials import (  # noqa: E402
    MonomialSum,
    freeze_x,
    freeze_y,
    is_reorientable,
    sym_caputo_x,
    sym_caputo_y,
    sym_partial,
    sym_reorient,
    sym_rl_derivative_x,
    sym_rl_derivative_y,
    sym_rl_integral_x,
    sym_rl_integral_y,
)
from fractional.numeric_operators import (  # noqa: E402
    caputo_left,
    caputo_right,
    richardson_derivative,
    rl_derivative_left,
    rl_derivative_right,
    rl_integral_left,
    rl_integral_right,
)
from fractional.orders import OrderPair, Side  # noqa: E402
from fractional.quadrature import DEFAULT_QUADRATURE, Integrand1D, QuadratureConfig  # noqa: E402
from slices.domain import GridSpec, SliceDomain  # noqa: E402
from slices.functions import SampledFunction, SliceFunction, SymbolicFunction  # noqa: E402
from verification.report import PointResidual, VerificationReport  # noqa: E402

logger = get_logger(__name__)

RL = "rl"
CAPUTO = "caputo"
BACKENDS = ("symbolic", "sampled")

GridValue = Tuple[ImaginaryUnit, float, float, Optional[np.ndarray], Optional[str]]


# Orientation and backend selection


def _anchors(dom: SliceDomain, side: Side) -> Tuple[float, float]:
    return (dom.a, 0.0) if side is Side.Left else (dom.b, dom.c)


def is_oriented(expr: MonomialSum, dom: SliceDomain, side: Side) -> bool:
    anchor_x, anchor_y = _anchors(dom, side)
    return (expr.x_side, expr.y_side, expr.anchor_a, expr.anchor_y) == (side, side, anchor_x, anchor_y)


def orient(expr: MonomialSum, dom: SliceDomain, side: Side) -> MonomialSum:
    """
    The sum written in the bases of ``side``

    Raises:
        DomainError: If a re-expansion is needed and an exponent is not a nonnegative integer
    """
    if is_oriented(expr, dom, side):
        return expr
    anchor_x, anchor_y = _anchors(dom, side)
    return sym_reorient(expr, anchor_x, side, anchor_y, side)


def resolve_backend(f: SliceFunction, dom: SliceDomain, side: Side, backend: Optional[str] = None) -> str:
    """
    Pick the evaluation path

    Symbolic functions use the exact rules unless the sampled path is
    requested or the sum cannot be written in the bases of ``side``.
    """
    if backend is not None and backend not in BACKENDS:
        raise DomainError(f"unknown backend {backend!r}")
    if not f.is_symbolic:
        if backend == "symbolic":
            raise DomainError(f"function {f.name} has no symbolic form")
        return "sampled"
    if backend == "sampled":
        return "sampled"
    if is_oriented(f.expr, dom, side) or is_reorientable(f.expr):
        return "symbolic"
    if backend == "symbolic":
        raise DomainError(f"function {f.name} cannot be re-expanded for the {side.name} side")
    logger.debug("%s: falling back to the sampled path on the %s side", f.name, side.name)
    return "sampled"


def _check_points(dom: SliceDomain, side: Side, x, y) -> None:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if side is Side.Left:
        if np.any(x <= dom.a) or np.any(y <= 0.0):
            raise DomainError(f"left-sided operators need x > {dom.a} and y > 0")
    elif np.any(x >= dom.b) or np.any(y >= dom.c):
        raise DomainError(f"right-sided operators need x < {dom.b} and y < {dom.c}")


def _attach_unit(x_part: np.ndarray, y_part: np.ndarray, unit: ImaginaryUnit, right_linear: bool) -> np.ndarray:
    unit_q = unit.quaternion.to_array()
    if right_linear:
        return x_part + qarray_mul(y_part, unit_q)
    return x_part + qarray_mul(unit_q, y_part)


# Sampled lines


def _line(
    f: SliceFunction, unit: ImaginaryUnit, unit_j: ImaginaryUnit, var: str, fixed: float, lo: float, hi: float,
    partial: bool = False,
) -> Integrand1D:
    """Stacked components (F, G) of f, or of its partial in var, along one coordinate line"""

    def fn(t: np.ndarray) -> np.ndarray:
        x, y = (t, fixed) if var == "x" else (fixed, t)
        values = f.partial_array(var, unit, x, y) if partial else f.evaluate_array(unit, x, y)
        f_part, g_part = split_array(values, unit, unit_j)
        return np.stack([f_part, g_part], axis=-1)

    return Integrand1D(fn, lo, hi)


def _lines(f: SliceFunction, dom: SliceDomain, unit: ImaginaryUnit, partial: bool = False):
    unit_j = orthogonal_unit(unit)
    x_line = _line(f, unit, unit_j, "x", dom.v, dom.a, dom.b, partial)
    y_line = _line(f, unit, unit_j, "y", dom.u, 0.0, dom.c, partial)
    return unit_j, x_line, y_line


def _on_unique(values: np.ndarray, compute: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Evaluate compute once per distinct coordinate, scatter back to values' shape"""
    flat = np.asarray(values, dtype=float).reshape(-1)
    distinct, inverse = np.unique(flat, return_inverse=True)
    out = np.asarray(compute(distinct))
    return out[inverse].reshape(np.shape(values) + out.shape[1:])


# Operators


@dataclass(frozen=True)
class SliceOperator:
    """
    One of the fractional slice Cauchy-Riemann operators

    Args:
        name: Registered operator name
        kind: ``"rl"`` (Riemann-Liouville) or ``"caputo"``
        side: Left (anchors a and 0) or Right (anchors b and c)
        right_linear: Multiply the y-part by the unit on the right
    """

    name: str
    kind: str
    side: Side = Side.Left
    right_linear: bool = False

    def symbolic_parts(self, expr: MonomialSum, dom: SliceDomain, orders: OrderPair) -> Tuple[MonomialSum, MonomialSum]:
        """Exact x-part and y-part sums, the y-part without its unit factor"""
        oriented = orient(expr, dom, self.side)
        x_line = freeze_y(oriented, dom.v)
        y_line = freeze_x(oriented, dom.u)
        if self.kind == RL:
            return sym_rl_derivative_x(x_line, orders.alpha), sym_rl_derivative_y(y_line, orders.beta)
        return sym_caputo_x(x_line, orders.alpha), sym_caputo_y(y_line, orders.beta)

    def symbolic_sum(self, expr: MonomialSum, dom: SliceDomain, orders: OrderPair) -> MonomialSum:
        """
        The whole left-linear result as one raw MonomialSum

        Raises:
            DomainError: For right-linear operators, whose unit factor is not a formal scalar
        """
        if self.right_linear:
            raise DomainError(f"{self.name} multiplies by the unit on the right and has no formal sum")
        x_part, y_part = self.symbolic_parts(expr, dom, orders)
        return x_part + y_part.times_left_unit()

    def _sampled_parts(
        self, f: SliceFunction, dom: SliceDomain, orders: OrderPair, unit: ImaginaryUnit, x, y, cfg: QuadratureConfig
    ) -> Tuple[np.ndarray, np.ndarray]:
        g = f.sampled().within((dom.a, dom.b), (0.0, dom.c))
        alpha, beta = orders.alpha, orders.beta
        if self.kind == RL:
            unit_j, x_line, y_line = _lines(g, dom, unit)
            if self.side is Side.Left:
                x_vals = _on_unique(x, lambda xs: [rl_derivative_left(x_line, dom.a, alpha, t, cfg) for t in xs])
                y_vals = _on_unique(y, lambda ys: [rl_derivative_left(y_line, 0.0, beta, t, cfg) for t in ys])
            else:
                x_vals = _on_unique(x, lambda xs: [rl_derivative_right(x_line, dom.b, alpha, t, cfg) for t in xs])
                y_vals = _on_unique(y, lambda ys: [rl_derivative_right(y_line, dom.c, beta, t, cfg) for t in ys])
        else:
            _, fx, fy = _lines(g, dom, unit)
            unit_j, dx, dy = _lines(g, dom, unit, partial=True)
            if self.side is Side.Left:
                x_vals = _on_unique(x, lambda xs: caputo_left(fx, dx, dom.a, alpha, xs, cfg))
                y_vals = _on_unique(y, lambda ys: caputo_left(fy, dy, 0.0, beta, ys, cfg))
            else:
                x_vals = _on_unique(x, lambda xs: caputo_right(fx, dx, dom.b, alpha, xs, cfg))
                y_vals = _on_unique(y, lambda ys: caputo_right(fy, dy, dom.c, beta, ys, cfg))
        x_part = combine_array(x_vals[..., 0], x_vals[..., 1], unit, unit_j)
        y_part = combine_array(y_vals[..., 0], y_vals[..., 1], unit, unit_j)
        return x_part, y_part

    def parts_array(
        self,
        f: SliceFunction,
        dom: SliceDomain,
        orders: OrderPair,
        unit: ImaginaryUnit,
        x,
        y,
        cfg: QuadratureConfig = DEFAULT_QUADRATURE,
        backend: Optional[str] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """x-part and y-part (without the unit) as quaternion arrays"""
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        _check_points(dom, self.side, x, y)
        if resolve_backend(f, dom, self.side, backend) == "symbolic":
            x_sum, y_sum = self.symbolic_parts(f.expr, dom, orders)
            return x_sum.evaluate_array(unit, x, y), y_sum.evaluate_array(unit, x, y)
        return self._sampled_parts(f, dom, orders, unit, x, y, cfg)

    def evaluate_array(
        self,
        f: SliceFunction,
        dom: SliceDomain,
        orders: OrderPair,
        unit: ImaginaryUnit,
        x,
        y,
        cfg: QuadratureConfig = DEFAULT_QUADRATURE,
        backend: Optional[str] = None,
    ) -> np.ndarray:
        x_part, y_part = self.parts_array(f, dom, orders, unit, x, y, cfg, backend)
        return _attach_unit(x_part, y_part, unit, self.right_linear)

    def __call__(
        self,
        f: SliceFunction,
        dom: SliceDomain,
        orders: OrderPair,
        unit: ImaginaryUnit,
        x: float,
        y: float,
        cfg: QuadratureConfig = DEFAULT_QUADRATURE,
        backend: Optional[str] = None,
    ) -> Quaternion:
        return Quaternion.from_array(self.evaluate_array(f, dom, orders, unit, x, y, cfg, backend))


D_RL_LEFT = SliceOperator("d_rl_left", RL)
D_RL_RIGHTSIDED = SliceOperator("d_rl_rightsided", RL, Side.Right)
D_RL_LEFT_R = SliceOperator("d_rl_left_r", RL, Side.Left, right_linear=True)
D_RL_RIGHTSIDED_R = SliceOperator("d_rl_rightsided_r", RL, Side.Right, right_linear=True)
D_CAPUTO_LEFT = SliceOperator("d_caputo_left", CAPUTO)
D_CAPUTO_RIGHTSIDED = SliceOperator("d_caputo_rightsided", CAPUTO, Side.Right)
D_CAPUTO_LEFT_R = SliceOperator("d_caputo_left_r", CAPUTO, Side.Left, right_linear=True)
D_CAPUTO_RIGHTSIDED_R = SliceOperator("d_caputo_rightsided_r", CAPUTO, Side.Right, right_linear=True)

OPERATORS = {
    op.name: op
    for op in (
        D_RL_LEFT,
        D_RL_RIGHTSIDED,
        D_RL_LEFT_R,
        D_RL_RIGHTSIDED_R,
        D_CAPUTO_LEFT,
        D_CAPUTO_RIGHTSIDED,
        D_CAPUTO_LEFT_R,
        D_CAPUTO_RIGHTSIDED_R,
    )
}


def d_rl_left(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    """D_{a+}^alpha f(x + i v) + i D_{0+}^beta f(u + i y) on the slice C(unit)"""
    return D_RL_LEFT(f, dom, orders, unit, x, y, cfg, backend)


def d_rl_rightsided(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    """D_{b-}^alpha f(x + i v) + i D_{c-}^beta f(u + i y), bases (b - x) and (c - y)"""
    return D_RL_RIGHTSIDED(f, dom, orders, unit, x, y, cfg, backend)


def d_rl_left_rlinear(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    return D_RL_LEFT_R(f, dom, orders, unit, x, y, cfg, backend)


def d_rl_rightsided_r(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    return D_RL_RIGHTSIDED_R(f, dom, orders, unit, x, y, cfg, backend)


def d_caputo_left(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    """I_{a+}^(1-alpha)[df/dx](x + i v) + i I_{0+}^(1-beta)[df/dy](u + i y)"""
    return D_CAPUTO_LEFT(f, dom, orders, unit, x, y, cfg, backend)


def d_caputo_rightsided(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    """-(I_{b-}^(1-alpha)[df/dx](x + i v) + i I_{c-}^(1-beta)[df/dy](u + i y))"""
    return D_CAPUTO_RIGHTSIDED(f, dom, orders, unit, x, y, cfg, backend)


def d_caputo_left_r(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    return D_CAPUTO_LEFT_R(f, dom, orders, unit, x, y, cfg, backend)


def d_caputo_rightsided_r(f, dom, orders, unit, x, y, cfg=DEFAULT_QUADRATURE, backend=None) -> Quaternion:
    return D_CAPUTO_RIGHTSIDED_R(f, dom, orders, unit, x, y, cfg, backend)


# Fractional integrals and the associated map


def integral_orders(orders: OrderPair, variant: str = "corrected") -> Tuple[complex, complex]:
    """
    Orders of the x and y integrals of the associated map

    ``displayed`` conjugates the imaginary part of the y order: 1 - beta_0 + i beta_1.
    """
    sigma_y = 1.0 - orders.beta.value if variant != "displayed" else 1.0 - orders.beta.value.conjugate()
    return 1.0 - orders.alpha.value, sigma_y


def integral_sums(
    expr: MonomialSum, dom: SliceDomain, orders: OrderPair, variant: str = "corrected", side: Side = Side.Left
) -> Tuple[MonomialSum, MonomialSum]:
    """Exact I^(1-alpha) f(x + i v) and I^(1-beta) f(u + i y)"""
    sigma_x, sigma_y = integral_orders(orders, variant)
    oriented = orient(expr, dom, side)
    return (
        sym_rl_integral_x(freeze_y(oriented, dom.v), sigma_x),
        sym_rl_integral_y(freeze_x(oriented, dom.u), sigma_y),
    )


def _sampled_integrals(
    f: SliceFunction, dom: SliceDomain, orders: OrderPair, unit: ImaginaryUnit, x, y,
    cfg: QuadratureConfig, variant: str, side: Side,
) -> Tuple[np.ndarray, np.ndarray]:
    sigma_x, sigma_y = integral_orders(orders, variant)
    unit_j, x_line, y_line = _lines(f.sampled(), dom, unit)
    if side is Side.Left:
        x_vals = _on_unique(x, lambda xs: rl_integral_left(x_line, dom.a, sigma_x, xs, cfg))
        y_vals = _on_unique(y, lambda ys: rl_integral_left(y_line, 0.0, sigma_y, ys, cfg))
    else:
        x_vals = _on_unique(x, lambda xs: rl_integral_right(x_line, dom.b, sigma_x, xs, cfg))
        y_vals = _on_unique(y, lambda ys: rl_integral_right(y_line, dom.c, sigma_y, ys, cfg))
    return (
        combine_array(x_vals[..., 0], x_vals[..., 1], unit, unit_j),
        combine_array(y_vals[..., 0], y_vals[..., 1], unit, unit_j),
    )


def integral_parts_array(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    unit: ImaginaryUnit,
    x,
    y,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    backend: Optional[str] = None,
    variant: str = "corrected",
    side: Side = Side.Left,
) -> Tuple[np.ndarray, np.ndarray]:
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    _check_points(dom, side, x, y)
    if resolve_backend(f, dom, side, backend) == "symbolic":
        p_sum, q_sum = integral_sums(f.expr, dom, orders, variant, side)
        return p_sum.evaluate_array(unit, x, y), q_sum.evaluate_array(unit, x, y)
    return _sampled_integrals(f, dom, orders, unit, x, y, cfg, variant, side)


def slice_fractional_integrals(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    unit: ImaginaryUnit,
    x: float,
    y: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    backend: Optional[str] = None,
    variant: str = "corrected",
) -> Tuple[Quaternion, Quaternion]:
    """
    Left slice fractional integrals at x + unit*y

    Returns:
        Tuple (I_{a+}^(1-alpha) f(x + i v), I_{0+}^(1-beta) f(u + i y))

    Raises:
        DomainError: If x <= a or y <= 0
    """
    ix, iy = integral_parts_array(f, dom, orders, unit, x, y, cfg, backend, variant)
    return Quaternion.from_array(ix), Quaternion.from_array(iy)


def _assoc_map(
    f: SliceFunction, dom: SliceDomain, orders: OrderPair, variant: str, side: Side,
    cfg: QuadratureConfig, backend: Optional[str],
) -> SliceFunction:
    label = "assoc" if side is Side.Left else "assoc_right"
    if resolve_backend(f, dom, side, backend) == "symbolic":
        p_sum, q_sum = integral_sums(f.expr, dom, orders, variant, side)
        return SymbolicFunction(p_sum + q_sum, f"{label}[{f.name}]")

    def sampler(unit: ImaginaryUnit, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        p_part, q_part = _sampled_integrals(f, dom, orders, unit, x, y, cfg, variant, side)
        return p_part + q_part

    return SampledFunction(sampler, f"{label}[{f.name}]", x_range=(dom.a, dom.b), y_range=(0.0, dom.c))


def assoc_integral_map(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    variant: str = "corrected",
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    backend: Optional[str] = None,
) -> SliceFunction:
    """
    The map x + i y -> I_{a+}^(1-alpha) f(x + i v) + I_{0+}^(1-beta) f(u + i y)

    f lies in the kernel of d_rl_left exactly when this map is slice
    regular, since d_rl_left(f) = 2 * cr_bar(map).
    """
    return _assoc_map(f, dom, orders, variant, Side.Left, cfg, backend)


def assoc_integral_map_rightsided(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    variant: str = "corrected",
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    backend: Optional[str] = None,
) -> SliceFunction:
    """b-/c- counterpart; d_rl_rightsided(f) = -2 * cr_bar(map)"""
    return _assoc_map(f, dom, orders, variant, Side.Right, cfg, backend)


# Classical slice Cauchy-Riemann operators


def cr_bar_sum(expr: MonomialSum) -> MonomialSum:
    """(1/2)(d/dx + i d/dy) of a symbolic sum"""
    return (sym_partial(expr, "x") + sym_partial(expr, "y").times_left_unit()).times_left(0.5)


def _partials(g: SliceFunction, unit: ImaginaryUnit, x: float, y: float, cfg: QuadratureConfig):
    if g.is_symbolic:
        return g.partial_array("x", unit, x, y), g.partial_array("y", unit, x, y)
    h = cfg.diff_step * max(1.0, abs(x), abs(y))
    levels = cfg.richardson_levels
    dx = richardson_derivative(lambda pts: g.evaluate_array(unit, pts, y), x, h, levels)
    dy = richardson_derivative(lambda pts: g.evaluate_array(unit, x, pts), y, h, levels)
    return dx, dy


def cr_bar(g: SliceFunction, unit: ImaginaryUnit, x: float, y: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> Quaternion:
    """
    (1/2)(d/dx + unit * d/dy) g on the slice C(unit)

    Exact for symbolic g; Richardson-refined central differences otherwise.
    """
    dx, dy = _partials(g, unit, float(x), float(y), cfg)
    return Quaternion.from_array(0.5 * _attach_unit(np.asarray(dx), np.asarray(dy), unit, False))


def cr_bar_right(g: SliceFunction, unit: ImaginaryUnit, x: float, y: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> Quaternion:
    """(1/2)(d/dx g + d/dy g * unit), the right slice Cauchy-Riemann operator"""
    dx, dy = _partials(g, unit, float(x), float(y), cfg)
    return Quaternion.from_array(0.5 * _attach_unit(np.asarray(dx), np.asarray(dy), unit, True))


# Grids and kernel membership


def evaluate_grid(evaluator: Callable[[ImaginaryUnit, np.ndarray, np.ndarray], np.ndarray], grid: GridSpec) -> List[GridValue]:
    """
    Evaluate over a grid in GridSpec.points() order

    Each unit is tried as one vectorized call; if that raises, its points
    are retried one by one and failures are recorded per point.
    """
    xs = np.array(grid.xs, dtype=float)
    ys = np.array(grid.ys, dtype=float)
    x_mesh, y_mesh = np.meshgrid(xs, ys, indexing="ij")

    def per_unit(unit: ImaginaryUnit) -> List[GridValue]:
        try:
            values = evaluator(unit, x_mesh, y_mesh)
            return [
                (unit, float(x), float(y), values[i, k], None)
                for i, x in enumerate(xs)
                for k, y in enumerate(ys)
            ]
        except FracSliceError as exc:
            logger.debug("vectorized evaluation failed on unit %s: %s", unit.to_list(), exc)
        rows: List[GridValue] = []
        for x in xs:
            for y in ys:
                try:
                    rows.append((unit, float(x), float(y), evaluator(unit, np.array(x), np.array(y)), None))
                except FracSliceError as exc:
                    rows.append((unit, float(x), float(y), None, str(exc)))
        return rows

    return [row for rows in ordered_map(per_unit, grid.units) for row in rows]


def grid_residuals(values: List[GridValue], references: List[GridValue] = None) -> List[PointResidual]:
    """Norms of the values (or of value - reference) as point residuals"""
    out = []
    for index, (unit, x, y, value, error) in enumerate(values):
        ref = references[index] if references is not None else None
        if ref is not None and ref[4] is not None:
            error = error or ref[4]
        if error is not None or value is None:
            out.append(PointResidual(unit.vector, x, y, float("inf"), 0.0, error))
            continue
        target = ref[3] if ref is not None else np.zeros(4)
        residual = float(np.linalg.norm(np.asarray(value) - target))
        scale = float(np.linalg.norm(target)) if ref is not None else float(np.linalg.norm(value))
        out.append(PointResidual(unit.vector, x, y, residual, scale))
    return out


def is_rl_slice_regular(
    f: SliceFunction,
    dom: SliceDomain,
    orders: OrderPair,
    grid: GridSpec,
    tol: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    backend: Optional[str] = None,
    variant: str = "corrected",
) -> VerificationReport:
    """
    Check that d_rl_left(f) vanishes on every grid point

    Returns:
        Report whose residuals are |d_rl_left(f)| per point
    """
    used = resolve_backend(f, dom, Side.Left, backend)

    def evaluator(unit, x, y):
        return D_RL_LEFT.evaluate_array(f, dom, orders, unit, x, y, cfg, used)

    residuals = grid_residuals(evaluate_grid(evaluator, grid))
    report = VerificationReport("rl_slice_regular", variant, tol, residuals, "abs", used)
    report.notes.append(f"function {f.name}")
    return report
