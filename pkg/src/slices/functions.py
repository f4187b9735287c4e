"""
Functions - quaternion-valued functions on slice domains, and the builtin test functions

A slice function is evaluated as f(unit, x, y), the value at x + unit*y.
``SymbolicFunction`` wraps an exact MonomialSum; ``SampledFunction`` wraps a
vectorized callable returning quaternion arrays of shape (..., 4).
"""

import os
import sys
from dataclasses import dataclass, replace
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import DomainError  # noqa: E402
from algebra.quaternion import ImaginaryUnit, ONE, Quaternion  # noqa: E402
from fractional.monomials import (  # noqa: E402
    MonomialSum,
    MonomialTerm,
    monomial,
    power_sum,
    sym_partial,
    sym_reorient,
    sym_rl_derivative_x,
    sym_rl_derivative_y,
    sym_rl_integral_x,
    sym_rl_integral_y,
    zero_sum,
)
from fractional.orders import OrderPair, Side  # noqa: E402
from special.gamma_functions import cpow, rgamma  # noqa: E402
from slices.domain import SliceDomain  # noqa: E402

Sampler = Callable[[ImaginaryUnit, np.ndarray, np.ndarray], np.ndarray]


class SliceFunction:
    """Common interface of symbolic and sampled slice functions"""

    name: str = "f"

    @property
    def is_symbolic(self) -> bool:
        return False

    def evaluate_array(self, unit: ImaginaryUnit, x, y) -> np.ndarray:
        raise NotImplementedError

    def partial_array(self, var: str, unit: ImaginaryUnit, x, y) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, unit: ImaginaryUnit, x: float, y: float) -> Quaternion:
        return Quaternion.from_array(self.evaluate_array(unit, x, y))

    def sampled(self) -> "SampledFunction":
        raise NotImplementedError


@dataclass(frozen=True)
class SymbolicFunction(SliceFunction):
    expr: MonomialSum
    name: str = "symbolic"

    @property
    def is_symbolic(self) -> bool:
        return True

    def evaluate_array(self, unit: ImaginaryUnit, x, y) -> np.ndarray:
        return self.expr.evaluate_array(unit, x, y)

    def partial_array(self, var: str, unit: ImaginaryUnit, x, y) -> np.ndarray:
        return sym_partial(self.expr, var).evaluate_array(unit, x, y)

    def sampled(self) -> "SampledFunction":
        """Same function seen by the numeric engine, with exact partials"""
        expr = self.expr
        dx = sym_partial(expr, "x")
        dy = sym_partial(expr, "y")
        return SampledFunction(expr.evaluate_array, self.name, dx.evaluate_array, dy.evaluate_array)


@dataclass(frozen=True)
class SampledFunction(SliceFunction):
    """
    Function known only through evaluations

    Partials fall back to differences of width ``diff_step`` when no exact
    partial samplers are supplied: central inside ``x_range`` and
    ``y_range``, one-sided where the central stencil would leave them.
    """

    sampler: Sampler
    name: str = "sampled"
    partial_x: Optional[Sampler] = None
    partial_y: Optional[Sampler] = None
    diff_step: float = 1e-6
    x_range: Tuple[float, float] = (-np.inf, np.inf)
    y_range: Tuple[float, float] = (0.0, np.inf)

    def evaluate_array(self, unit: ImaginaryUnit, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        values = np.asarray(self.sampler(unit, x, y), dtype=float)
        return np.broadcast_to(values, np.broadcast(x, y).shape + (4,))

    def partial_array(self, var: str, unit: ImaginaryUnit, x, y) -> np.ndarray:
        exact = self.partial_x if var == "x" else self.partial_y
        if exact is not None:
            return np.asarray(exact(unit, x, y), dtype=float)
        h = self.diff_step
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        lo, hi = self.x_range if var == "x" else self.y_range
        t = x if var == "x" else y
        lo_side = np.clip(t - h, lo, hi)
        hi_side = np.clip(t + h, lo, hi)
        if var == "x":
            diff = self.evaluate_array(unit, hi_side, y) - self.evaluate_array(unit, lo_side, y)
        else:
            diff = self.evaluate_array(unit, x, hi_side) - self.evaluate_array(unit, x, lo_side)
        return diff / (hi_side - lo_side)[..., None]

    def within(self, x_range: Tuple[float, float], y_range: Tuple[float, float]) -> "SampledFunction":
        """Same function with difference stencils kept inside the given ranges"""
        return replace(self, x_range=(float(x_range[0]), float(x_range[1])), y_range=(float(y_range[0]), float(y_range[1])))

    def sampled(self) -> "SampledFunction":
        return self


# Builtin test functions


def constant(q: Quaternion = ONE, anchor_a: float = 0.0) -> SymbolicFunction:
    return SymbolicFunction(monomial(1.0, 0.0, 0.0, q, anchor_a), "constant")


def zero(anchor_a: float = 0.0) -> SymbolicFunction:
    return SymbolicFunction(MonomialSum((), anchor_a), "zero")


def qpower(n: int, coefficient: Quaternion = ONE, anchor_a: float = 0.0) -> SymbolicFunction:
    """f(q) = q^n * coefficient, expressed in powers of (x - a) and y"""
    expr = sym_reorient(power_sum(n, coefficient, 0.0), anchor_a, Side.Left, 0.0, Side.Left)
    return SymbolicFunction(expr, f"q^{n}")


def identity(anchor_a: float = 0.0) -> SymbolicFunction:
    return SymbolicFunction(qpower(1, ONE, anchor_a).expr, "identity")


def conjugate_function(anchor_a: float = 0.0) -> SymbolicFunction:
    """f(x + i y) = x - i y, not slice regular"""
    expr = MonomialSum(
        (MonomialTerm(1.0, 1.0, 0.0), MonomialTerm(anchor_a, 0.0, 0.0), MonomialTerm(-1j, 0.0, 1.0)), anchor_a
    )
    return SymbolicFunction(expr, "conjugate")


def _brace(g: MonomialSum, order: complex, integral_order: complex, variable: str) -> MonomialSum:
    """g - I^(integral_order) D^(order) g, with both operators in closed form"""
    if variable == "x":
        return g - sym_rl_integral_x(sym_rl_derivative_x(g, order), integral_order)
    return g - sym_rl_integral_y(sym_rl_derivative_y(g, order), integral_order)


def product(left: MonomialSum, right: MonomialSum) -> MonomialSum:
    """
    Termwise product of two sums whose left factor has real right constants

    Raises:
        DomainError: If a left right-constant is not real
    """
    terms = []
    for s in left.terms:
        if s.right_const.vector != (0.0, 0.0, 0.0):
            raise DomainError("product needs real right constants in the left factor")
        for t in right.terms:
            terms.append(
                MonomialTerm(s.scalar * t.scalar, s.mu + t.mu, s.nu + t.nu, t.right_const * s.right_const.w)
            )
    return left.with_terms(terms)


EXAMPLE45_VARIANTS = ("corrected", "displayed", "anchored")


def example45(
    q1: Quaternion,
    q2: Quaternion,
    delta: Tuple[float, float],
    gamma_p: Tuple[float, float],
    orders: OrderPair,
    dom: SliceDomain,
    variant: str = "corrected",
) -> SymbolicFunction:
    """
    Product-of-braces kernel example, as an uncollected MonomialSum

    Each brace is g - I(D^alpha g) for g in {1, (x-a)^delta} and
    g - I(D^beta g) for g in {1, y^gamma}:

    * ``corrected``: the integral is I^alpha, so every brace is
      g - I^alpha D^alpha g and the function lies in the kernel.
    * ``displayed``: the integral is I^(1-alpha), read literally.
    * ``anchored``: every brace is g(t) - g(anchor) with anchors u and v,
      which vanishes at a + i v and at u.

    Raises:
        DomainError: If delta or gamma_p real parts leave (0, 1)
    """
    if not (0.0 < delta[0] < 1.0 and 0.0 < gamma_p[0] < 1.0):
        raise DomainError(f"example needs 0 < delta_0, gamma_0 < 1, got {delta[0]}, {gamma_p[0]}")
    if variant not in EXAMPLE45_VARIANTS:
        raise DomainError(f"unknown example variant {variant!r}")
    a = dom.a
    alpha, beta = orders.alpha.value, orders.beta.value
    d = complex(*delta)
    g = complex(*gamma_p)
    one = monomial(1.0, anchor_a=a)
    x_power = monomial(1.0, d, 0.0, anchor_a=a)
    y_power = monomial(1.0, 0.0, g, anchor_a=a)

    if variant == "anchored":
        braces = [
            zero_sum(a),
            zero_sum(a),
            x_power - monomial(cpow(dom.u - a, d), anchor_a=a),
            y_power - monomial(cpow(dom.v, g), anchor_a=a),
        ]
    else:
        ix = alpha if variant == "corrected" else 1.0 - alpha
        iy = beta if variant == "corrected" else 1.0 - beta
        braces = [
            _brace(one, alpha, ix, "x"),
            _brace(one, beta, iy, "y"),
            _brace(x_power, alpha, ix, "x"),
            _brace(y_power, beta, iy, "y"),
        ]

    first = product(braces[0], braces[1]).times_right(q1)
    second = product(braces[2], braces[3]).times_right(q2).times_left_unit()
    return SymbolicFunction(first + second, f"example45[{variant}]")


def kernel_seed(q: Quaternion, orders: OrderPair, anchor_a: float = 0.0) -> SymbolicFunction:
    """(x - a)^(alpha - 1) y^(beta - 1) q: both power rules hit a reciprocal-Gamma zero"""
    expr = monomial(1.0, orders.alpha.value - 1.0, orders.beta.value - 1.0, q, anchor_a)
    return SymbolicFunction(expr, "kernel_seed")


def kernel_linear(k: Quaternion, orders: OrderPair, dom: SliceDomain) -> SymbolicFunction:
    """
    Kernel member whose associated integral map is (x - a + i y) k + const

    f = (x-a)^alpha / Gamma(1+alpha) (y/v)^(beta-1) k
        + i y^beta / Gamma(1+beta) ((x-a)/(u-a))^(alpha-1) k
    """
    if not (dom.u > dom.a and dom.v > 0.0):
        raise DomainError("kernel_linear needs u > a and v > 0")
    alpha, beta = orders.alpha.value, orders.beta.value
    first = MonomialTerm(rgamma(1.0 + alpha) * cpow(dom.v, 1.0 - beta), alpha, beta - 1.0, k)
    second = MonomialTerm(1j * rgamma(1.0 + beta) * cpow(dom.u - dom.a, 1.0 - alpha), alpha - 1.0, beta, k)
    return SymbolicFunction(MonomialSum((first, second), dom.a), "kernel_linear")


def anchored_product(
    q: Quaternion, mu: complex, nu: complex, dom: SliceDomain
) -> SymbolicFunction:
    """((x-a)^mu - (u-a)^mu) (y^nu - v^nu) q, zero at a + i v and on the real axis"""
    a = dom.a
    x_part = monomial(1.0, mu, 0.0, anchor_a=a) - monomial(cpow(dom.u - a, mu), anchor_a=a)
    y_part = monomial(1.0, 0.0, nu, anchor_a=a) - monomial(cpow(dom.v, nu), anchor_a=a)
    return SymbolicFunction(product(x_part, y_part).times_right(q), "anchored_product")


def builtin_names() -> Sequence[str]:
    return tuple(sorted(_BUILTINS))


DEFAULT_Q1 = Quaternion(1.0, 0.5, -0.25, 0.75)
DEFAULT_Q2 = Quaternion(0.5, -1.0, 0.25, 0.5)
DEFAULT_DELTA = (0.3, 0.2)
DEFAULT_GAMMA = (0.6, -0.1)


def default_example45(dom: SliceDomain, orders: OrderPair, variant: str = "corrected") -> SymbolicFunction:
    return example45(DEFAULT_Q1, DEFAULT_Q2, DEFAULT_DELTA, DEFAULT_GAMMA, orders, dom, variant)


_BUILTINS: Dict[str, Callable[[SliceDomain, OrderPair], SliceFunction]] = {
    "one": lambda dom, orders: constant(ONE, dom.a),
    "zero": lambda dom, orders: zero(dom.a),
    "identity": lambda dom, orders: identity(dom.a),
    "square": lambda dom, orders: qpower(2, ONE, dom.a),
    "conjugate": lambda dom, orders: conjugate_function(dom.a),
    "example45": lambda dom, orders: default_example45(dom, orders),
    "example45_displayed": lambda dom, orders: default_example45(dom, orders, "displayed"),
    "example45_anchored": lambda dom, orders: default_example45(dom, orders, "anchored"),
    "kernel_seed": lambda dom, orders: kernel_seed(Quaternion(1.0, 0.0, 1.0, 0.0), orders, dom.a),
    "kernel_linear": lambda dom, orders: kernel_linear(Quaternion(0.0, 1.0, 0.0, 1.0), orders, dom),
}


def builtin(name: str, dom: SliceDomain, orders: OrderPair) -> SliceFunction:
    """
    Look up a builtin test function by name

    Raises:
        DomainError: If the name is unknown
    """
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise DomainError(f"unknown builtin function {name!r}; choose from {', '.join(builtin_names())}")
    return factory(dom, orders)


__all__ = [
    "SliceFunction",
    "SymbolicFunction",
    "SampledFunction",
    "constant",
    "zero",
    "qpower",
    "identity",
    "conjugate_function",
    "example45",
    "default_example45",
    "kernel_seed",
    "kernel_linear",
    "anchored_product",
    "builtin",
    "builtin_names",
    "product",
]
