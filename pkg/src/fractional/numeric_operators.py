"""
NumericOperators - Riemann-Liouville and Caputo operators of complex order on real intervals

Integrals use the weakly singular rule of ``fractional.quadrature``. RL
derivatives differentiate x -> I^(1-alpha) f(x) by central differences
refined with a Richardson tableau. Right-sided operators are obtained
from the left-sided ones by the reflection t -> -t.
"""

import os
import sys
from typing import Optional, Union

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import DomainError, StencilError  # noqa: E402
from fractional.orders import ComplexOrder  # noqa: E402
from fractional.quadrature import (  # noqa: E402
    DEFAULT_QUADRATURE,
    Integrand1D,
    QuadratureConfig,
    fractional_integral,
)

OrderLike = Union[ComplexOrder, complex]


def _order_value(alpha: OrderLike) -> complex:
    value = alpha.value if isinstance(alpha, ComplexOrder) else complex(alpha)
    if not 0.0 < value.real < 1.0:
        raise DomainError(f"derivative order real part must lie in (0, 1), got {value}")
    return value


def rl_integral_left(f: Integrand1D, a: float, sigma: complex, x, cfg: QuadratureConfig = DEFAULT_QUADRATURE):
    """
    Left Riemann-Liouville integral (1/Gamma(s)) int_a^x f(t) (x - t)^(s - 1) dt

    Args:
        f: Integrand on [lo, hi] with lo <= a
        a: Lower anchor
        sigma: Order, positive real part
        x: Point or array of points in (a, hi]
        cfg: Quadrature settings

    Returns:
        Plane complex value (array for array x)

    Raises:
        DomainError: If x <= a or outside the integrand domain
        QuadratureError: If f is not finite at a node
    """
    return fractional_integral(f, a, sigma, x, cfg)


def rl_integral_right(f: Integrand1D, b: float, sigma: complex, x, cfg: QuadratureConfig = DEFAULT_QUADRATURE):
    """Right Riemann-Liouville integral (1/Gamma(s)) int_x^b f(t) (t - x)^(s - 1) dt"""
    return fractional_integral(f.reflected(), -b, sigma, -np.asarray(x, dtype=float), cfg)


def richardson_derivative(fn, x: float, h: float, levels: int) -> complex:
    """Central differences at h, h/2, ... combined by Richardson extrapolation"""
    steps = h / 2.0 ** np.arange(levels)
    values = fn(np.concatenate([x + steps, x - steps]))
    widths = (2.0 * steps).reshape((levels,) + (1,) * (values.ndim - 1))
    columns = [(values[:levels] - values[levels:]) / widths]
    for j in range(1, levels):
        previous = columns[-1]
        columns.append(previous[1:] + (previous[1:] - previous[:-1]) / (4.0 ** j - 1.0))
    return columns[-1][-1]


def _check_stencil(f: Integrand1D, a: float, x: float, cfg: QuadratureConfig) -> float:
    delta = max(10.0 * cfg.diff_step * (f.hi - a), 1e-8)
    if x < a + delta:
        raise DomainError(f"x = {x} is too close to the anchor {a} (minimum distance {delta})")
    h = cfg.diff_step * (x - a)
    if x + h > f.hi:
        raise StencilError(f"difference stencil at x = {x} leaves the domain end {f.hi}")
    return h


def rl_derivative_left(f: Integrand1D, a: float, alpha: OrderLike, x: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE):
    """
    Left Riemann-Liouville derivative d/dx I^(1-alpha) f (x)

    Raises:
        DomainError: If x is within delta of the anchor
        StencilError: If the difference stencil leaves (a, hi)
    """
    order = _order_value(alpha)
    x = float(x)
    h = _check_stencil(f, a, x, cfg)
    return richardson_derivative(
        lambda pts: fractional_integral(f, a, 1.0 - order, pts, cfg), x, h, cfg.richardson_levels
    )


def rl_derivative_right(f: Integrand1D, b: float, alpha: OrderLike, x: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE):
    """Right Riemann-Liouville derivative -d/dx I_{b-}^(1-alpha) f (x)"""
    return rl_derivative_left(f.reflected(), -b, alpha, -float(x), cfg)


def _classical_derivative(f: Integrand1D, df: Optional[Integrand1D]) -> Integrand1D:
    return finite_difference(f) if df is None else df


def caputo_left(
    f: Integrand1D,
    df: Optional[Integrand1D],
    a: float,
    alpha: OrderLike,
    x,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
):
    """
    Left Caputo derivative I^(1-alpha)[f'](x)

    ``df`` is the classical derivative of ``f``; when it is None a
    finite-difference derivative of ``f`` is used instead.
    """
    return fractional_integral(_classical_derivative(f, df), a, 1.0 - _order_value(alpha), x, cfg)


def caputo_right(
    f: Integrand1D,
    df: Optional[Integrand1D],
    b: float,
    alpha: OrderLike,
    x,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
):
    """Right Caputo derivative -I_{b-}^(1-alpha)[f'](x)"""
    return -rl_integral_right(_classical_derivative(f, df), b, 1.0 - _order_value(alpha), x, cfg)


def finite_difference(f: Integrand1D, step: float = 1e-6) -> Integrand1D:
    """
    Classical derivative of f by differences of width ``step * (hi - lo)``

    Central where the stencil fits, one-sided next to the domain ends.
    """
    h = step * (f.hi - f.lo)

    def derivative(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        lo_side = np.clip(t - h, f.lo, f.hi)
        hi_side = np.clip(t + h, f.lo, f.hi)
        width = hi_side - lo_side
        diff = f(hi_side) - f(lo_side)
        if diff.ndim > width.ndim:
            width = width[..., None]
        return diff / width

    return Integrand1D(derivative, f.lo, f.hi)
