"""
Quadrature - weakly singular quadrature for fractional integrals of complex order

The rule for (1/Gamma(s)) * int_a^x g(t) (x - t)^(s - 1) dt splits [a, x]
at its midpoint m:

* [m, x] uses product integration: g is expanded in Legendre polynomials
  and the moments int_0^1 u^(s-1) P_n(2u - 1) du are applied in closed
  form, so the complex kernel is integrated exactly.
* [a, m] is covered by Gauss-Legendre panels that shrink geometrically
  toward a, which resolves endpoint behaviour (t - a)^mu of g.
"""

import os
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple, Union

import numpy as np
from numpy.polynomial import legendre

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import DomainError, QuadratureError  # noqa: E402
from special.gamma_functions import rgamma  # noqa: E402

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class QuadratureConfig:
    """
    Settings of the fractional quadrature and outer derivative

    Args:
        nodes: Gauss points on the panel next to the evaluation point
        diff_step: Finite-difference step relative to the distance from the anchor
        richardson_levels: Columns of the Richardson tableau
        grading_levels: Number of geometrically graded panels toward the anchor
        grading_ratio: Length ratio between consecutive graded panels
    """

    nodes: int = 64
    diff_step: float = 1e-5
    richardson_levels: int = 2
    grading_levels: int = 24
    grading_ratio: float = 0.1

    def __post_init__(self):
        if self.nodes < 8:
            raise DomainError(f"quadrature needs at least 8 nodes, got {self.nodes}")
        if self.diff_step <= 0:
            raise DomainError("diff_step must be positive")
        if self.richardson_levels < 1:
            raise DomainError("richardson_levels must be at least 1")
        if self.grading_levels < 1 or not 0.0 < self.grading_ratio < 1.0:
            raise DomainError("grading needs levels >= 1 and a ratio in (0, 1)")

    @property
    def panel_nodes(self) -> int:
        return max(8, self.nodes // 2)

    @classmethod
    def from_settings(cls, settings) -> "QuadratureConfig":
        """Build from the RunConfig quadrature section"""
        return cls(
            nodes=settings.nodes,
            diff_step=settings.diff_step,
            richardson_levels=settings.richardson_levels,
            grading_levels=settings.grading_levels,
            grading_ratio=settings.grading_ratio,
        )


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class Integrand1D:
    """
    Integrand on [lo, hi]

    ``fn`` takes an array of abscissae and returns complex values of the same
    shape, or of that shape plus one trailing axis for stacked components.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"integrand domain [{self.lo}, {self.hi}] is empty")

    def __call__(self, t: ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        values = np.asarray(self.fn(t), dtype=complex)
        if not np.all(np.isfinite(values)):
            raise QuadratureError(f"integrand is not finite on nodes in [{t.min()}, {t.max()}]")
        return values

    @classmethod
    def from_scalar(cls, fn: Callable[[float], complex], lo: float, hi: float) -> "Integrand1D":
        """Wrap a scalar callable"""
        return cls(np.vectorize(fn, otypes=[complex]), lo, hi)

    def reflected(self) -> "Integrand1D":
        """t -> f(-t) on [-hi, -lo]"""
        fn = self.fn
        return Integrand1D(lambda t: fn(-t), -self.hi, -self.lo)

    def scaled(self, factor: complex) -> "Integrand1D":
        fn = self.fn
        return Integrand1D(lambda t: factor * np.asarray(fn(t), dtype=complex), self.lo, self.hi)


@lru_cache(maxsize=256)
def product_weights(nodes: int, sigma: complex) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and complex weights for int_0^1 g(u) u^(sigma - 1) du

    Returns:
        Tuple (u, weights) with u in (0, 1)
    """
    t, w = legendre.leggauss(nodes)
    moments = np.empty(nodes, dtype=complex)
    moments[0] = 1.0 / sigma
    for n in range(1, nodes):
        moments[n] = moments[n - 1] * (sigma - n) / (sigma + n)
    scale = (2.0 * np.arange(nodes) + 1.0) / 2.0
    vander = legendre.legvander(t, nodes - 1)
    weights = w * (vander @ (scale * moments))
    return (t + 1.0) / 2.0, weights


@lru_cache(maxsize=64)
def graded_rule(panel_nodes: int, levels: int, ratio: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Composite Gauss-Legendre rule on [0, 1] graded toward 0

    Panels are [r^(k+1), r^k] for k < levels plus [0, r^levels].
    """
    t, w = legendre.leggauss(panel_nodes)
    edges = ratio ** np.arange(levels + 1, dtype=float)
    edges = np.append(edges, 0.0)
    lo, hi = edges[1:], edges[:-1]
    half = (hi - lo) / 2.0
    points = (lo + half)[:, None] + half[:, None] * t[None, :]
    weights = half[:, None] * w[None, :]
    return points.reshape(-1), weights.reshape(-1)


def _weighted_sum(weights: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Sum over the node axis; values may carry one trailing component axis"""
    if values.ndim == weights.ndim + 1:
        return (weights[..., None] * values).sum(axis=-2)
    return (weights * values).sum(axis=-1)


def fractional_integral(f: Integrand1D, a: float, sigma: complex, x: ArrayLike, cfg: QuadratureConfig) -> np.ndarray:
    """
    Left Riemann-Liouville integral at one or many points

    Args:
        f: Integrand with a >= f.lo and x <= f.hi
        a: Anchor
        sigma: Order with positive real part
        x: Evaluation point(s), each > a
        cfg: Quadrature settings

    Returns:
        Complex array shaped like x (plus the component axis of f, if any)
    """
    sigma = complex(sigma)
    if not sigma.real > 0.0:
        raise DomainError(f"integral order needs a positive real part, got {sigma}")
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if a < f.lo:
        raise DomainError(f"anchor {a} lies below the integrand domain [{f.lo}, {f.hi}]")
    if np.any(x_arr <= a):
        raise DomainError(f"evaluation point must exceed the anchor {a}, got {x_arr.min()}")
    if np.any(x_arr > f.hi):
        raise DomainError(f"evaluation point {x_arr.max()} exceeds the integrand domain end {f.hi}")

    half = (x_arr - a) / 2.0
    u, w_near = product_weights(cfg.nodes, sigma)
    near_nodes = x_arr[:, None] - half[:, None] * u[None, :]
    near_weights = np.exp(sigma * np.log(half))[:, None] * w_near[None, :]

    xi, w_far = graded_rule(cfg.panel_nodes, cfg.grading_levels, cfg.grading_ratio)
    far_nodes = a + half[:, None] * xi[None, :]
    kernel = np.exp((sigma - 1.0) * np.log(x_arr[:, None] - far_nodes))
    far_weights = half[:, None] * w_far[None, :] * kernel

    nodes = np.concatenate([near_nodes, far_nodes], axis=1)
    weights = np.concatenate([near_weights, far_weights], axis=1)
    values = f(nodes)
    result = _weighted_sum(weights, values) * rgamma(sigma)
    if np.ndim(x) == 0:
        return result[0]
    return result
