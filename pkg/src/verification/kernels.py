"""
Kernels - power series, the fractional Cauchy kernel N and contour integrals on slices

Series and kernel identities compare exact MonomialSum power rules with
independently summed closed forms. Contour integrals use the trapezoid
rule on a circle, which is spectrally accurate for periodic integrands.
"""

import math
import os
import sys
import warnings
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.config import VARIANTS  # noqa: E402
from utils.errors import ConvergenceWarning, DomainError  # noqa: E402
from utils.logger import get_logger  # noqa: E402
from algebra.quaternion import (  # noqa: E402
    E1,
    E2,
    E3,
    ImaginaryUnit,
    ONE,
    Quaternion,
    SliceComplex,
    embed,
    embed_array,
    qarray_mul,
    random_units,
    slice_decompose,
)
from special.gamma_functions import cpow, cpow_array, gamma, gamma_ratio, rgamma  # noqa: E402
from fractional.monomials import (  # noqa: E402
    MonomialSum,
    power_sum,
    series_sum,
    sym_rl_derivative_x,
    sym_rl_derivative_y,
)
from fractional.orders import OrderPair  # noqa: E402
from slices.domain import GridPoint, SliceDomain  # noqa: E402
from slices.functions import SliceFunction  # noqa: E402
from verification.report import PointResidual, VerificationReport  # noqa: E402
from verification.theorems import NO_VARIANT, guarded, random_orders, with_variants  # noqa: E402

logger = get_logger(__name__)

SERIES_TRUNCATION = 8
KERNEL_TRUNCATION = 30
KERNEL_TAIL_TOLERANCE = 1e-10
LAMBDA_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficients a_0, ..., a_N of the polynomial sum_n (q - a)^n a_n"""

    a: Tuple[Quaternion, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if not self.a:
            raise DomainError("series needs at least one coefficient")
        if not all(np.all(np.isfinite(q.to_array())) for q in self.a):
            raise DomainError("series coefficients must be finite")

    @property
    def truncation(self) -> int:
        return len(self.a) - 1

    def as_sum(self, anchor_a: float) -> MonomialSum:
        return series_sum(self.a, anchor_a)

    def plane_values(self, z: np.ndarray, unit: ImaginaryUnit, anchor_a: float) -> np.ndarray:
        """sum_n embed((z - a)^n) a_n for complex z anywhere in the plane"""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape + (4,))
        for n, coefficient in enumerate(self.a):
            out += qarray_mul(embed_array((z - anchor_a) ** n, unit), coefficient.to_array())
        return out


@dataclass(frozen=True)
class ContourSpec:
    """Circle |z - center| = radius on a slice, sampled at ``nodes`` equispaced angles"""

    center: float
    radius: float
    nodes: int = 512

    def __post_init__(self):
        if not self.radius > 0.0:
            raise DomainError(f"contour radius must be positive, got {self.radius}")
        if self.nodes < 1:
            raise DomainError(f"contour needs at least one node, got {self.nodes}")

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.nodes) / self.nodes

    def encloses(self, x: float, y: float) -> bool:
        return (x - self.center) ** 2 + y ** 2 < self.radius ** 2


def evaluate_signed(f: SliceFunction, unit: ImaginaryUnit, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """f at x + unit*y for y of either sign, using x + unit*y = x + (-unit)(-y)"""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    upper = f.evaluate_array(unit, x, np.abs(y))
    lower = f.evaluate_array(-unit, x, np.abs(y))
    return np.where((y >= 0.0)[..., None], upper, lower)


def plane_value(s: MonomialSum, x: float, y: float) -> complex:
    """
    Value of a sum with real right constants as a plane complex number

    Raises:
        DomainError: If a right constant is not real
    """
    xb, yb = s.bases(x, y)
    total = 0j
    for t in s.terms:
        if t.right_const.vector != (0.0, 0.0, 0.0):
            raise DomainError("plane evaluation needs real right constants")
        total += complex(t.scalar * cpow_array(xb, t.mu) * cpow_array(yb, t.nu)) * t.right_const.w
    return total


# Slice Cauchy formula


def cauchy_eval(f: SliceFunction, contour: ContourSpec, q: Quaternion, unit: ImaginaryUnit) -> Quaternion:
    """
    (1/2 pi) int S^-1(s, q) ds_i f(s) over the contour on C(unit)

    S^-1(s, q) = -(q^2 - 2 Re(s) q + |s|^2)^-1 (q - conj(s)) and
    ds_i = -i ds = r e^(i theta) d theta.

    Raises:
        DomainError: If q lies outside the disc's axially symmetric hull or on its boundary sphere
    """
    x, y, _ = slice_decompose(q)
    if not contour.encloses(x, y):
        raise DomainError(f"q = {q.to_list()} is not inside the contour of radius {contour.radius}")
    theta = contour.angles()
    step = contour.radius * np.exp(1j * theta)
    s = contour.center + step
    qa = q.to_array()
    one = np.array([1.0, 0.0, 0.0, 0.0])
    quadratic = qarray_mul(qa, qa)[None, :] - 2.0 * s.real[:, None] * qa[None, :] + (np.abs(s) ** 2)[:, None] * one
    norms = np.sum(quadratic * quadratic, axis=-1)
    if norms.min() < 1e-28:
        raise DomainError(f"q = {q.to_list()} lies on the contour sphere")
    inverse = quadratic * np.array([1.0, -1.0, -1.0, -1.0]) / norms[:, None]
    kernel = -qarray_mul(inverse, qa[None, :] - embed_array(np.conj(s), unit))
    ds = embed_array(step / contour.nodes, unit)
    values = evaluate_signed(f, unit, s.real, s.imag)
    return Quaternion.from_array(qarray_mul(qarray_mul(kernel, ds), values).sum(axis=0))


def verify_cauchy(
    f: SliceFunction,
    contour: ContourSpec,
    points: Sequence[GridPoint],
    tol: float = 1e-6,
    units: Sequence[ImaginaryUnit] = (E1, E2, E3),
) -> VerificationReport:
    """Cauchy reconstruction of f at each point, repeated with the contour on every unit of ``units``"""
    residuals = []
    spread = 0.0
    for unit_q, x, y in points:
        q = embed(complex(x, y), unit_q)

        def compute(unit_q=unit_q, x=x, y=y, q=q):
            values = np.stack([cauchy_eval(f, contour, q, unit).to_array() for unit in units])
            reference = np.broadcast_to(f.evaluate_array(unit_q, x, y), values.shape)
            return values, reference

        point = guarded(unit_q, x, y, compute)
        residuals.append(point)
        if point.error is None:
            values = np.stack([cauchy_eval(f, contour, q, unit).to_array() for unit in units])
            spread = max(spread, float(np.max(np.linalg.norm(values - values[0], axis=-1))))
    report = VerificationReport("cauchy", NO_VARIANT, tol, residuals, "abs", "symbolic" if f.is_symbolic else "sampled")
    report.notes.append(f"function {f.name}, {contour.nodes} nodes, spread across contour units {spread:.3e}")
    return report


# Series expansion


def lambda_coeff(k: int, n: int, orders: OrderPair) -> complex:
    """
    Gamma(n+1) / (Gamma(n-k+alpha) Gamma(k+beta))

    Raises:
        DomainError: Unless 0 <= k <= n
    """
    if not 0 <= k <= n:
        raise DomainError(f"lambda needs 0 <= k <= n, got k={k}, n={n}")
    return gamma_ratio(n + 1, n - k + orders.alpha.value) * rgamma(k + orders.beta.value)


def lambda_direct(k: int, n: int, orders: OrderPair) -> complex:
    return gamma(n + 1) / (gamma(n - k + orders.alpha.value) * gamma(k + orders.beta.value))


def verify_series_expansion(
    coeffs: SeriesCoefficients,
    dom: SliceDomain,
    orders: OrderPair,
    points: Sequence[GridPoint],
    tol: float = 1e-8,
    variant: str = "corrected",
) -> VerificationReport:
    """
    D_y^(1-beta) D_x^(1-alpha) of sum_n (q-a)^n a_n against the lambda double sum

    ``corrected`` uses the powers (x-a)^(n-k+alpha-1) y^(k+beta-1);
    ``displayed`` uses (x-a)^(n-k) y^(k-1). Each lambda is also checked
    against direct Gamma division.
    """
    a = dom.a
    alpha, beta = orders.alpha.value, orders.beta.value
    derived = sym_rl_derivative_y(sym_rl_derivative_x(coeffs.as_sum(a), 1.0 - alpha), 1.0 - beta)
    lambdas = {(k, n): lambda_coeff(k, n, orders) for n in range(coeffs.truncation + 1) for k in range(n + 1)}
    lambda_error = max(
        abs(value - lambda_direct(k, n, orders)) / max(1.0, abs(value)) for (k, n), value in lambdas.items()
    )

    def double_sum(reading: str, unit: ImaginaryUnit, x: float, y: float) -> np.ndarray:
        total = np.zeros(4)
        for (k, n), value in lambdas.items():
            if reading == "corrected":
                power = cpow(x - a, n - k + alpha - 1.0) * cpow(y, k + beta - 1.0)
            else:
                power = cpow(x - a, n - k) * cpow(y, k - 1.0)
            total += (embed(value * 1j ** k * power, unit) * coeffs.a[n]).to_array()
        return total

    def run(reading: str) -> VerificationReport:
        residuals = []
        for unit, x, y in points:

            def compute(unit=unit, x=x, y=y):
                return derived.evaluate_array(unit, x, y), double_sum(reading, unit, x, y)

            residuals.append(guarded(unit, x, y, compute))
        report = VerificationReport("series", reading, tol, residuals, "rel", "symbolic")
        report.checks_ok = lambda_error <= LAMBDA_TOLERANCE
        report.notes.append(f"degree {coeffs.truncation}, lambda vs direct Gamma division {lambda_error:.3e}")
        return report

    return with_variants(run, variant, VARIANTS)


# The kernel N


def _on_slice(zeta: SliceComplex, unit: ImaginaryUnit) -> complex:
    """zeta as a plane number in the orientation of ``unit``"""
    if zeta.y == 0.0:
        return complex(zeta.x, 0.0)
    direction = np.array(zeta.unit.vector)
    if np.allclose(direction, unit.vector, atol=1e-12):
        return zeta.as_complex()
    if np.allclose(direction, -np.array(unit.vector), atol=1e-12):
        return zeta.as_complex().conjugate()
    raise DomainError(f"zeta on unit {zeta.unit.to_list()} is not on the slice of q ({unit.to_list()})")


def _kernel_point(q: Quaternion, a: float) -> Tuple[float, float, ImaginaryUnit]:
    x, y, unit = slice_decompose(q)
    if not (y > 0.0 and x > a):
        raise DomainError(f"kernel needs y > 0 and x > {a}, got q = {q.to_list()}")
    return x, y, unit


def kernel_terms(x: float, y: float, a: float, orders: OrderPair, truncation: int) -> np.ndarray:
    """Plane values of D_y^(1-beta) D_x^(1-alpha) (x - a + i y)^n for n = 0..truncation"""
    alpha, beta = orders.alpha.value, orders.beta.value
    out = np.empty(truncation + 1, dtype=complex)
    for n in range(truncation + 1):
        derived = sym_rl_derivative_y(sym_rl_derivative_x(power_sum(n, ONE, a), 1.0 - alpha), 1.0 - beta)
        out[n] = plane_value(derived, x, y)
    return out


def kernel_series(zeta: SliceComplex, q: Quaternion, a: float, orders: OrderPair, truncation: int):
    """
    Term-by-term partial sum of N on the plane of q

    Returns:
        Tuple (value, unit, ratio, tail) with ratio = |q - a| / |zeta - a|
        and the geometric tail estimate (inf when ratio >= 1)
    """
    if truncation < 1:
        raise DomainError(f"kernel truncation must be at least 1, got {truncation}")
    x, y, unit = _kernel_point(q, a)
    z = _on_slice(zeta, unit) - a
    if z == 0:
        raise DomainError("zeta must differ from the anchor a")
    n = np.arange(truncation + 1)
    terms = kernel_terms(x, y, a, orders, truncation) * z ** (-(n + 1.0))
    ratio = abs(complex(x - a, y)) / abs(z)
    tail = math.inf if ratio >= 1.0 else abs(terms[-1]) * ratio / (1.0 - ratio)
    return complex(terms.sum()), unit, ratio, tail


def kernel_N(
    zeta: SliceComplex,
    q: Quaternion,
    a: float,
    orders: OrderPair,
    truncation: int = KERNEL_TRUNCATION,
    tail_tol: float = KERNEL_TAIL_TOLERANCE,
) -> Quaternion:
    """
    Truncated kernel sum_n [D_y^(1-beta) D_x^(1-alpha) (q-a)^n] (zeta-a)^-(n+1)

    Warns:
        ConvergenceWarning: When |q - a| >= |zeta - a| or the tail estimate exceeds tail_tol

    Raises:
        DomainError: If zeta is not on the slice of q, or q is not strictly right of a and off the real axis
    """
    value, unit, ratio, tail = kernel_series(zeta, q, a, orders, truncation)
    if ratio >= 1.0:
        warnings.warn(f"|q - a| / |zeta - a| = {ratio:.3f} >= 1: the kernel series diverges", ConvergenceWarning)
    elif tail > tail_tol * max(1.0, abs(value)):
        warnings.warn(f"kernel tail estimate {tail:.3e} exceeds {tail_tol:.1e}", ConvergenceWarning)
    return embed(value, unit)


def kernel_N_closed_form(
    zeta: SliceComplex, q: Quaternion, a: float, orders: OrderPair, truncation: int = KERNEL_TRUNCATION
) -> Quaternion:
    """
    Same truncation summed from the binomial closed form

    (x-a)^(alpha-1) y^(beta-1) sum_n sum_k Gamma(n+1) / (Gamma(k+alpha) Gamma(n-k+beta))
    (x-a)^k y^(n-k) i^(n-k) (zeta-a)^-(n+1)
    """
    x, y, unit = _kernel_point(q, a)
    z = _on_slice(zeta, unit) - a
    alpha, beta = orders.alpha.value, orders.beta.value
    total = 0j
    for n in range(truncation + 1):
        inner = sum(
            gamma_ratio(n + 1, k + alpha) * rgamma(n - k + beta) * (x - a) ** k * y ** (n - k) * 1j ** (n - k)
            for k in range(n + 1)
        )
        total += inner * z ** (-(n + 1))
    return embed(cpow(x - a, alpha - 1.0) * cpow(y, beta - 1.0) * total, unit)


def verify_kernel_N(
    rng: np.random.Generator,
    dom: SliceDomain,
    tol: float = 1e-8,
    truncation: int = KERNEL_TRUNCATION,
    count: int = 5,
) -> VerificationReport:
    """Term-by-term kernel against the closed form at |q - a| = |zeta - a| / 2, random orders"""
    a = dom.a
    residuals: List[PointResidual] = []
    worst_tail = 0.0
    for unit in random_units(rng, count):
        orders = random_orders(rng)
        phi = float(rng.uniform(0.2, 1.3))
        theta = float(rng.uniform(0.0, 2.0 * np.pi))
        q = embed(a + 0.5 * np.exp(1j * phi), unit)
        zeta = SliceComplex(a + math.cos(theta), math.sin(theta), unit)

        def compute(q=q, zeta=zeta, orders=orders):
            value, on_unit, _, _ = kernel_series(zeta, q, a, orders, truncation)
            return embed(value, on_unit), kernel_N_closed_form(zeta, q, a, orders, truncation)

        point = guarded(unit, q.w, 0.5 * math.sin(phi), compute)
        residuals.append(point)
        if point.error is None:
            worst_tail = max(worst_tail, kernel_series(zeta, q, a, orders, truncation)[3])
    report = VerificationReport("kernel_N", NO_VARIANT, tol, residuals, "rel", "symbolic")
    report.notes.append(f"truncation {truncation}, largest tail estimate {worst_tail:.3e}")
    return report


def verify_kernel_cauchy(
    coeffs: SeriesCoefficients,
    dom: SliceDomain,
    orders: OrderPair,
    points: Sequence[GridPoint],
    tol: float = 1e-8,
    radius: float = None,
    nodes: int = 512,
) -> VerificationReport:
    """
    D_y^(1-beta) D_x^(1-alpha) g(q) = (1/2 pi) int N(zeta, q) d zeta_i g(zeta)

    g = sum_n (q-a)^n a_n, the circle is |zeta - a| = radius on the slice of q,
    and N is truncated two orders above the degree of g, which the
    trapezoid rule integrates exactly.
    """
    a = dom.a
    radius = radius if radius is not None else 0.8 * (dom.b - dom.a)
    alpha, beta = orders.alpha.value, orders.beta.value
    derived = sym_rl_derivative_y(sym_rl_derivative_x(coeffs.as_sum(a), 1.0 - alpha), 1.0 - beta)
    truncation = coeffs.truncation + 2
    contour = ContourSpec(a, radius, nodes)
    step = radius * np.exp(1j * contour.angles())
    powers = np.arange(truncation + 1)

    residuals = []
    for unit, x, y in points:

        def compute(unit=unit, x=x, y=y):
            terms = kernel_terms(x, y, a, orders, truncation)
            kernel = (terms[None, :] * step[:, None] ** (-(powers[None, :] + 1.0))).sum(axis=1)
            weights = embed_array(kernel * step / nodes, unit)
            values = coeffs.plane_values(a + step, unit, a)
            return qarray_mul(weights, values).sum(axis=0), derived.evaluate_array(unit, x, y)

        residuals.append(guarded(unit, x, y, compute))
    report = VerificationReport("kernel_cauchy", NO_VARIANT, tol, residuals, "abs", "symbolic")
    report.notes.append(f"degree {coeffs.truncation}, radius {radius}, {nodes} nodes")
    return report


__all__ = [
    "SeriesCoefficients",
    "ContourSpec",
    "cauchy_eval",
    "verify_cauchy",
    "lambda_coeff",
    "verify_series_expansion",
    "kernel_N",
    "kernel_N_closed_form",
    "verify_kernel_N",
    "verify_kernel_cauchy",
]
