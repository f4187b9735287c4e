"""
Monomials - exact fractional calculus on finite sums of slice monomials

A term c * X^mu * Y^nu * q is evaluated on the slice C(i) as
embed(c * X^mu * Y^nu) * q, where X = x - a (left orientation) or b - x
(right orientation), Y likewise with anchor 0 or c, and the formal unit
inside c, mu and nu is realized as i. Power rules act termwise and are
exact: no quadrature is involved.
"""

import os
import sys
from dataclasses import dataclass, replace
from math import comb
from typing import Any, Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import DomainError  # noqa: E402
from algebra.quaternion import (  # noqa: E402
    ImaginaryUnit,
    ONE,
    Quaternion,
    ZERO,
    qarray_mul,
)
from fractional.orders import ComplexOrder, Side  # noqa: E402
from special.gamma_functions import cpow_array, gamma, rgamma  # noqa: E402

EXPONENT_TOLERANCE = 1e-12


def _complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(value)


@dataclass(frozen=True)
class MonomialTerm:
    """One term scalar * X^mu * Y^nu * right_const"""

    scalar: complex
    mu: complex = 0j
    nu: complex = 0j
    right_const: Quaternion = ONE

    def is_zero(self) -> bool:
        return self.scalar == 0 or self.right_const == ZERO

    def magnitude(self) -> float:
        return abs(self.scalar) * self.right_const.norm()

    def to_dict(self) -> Dict[str, List[float]]:
        return {
            "scalar": [self.scalar.real, self.scalar.imag],
            "mu": [self.mu.real, self.mu.imag],
            "nu": [self.nu.real, self.nu.imag],
            "right_const": self.right_const.to_list(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MonomialTerm":
        return cls(
            scalar=_complex(data["scalar"]),
            mu=_complex(data.get("mu", 0.0)),
            nu=_complex(data.get("nu", 0.0)),
            right_const=Quaternion.from_array(data.get("right_const", [1.0, 0.0, 0.0, 0.0])),
        )


@dataclass(frozen=True)
class MonomialSum:
    """
    Finite sum of monomial terms sharing anchors and orientations

    Terms with an exactly zero scalar or right constant are pruned on
    construction. ``anchor_a`` is the x anchor (a for left orientation,
    b for right); ``anchor_y`` is the y anchor (0 or c).
    """

    terms: Tuple[MonomialTerm, ...] = ()
    anchor_a: float = 0.0
    anchor_y: float = 0.0
    x_side: Side = Side.Left
    y_side: Side = Side.Left

    def __post_init__(self):
        kept = tuple(
            MonomialTerm(complex(t.scalar), complex(t.mu), complex(t.nu), t.right_const)
            for t in self.terms
            if not t.is_zero()
        )
        object.__setattr__(self, "terms", kept)
        object.__setattr__(self, "anchor_a", float(self.anchor_a))
        object.__setattr__(self, "anchor_y", float(self.anchor_y))

    # Construction helpers

    def with_terms(self, terms: Iterable[MonomialTerm]) -> "MonomialSum":
        return replace(self, terms=tuple(terms))

    def map_terms(self, fn: Callable[[MonomialTerm], Iterable[MonomialTerm]]) -> "MonomialSum":
        out: List[MonomialTerm] = []
        for term in self.terms:
            out.extend(fn(term))
        return self.with_terms(out)

    def _check_compatible(self, other: "MonomialSum") -> None:
        if (self.anchor_a, self.anchor_y, self.x_side, self.y_side) != (
            other.anchor_a,
            other.anchor_y,
            other.x_side,
            other.y_side,
        ):
            raise DomainError("cannot combine monomial sums with different anchors or orientations")

    def __add__(self, other: "MonomialSum") -> "MonomialSum":
        self._check_compatible(other)
        return self.with_terms(self.terms + other.terms)

    def __neg__(self) -> "MonomialSum":
        return self.times_left(-1.0)

    def __sub__(self, other: "MonomialSum") -> "MonomialSum":
        return self + (-other)

    def times_left(self, factor: complex) -> "MonomialSum":
        """Multiply by a formal plane scalar from the left"""
        factor = complex(factor)
        return self.map_terms(lambda t: [replace(t, scalar=t.scalar * factor)])

    def times_left_unit(self) -> "MonomialSum":
        """Multiply by the slice unit from the left"""
        return self.times_left(1j)

    def times_right(self, q: Quaternion) -> "MonomialSum":
        """Multiply by a constant quaternion from the right"""
        return self.map_terms(lambda t: [replace(t, right_const=t.right_const * q)])

    def map_right_consts(self, fn: Callable[[Quaternion], Quaternion]) -> "MonomialSum":
        return self.map_terms(lambda t: [replace(t, right_const=fn(t.right_const))])

    # Inspection

    def is_empty(self) -> bool:
        return not self.terms

    def max_coefficient(self) -> float:
        """Largest |scalar| * |right_const| over the terms as stored"""
        return max((t.magnitude() for t in self.terms), default=0.0)

    def collect(self) -> "MonomialSum":
        """
        Canonical form: one (scalar 1, scalar i) term pair per exponent pair

        Exponents are grouped with EXPONENT_TOLERANCE. Because scalars act
        from the left, c * q equals 1 * (re c) q + i * (im c) q exactly.
        """
        groups: List[Tuple[complex, complex, Quaternion, Quaternion]] = []
        for term in self.terms:
            for idx, (mu, nu, q_re, q_im) in enumerate(groups):
                if abs(term.mu - mu) <= EXPONENT_TOLERANCE and abs(term.nu - nu) <= EXPONENT_TOLERANCE:
                    groups[idx] = (
                        mu,
                        nu,
                        q_re + term.right_const * term.scalar.real,
                        q_im + term.right_const * term.scalar.imag,
                    )
                    break
            else:
                groups.append(
                    (term.mu, term.nu, term.right_const * term.scalar.real, term.right_const * term.scalar.imag)
                )
        groups.sort(key=lambda g: (g[0].real, g[0].imag, g[1].real, g[1].imag))
        out: List[MonomialTerm] = []
        for mu, nu, q_re, q_im in groups:
            out.append(MonomialTerm(1 + 0j, mu, nu, q_re))
            out.append(MonomialTerm(1j, mu, nu, q_im))
        return self.with_terms(out)

    def is_zero(self, rel_tol: float = 1e-12, scale: float = None) -> bool:
        """True when every collected coefficient is below rel_tol * scale"""
        if scale is None:
            scale = self.max_coefficient()
        collected = self.collect()
        return collected.max_coefficient() <= rel_tol * max(scale, 1e-300)

    # Evaluation

    def bases(self, x, y) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        xb = x - self.anchor_a if self.x_side is Side.Left else self.anchor_a - x
        yb = y - self.anchor_y if self.y_side is Side.Left else self.anchor_y - y
        return xb, yb

    def evaluate_array(self, unit: ImaginaryUnit, x, y) -> np.ndarray:
        """
        Evaluate on the slice C(unit) at broadcast arrays x, y

        Returns:
            Quaternion array of shape broadcast(x, y).shape + (4,)

        Raises:
            DomainError: On negative bases or singular zero bases
        """
        xb, yb = np.broadcast_arrays(*self.bases(x, y))
        out = np.zeros(xb.shape + (4,))
        unit_q = unit.quaternion.to_array()
        for term in self.terms:
            plane = term.scalar * cpow_array(xb, term.mu) * cpow_array(yb, term.nu)
            q = term.right_const.to_array()
            # embed(p) * q = re(p) q + im(p) (unit q)
            out += plane.real[..., None] * q + plane.imag[..., None] * qarray_mul(unit_q, q)
        return out

    def evaluate(self, unit: ImaginaryUnit, x: float, y: float) -> Quaternion:
        return Quaternion.from_array(self.evaluate_array(unit, x, y))

    # Serialization

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"terms": [t.to_dict() for t in self.terms], "anchor_a": self.anchor_a}
        if self.anchor_y != 0.0 or self.x_side is not Side.Left or self.y_side is not Side.Left:
            data["anchor_y"] = self.anchor_y
            data["x_side"] = self.x_side.name
            data["y_side"] = self.y_side.name
        return data

    @classmethod
    def from_dict(cls, data: Any) -> "MonomialSum":
        """Accept {"terms": [...], "anchor_a": a} or a bare list of terms"""
        if isinstance(data, list):
            data = {"terms": data}
        try:
            terms = tuple(MonomialTerm.from_dict(t) for t in data["terms"])
            return cls(
                terms,
                anchor_a=float(data.get("anchor_a", 0.0)),
                anchor_y=float(data.get("anchor_y", 0.0)),
                x_side=Side[data.get("x_side", "Left")],
                y_side=Side[data.get("y_side", "Left")],
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise DomainError(f"malformed monomial sum: {exc}") from exc


def monomial(
    scalar: complex = 1.0,
    mu: complex = 0.0,
    nu: complex = 0.0,
    right_const: Quaternion = ONE,
    anchor_a: float = 0.0,
) -> MonomialSum:
    """Single-term left-oriented sum"""
    return MonomialSum((MonomialTerm(complex(scalar), complex(mu), complex(nu), right_const),), anchor_a)


def zero_sum(anchor_a: float = 0.0) -> MonomialSum:
    return MonomialSum((), anchor_a)


def power_sum(n: int, coefficient: Quaternion = ONE, anchor_a: float = 0.0) -> MonomialSum:
    """(x - a + i y)^n * coefficient, expanded binomially"""
    terms = [MonomialTerm(comb(n, k) * (1j ** k), n - k, k, coefficient) for k in range(n + 1)]
    return MonomialSum(tuple(terms), anchor_a)


def series_sum(coeffs: Sequence[Quaternion], anchor_a: float = 0.0) -> MonomialSum:
    """sum_n (x - a + i y)^n * coeffs[n]"""
    total = zero_sum(anchor_a)
    for n, coefficient in enumerate(coeffs):
        total = total + power_sum(n, coefficient, anchor_a)
    return total


# Power rules


def _require_integrable(exponent: complex, variable: str) -> None:
    if not exponent.real > -1.0:
        raise DomainError(f"power rule needs re(exponent) > -1, got {variable}^{exponent}")


def _order(alpha) -> complex:
    return alpha.value if isinstance(alpha, ComplexOrder) else complex(alpha)


def _derivative_rule(exponent: complex, order: complex) -> Tuple[complex, complex]:
    # Gamma(e + 1) / Gamma(e + 1 - order), zero when the denominator has a pole
    return gamma(exponent + 1.0) * rgamma(exponent + 1.0 - order), exponent - order


def _integral_rule(exponent: complex, order: complex) -> Tuple[complex, complex]:
    return gamma(exponent + 1.0) * rgamma(exponent + 1.0 + order), exponent + order


def _apply_x(s: MonomialSum, rule, order: complex) -> MonomialSum:
    def step(t: MonomialTerm):
        _require_integrable(t.mu, "X")
        factor, mu = rule(t.mu, order)
        return [replace(t, scalar=t.scalar * factor, mu=mu)]

    return s.map_terms(step)


def _apply_y(s: MonomialSum, rule, order: complex) -> MonomialSum:
    def step(t: MonomialTerm):
        _require_integrable(t.nu, "Y")
        factor, nu = rule(t.nu, order)
        return [replace(t, scalar=t.scalar * factor, nu=nu)]

    return s.map_terms(step)


def sym_eval(s: MonomialSum, unit: ImaginaryUnit, x: float, y: float) -> Quaternion:
    """Evaluate a sum at x + unit*y"""
    return s.evaluate(unit, x, y)


def sym_rl_derivative_x(s: MonomialSum, alpha) -> MonomialSum:
    """RL derivative in x on the sum's own side: mu -> mu - alpha"""
    return _apply_x(s, _derivative_rule, _order(alpha))


def sym_rl_derivative_y(s: MonomialSum, beta) -> MonomialSum:
    return _apply_y(s, _derivative_rule, _order(beta))


def sym_rl_integral_x(s: MonomialSum, sigma) -> MonomialSum:
    """RL integral in x on the sum's own side: mu -> mu + sigma"""
    return _apply_x(s, _integral_rule, _order(sigma))


def sym_rl_integral_y(s: MonomialSum, sigma) -> MonomialSum:
    return _apply_y(s, _integral_rule, _order(sigma))


def _is_zero_exponent(e: complex) -> bool:
    return abs(e) <= EXPONENT_TOLERANCE


def sym_caputo_x(s: MonomialSum, alpha) -> MonomialSum:
    """
    Caputo derivative in x: RL derivative of s minus its x-constant part

    The value at the anchor is read formally as the mu = 0 terms, so singular
    and purely imaginary exponents pass straight through to the RL rule.
    """
    return sym_rl_derivative_x(s.with_terms(t for t in s.terms if not _is_zero_exponent(t.mu)), alpha)


def sym_caputo_y(s: MonomialSum, beta) -> MonomialSum:
    return sym_rl_derivative_y(s.with_terms(t for t in s.terms if not _is_zero_exponent(t.nu)), beta)


def sym_partial(s: MonomialSum, var: str) -> MonomialSum:
    """
    Classical partial derivative d/dx or d/dy

    Right orientation contributes the chain-rule sign: d/dx (b - x)^mu = -mu (b - x)^(mu - 1).
    """
    if var not in ("x", "y"):
        raise DomainError(f"unknown variable {var!r}")
    side = s.x_side if var == "x" else s.y_side
    sign = 1.0 if side is Side.Left else -1.0

    def step(t: MonomialTerm):
        exponent = t.mu if var == "x" else t.nu
        if _is_zero_exponent(exponent):
            return []
        if var == "x":
            return [replace(t, scalar=sign * exponent * t.scalar, mu=exponent - 1.0)]
        return [replace(t, scalar=sign * exponent * t.scalar, nu=exponent - 1.0)]

    return s.map_terms(step)


def freeze_y(s: MonomialSum, v: float) -> MonomialSum:
    """Substitute y = v: the result depends on x only"""
    _, yb = s.bases(0.0, v)

    def step(t: MonomialTerm):
        return [replace(t, scalar=t.scalar * complex(cpow_array(yb, t.nu)), nu=0j)]

    return s.map_terms(step)


def freeze_x(s: MonomialSum, u: float) -> MonomialSum:
    """Substitute x = u: the result depends on y only"""
    xb, _ = s.bases(u, 0.0)

    def step(t: MonomialTerm):
        return [replace(t, scalar=t.scalar * complex(cpow_array(xb, t.mu)), mu=0j)]

    return s.map_terms(step)


def _integer_exponent(e: complex) -> int:
    k = round(e.real)
    if abs(e - k) > EXPONENT_TOLERANCE or k < 0:
        raise DomainError(f"re-expansion needs nonnegative integer exponents, got {e}")
    return k


def sym_reorient(
    s: MonomialSum,
    anchor_a: float,
    x_side: Side,
    anchor_y: float,
    y_side: Side,
) -> MonomialSum:
    """
    Re-expand a polynomial sum about new anchors and orientations

    With old base B = sigma_old (x - A_old) and new base N = sigma_new (x - A_new),
    B = D + s N where D = sigma_old (A_new - A_old) and s = sigma_old sigma_new.

    Raises:
        DomainError: If an exponent is not a nonnegative integer
    """

    def sign(side: Side) -> float:
        return 1.0 if side is Side.Left else -1.0

    dx = sign(s.x_side) * (anchor_a - s.anchor_a)
    sx = sign(s.x_side) * sign(x_side)
    dy = sign(s.y_side) * (anchor_y - s.anchor_y)
    sy = sign(s.y_side) * sign(y_side)

    def expand(n: int, d: float, sgn: float) -> List[Tuple[float, int]]:
        return [(comb(n, k) * d ** (n - k) * sgn ** k, k) for k in range(n + 1)]

    out: List[MonomialTerm] = []
    for t in s.terms:
        for cx, kx in expand(_integer_exponent(t.mu), dx, sx):
            for cy, ky in expand(_integer_exponent(t.nu), dy, sy):
                if cx * cy != 0.0:
                    out.append(MonomialTerm(t.scalar * cx * cy, kx, ky, t.right_const))
    return MonomialSum(tuple(out), anchor_a, anchor_y, x_side, y_side)


def is_reorientable(s: MonomialSum) -> bool:
    try:
        for t in s.terms:
            _integer_exponent(t.mu)
            _integer_exponent(t.nu)
    except DomainError:
        return False
    return True
