"""
Unit tests for complex orders, the fractional quadrature and the numeric RL/Caputo operators
"""

import os
import sys

import numpy as np
import pytest
from scipy import integrate, special

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from fractional.numeric_operators import (  # noqa: E402
    caputo_left,
    caputo_right,
    finite_difference,
    richardson_derivative,
    rl_derivative_left,
    rl_derivative_right,
    rl_integral_left,
    rl_integral_right,
)
from fractional.orders import ComplexOrder, OrderPair  # noqa: E402
from fractional.quadrature import DEFAULT_QUADRATURE, Integrand1D, QuadratureConfig, fractional_integral  # noqa: E402
from utils.errors import DomainError, QuadratureError, StencilError  # noqa: E402


def power(mu, a=0.0, lo=0.0, hi=1.0):
    """(t - a)^mu on [lo, hi]"""
    return Integrand1D(lambda t: np.exp(mu * np.log(np.maximum(t - a, 1e-300))) if mu != 0 else np.ones_like(t, dtype=complex), lo, hi)


class TestComplexOrder:
    """Test cases for ComplexOrder and OrderPair"""

    @pytest.mark.parametrize("re", [0.0, 1.0, -0.2, 1.5])
    def test_real_part_range(self, re):
        """Test orders need 0 < re < 1"""
        with pytest.raises(DomainError):
            ComplexOrder(re, 0.3)

    def test_complement_and_conjugate(self):
        """Test 1 - alpha and the conjugate order"""
        alpha = ComplexOrder(0.4, 0.25)
        assert alpha.complement == complex(0.6, -0.25)
        assert alpha.conjugate().value == complex(0.4, -0.25)
        assert ComplexOrder.from_list(alpha.to_list()) == alpha

    def test_real_parts(self):
        """Test the pair with imaginary parts dropped"""
        pair = OrderPair(ComplexOrder(0.4, 0.25), ComplexOrder(0.7, -1.0))
        real = pair.real_parts()
        assert (real.alpha.value, real.beta.value) == (0.4, 0.7)


class TestFractionalIntegral:
    """Test cases for the weakly singular quadrature"""

    def test_config_validation(self):
        """Test invalid quadrature settings raise"""
        with pytest.raises(DomainError):
            QuadratureConfig(nodes=4)
        with pytest.raises(DomainError):
            QuadratureConfig(grading_ratio=1.0)

    def test_empty_integrand_domain(self):
        """Test an integrand needs lo < hi"""
        with pytest.raises(DomainError):
            Integrand1D(np.cos, 1.0, 1.0)

    def test_non_finite_integrand(self):
        """Test NaN values are reported as quadrature errors"""
        f = Integrand1D(lambda t: np.full(np.shape(t), np.nan), 0.0, 1.0)
        with pytest.raises(QuadratureError):
            fractional_integral(f, 0.0, 0.5, 0.5, DEFAULT_QUADRATURE)

    @pytest.mark.parametrize("sigma", [0.5, 0.3 + 0.4j, 1.2 - 0.7j])
    @pytest.mark.parametrize("mu", [0.0, 1.0, 0.5 + 0.25j])
    def test_power_rule(self, sigma, mu):
        """Test I^s (t - a)^mu = Gamma(mu + 1) / Gamma(mu + s + 1) (x - a)^(mu + s)"""
        # Arrange
        a, x = 0.2, 0.9
        f = power(mu, a=a, lo=a, hi=1.0)
        expected = special.gamma(mu + 1) / special.gamma(mu + sigma + 1) * (x - a) ** (mu + sigma)

        # Act
        value = rl_integral_left(f, a, sigma, x)

        # Assert
        assert abs(value - expected) <= 1e-10 * abs(expected)

    def test_matches_scipy_algebraic_weight(self):
        """Test a smooth integrand against QUADPACK with weight (x - t)^(s - 1)"""
        # Arrange
        sigma, x = 0.35, 0.8
        reference, _ = integrate.quad(np.cos, 0.0, x, weight="alg", wvar=(0.0, sigma - 1.0))
        f = Integrand1D(np.cos, 0.0, 1.0)

        # Act
        value = rl_integral_left(f, 0.0, sigma, x)

        # Assert
        assert value == pytest.approx(reference / special.gamma(sigma), rel=1e-11)

    def test_vectorized_points(self):
        """Test array evaluation matches pointwise evaluation"""
        f = Integrand1D(np.exp, 0.0, 1.0)
        xs = np.array([0.25, 0.5, 1.0])
        values = rl_integral_left(f, 0.0, 0.6 + 0.1j, xs)
        for x, v in zip(xs, values):
            assert v == pytest.approx(rl_integral_left(f, 0.0, 0.6 + 0.1j, x), rel=1e-14)

    def test_right_integral_of_one(self):
        """Test I_{b-}^s 1 = (b - x)^s / Gamma(s + 1)"""
        f = power(0.0, lo=0.0, hi=1.0)
        value = rl_integral_right(f, 1.0, 0.4 + 0.2j, 0.3)
        assert value == pytest.approx(0.7 ** (0.4 + 0.2j) / special.gamma(1.4 + 0.2j), rel=1e-12)

    def test_point_at_anchor_raises(self):
        """Test x must exceed the anchor"""
        with pytest.raises(DomainError):
            rl_integral_left(power(0.0), 0.0, 0.5, 0.0)

    def test_integral_order_real_part(self):
        """Test integral orders need a positive real part"""
        with pytest.raises(DomainError):
            rl_integral_left(power(0.0), 0.0, -0.5j, 0.5)


class TestFractionalDerivatives:
    """Test cases for the numeric RL and Caputo derivatives"""

    def setup_method(self):
        """Set up test fixtures"""
        self.alpha = ComplexOrder(0.4, 0.3)
        self.one = power(0.0, lo=0.0, hi=1.0)
        self.t = power(1.0, lo=0.0, hi=1.0)

    def test_richardson_on_polynomial(self):
        """Test Richardson extrapolation differentiates a cubic exactly"""
        value = richardson_derivative(lambda t: t ** 3 + 0j, 0.5, 1e-2, 2)
        assert value == pytest.approx(0.75, rel=1e-12)

    def test_rl_derivative_of_one(self):
        """Test D^alpha 1 = x^(-alpha) / Gamma(1 - alpha)"""
        # Arrange
        x = 0.5
        expected = x ** (-self.alpha.value) / special.gamma(self.alpha.complement)

        # Act
        value = rl_derivative_left(self.one, 0.0, self.alpha, x)

        # Assert
        assert abs(value - expected) <= 1e-6 * abs(expected)

    def test_rl_derivative_power_rule(self):
        """Test D^alpha t^mu = Gamma(mu + 1) / Gamma(mu + 1 - alpha) x^(mu - alpha)"""
        mu, x = 1.5 + 0.5j, 0.7
        f = power(mu, lo=0.0, hi=1.0)
        expected = special.gamma(mu + 1) / special.gamma(mu + 1 - self.alpha.value) * x ** (mu - self.alpha.value)
        value = rl_derivative_left(f, 0.0, self.alpha, x)
        assert abs(value - expected) <= 1e-6 * abs(expected)

    def test_rl_derivative_right_of_one(self):
        """Test D_{b-}^alpha 1 = (b - x)^(-alpha) / Gamma(1 - alpha)"""
        x = 0.4
        expected = 0.6 ** (-self.alpha.value) / special.gamma(self.alpha.complement)
        value = rl_derivative_right(self.one, 1.0, self.alpha, x)
        assert abs(value - expected) <= 1e-6 * abs(expected)

    def test_stencil_leaving_domain(self):
        """Test a stencil past the domain end raises StencilError"""
        with pytest.raises(StencilError):
            rl_derivative_left(self.one, 0.0, self.alpha, 1.0)

    def test_point_too_close_to_anchor(self):
        """Test points within delta of the anchor raise DomainError"""
        with pytest.raises(DomainError):
            rl_derivative_left(self.one, 0.0, self.alpha, 1e-6)

    def test_derivative_order_range(self):
        """Test a plain complex order outside 0 < re < 1 raises"""
        with pytest.raises(DomainError):
            rl_derivative_left(self.one, 0.0, 1.2 + 0j, 0.5)

    def test_caputo_of_constant_vanishes(self):
        """Test the Caputo derivative kills constants"""
        zero = Integrand1D(lambda t: np.zeros(np.shape(t), dtype=complex), 0.0, 1.0)
        assert caputo_left(self.one, zero, 0.0, self.alpha, 0.5) == 0
        assert caputo_right(self.one, zero, 1.0, self.alpha, 0.5) == 0

    def test_caputo_matches_rl_when_function_vanishes_at_anchor(self):
        """Test C D^alpha t = RL D^alpha t since t vanishes at 0"""
        x = 0.6
        caputo = caputo_left(self.t, self.one, 0.0, self.alpha, x)
        rl = rl_derivative_left(self.t, 0.0, self.alpha, x)
        assert abs(caputo - rl) <= 1e-6 * abs(caputo)

    def test_caputo_differentiates_f_without_df(self):
        """Test a missing classical derivative is taken from f by finite differences"""
        # Arrange
        square = power(2.0, lo=0.0, hi=1.0)
        x = 0.7

        # Act
        left = caputo_left(square, None, 0.0, self.alpha, x)
        right = caputo_right(square, None, 1.0, self.alpha, x)

        # Assert
        assert abs(left - caputo_left(square, self.t.scaled(2.0), 0.0, self.alpha, x)) <= 1e-5 * abs(left)
        assert abs(right - caputo_right(square, self.t.scaled(2.0), 1.0, self.alpha, x)) <= 1e-5 * abs(right)

    def test_finite_difference(self):
        """Test the one-sided and central classical derivative"""
        df = finite_difference(Integrand1D(lambda t: t ** 2 + 0j, 0.0, 1.0))
        np.testing.assert_allclose(df(np.array([0.0, 0.5, 1.0])), [0.0, 1.0, 2.0], atol=1e-5)


class TestOperatorProperties:
    """Test cases for convergence, linearity and composition of the numeric operators"""

    def setup_method(self):
        """Set up test fixtures"""
        self.alpha = ComplexOrder(0.4, 0.3)
        self.smooth = Integrand1D(lambda t: np.exp(t) * (1.0 + 0.5j), 0.0, 1.0)

    def test_power_rule_error_shrinks_with_nodes(self):
        """Test the RL derivative of (x - a)^mu approaches its closed form as nodes double, down to the difference floor"""
        # Arrange
        a, x, mu = 0.2, 0.7, 1.5 + 0.5j
        f = power(mu, a=a, lo=a, hi=1.0)
        expected = special.gamma(mu + 1) / special.gamma(mu + 1 - self.alpha.value) * (x - a) ** (mu - self.alpha.value)
        floor = 1e-9

        # Act
        errors = [
            abs(rl_derivative_left(f, a, self.alpha, x, QuadratureConfig(nodes=n)) - expected) / abs(expected)
            for n in (16, 32, 64)
        ]

        # Assert
        assert errors[1] <= max(1.2 * errors[0], floor), errors
        assert errors[2] <= max(1.2 * errors[1], floor), errors
        assert errors[2] <= 1e-6, errors

    @pytest.mark.parametrize("scalar", [2.5, 0.3 - 1.2j, 1j])
    def test_scalar_factors_commute(self, scalar):
        """Test every operator commutes with multiplication by a constant complex scalar"""
        # Arrange
        scaled = self.smooth.scaled(scalar)
        x = 0.5
        operators = [
            lambda g: rl_integral_left(g, 0.0, 0.6 + 0.2j, x),
            lambda g: rl_integral_right(g, 1.0, 0.6 + 0.2j, x),
            lambda g: rl_derivative_left(g, 0.0, self.alpha, x),
            lambda g: rl_derivative_right(g, 1.0, self.alpha, x),
            lambda g: caputo_left(g, None, 0.0, self.alpha, x),
            lambda g: caputo_right(g, None, 1.0, self.alpha, x),
        ]

        # Act / Assert
        for op in operators:
            plain = op(self.smooth)
            assert abs(op(scaled) - scalar * plain) <= 1e-9 * abs(scalar * plain)

    @pytest.mark.parametrize("sigma, tau", [(0.3, 0.45), (0.5, 0.5), (0.15, 0.7)])
    def test_integrals_compose(self, sigma, tau):
        """Test I^sigma I^tau f = I^(sigma + tau) f for a polynomial f"""
        # Arrange
        x = 0.8
        f = Integrand1D(lambda t: (1.0 - 2.0 * t + 3.0 * t ** 2) + 0j, 0.0, 1.0)

        def inner_values(t):
            flat = np.asarray(t, dtype=float).reshape(-1)
            return rl_integral_left(f, 0.0, tau, flat).reshape(np.shape(t))

        inner = Integrand1D(inner_values, 0.0, 1.0)
        total = sigma + tau
        expected = sum(
            c * special.gamma(n + 1) / special.gamma(n + 1 + total) * x ** (n + total)
            for n, c in enumerate((1.0, -2.0, 3.0))
        )

        # Act
        nested = rl_integral_left(inner, 0.0, sigma, x)
        direct = rl_integral_left(f, 0.0, total, x)

        # Assert
        assert abs(nested - direct) <= 1e-6 * abs(direct)
        assert abs(direct - expected) <= 1e-10 * abs(expected)
