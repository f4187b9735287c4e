"""
Unit tests for quaternion arithmetic and slice decomposition
"""

import math
import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from algebra.quaternion import (  # noqa: E402
    E1,
    E2,
    E3,
    ONE,
    ImaginaryUnit,
    Quaternion,
    SliceComplex,
    combine_array,
    embed,
    embed_array,
    orthogonal_unit,
    project_array,
    qarray_mul,
    random_units,
    slice_decompose,
    split_array,
)

components = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, components, components, components, components)
unit_vectors = st.tuples(components, components, components).filter(lambda v: math.sqrt(sum(c * c for c in v)) > 1e-3)


class TestQuaternion:
    """Test cases for the Quaternion value type"""

    def test_basis_products(self):
        """Test Hamilton's rules e1 e2 = e3, e2 e3 = e1, e3 e1 = e2"""
        # Arrange
        i, j, k = (u.quaternion for u in (E1, E2, E3))

        # Act & Assert
        assert (i * j).is_close(k)
        assert (j * k).is_close(i)
        assert (k * i).is_close(j)
        assert (j * i).is_close(-k)
        assert (i * i).is_close(Quaternion(-1.0))

    def test_inverse(self):
        """Test q * q^-1 = 1"""
        # Arrange
        q = Quaternion(1.0, -2.0, 0.5, 3.0)

        # Act
        product = q * q.inverse()

        # Assert
        assert product.is_close(ONE)

    def test_inverse_of_zero_raises(self):
        """Test the zero quaternion has no inverse"""
        with pytest.raises(ZeroDivisionError):
            Quaternion().inverse()

    def test_real_scalars_commute(self):
        """Test multiplication by reals from either side"""
        q = Quaternion(1.0, 2.0, 3.0, 4.0)
        assert (2.0 * q).is_close(q * 2.0)
        assert (q / 2.0).is_close(Quaternion(0.5, 1.0, 1.5, 2.0))

    def test_array_round_trip_order(self):
        """Test storage order (w, x1, x2, x3)"""
        q = Quaternion(1.0, 2.0, 3.0, 4.0)
        assert q.to_list() == [1.0, 2.0, 3.0, 4.0]
        assert Quaternion.from_array(q.to_array()) == q

    @settings(max_examples=50, deadline=None)
    @given(quaternions, quaternions)
    def test_norm_is_multiplicative(self, p, q):
        """Test |pq| = |p||q|"""
        assert (p * q).norm() == pytest.approx(p.norm() * q.norm(), rel=1e-12, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(quaternions, quaternions)
    def test_conjugate_reverses_products(self, p, q):
        """Test conj(pq) = conj(q) conj(p)"""
        assert (p * q).conj().is_close(q.conj() * p.conj(), tol=1e-9)

    @settings(max_examples=50, deadline=None)
    @given(quaternions, quaternions)
    def test_array_product_matches_scalar_product(self, p, q):
        """Test the vectorized Hamilton product"""
        vectorized = Quaternion.from_array(qarray_mul(p.to_array(), q.to_array()))
        assert vectorized.is_close(p * q, tol=1e-9)


class TestImaginaryUnit:
    """Test cases for imaginary units and slices"""

    def test_non_unit_rejected(self):
        """Test units must have norm one"""
        with pytest.raises(ValueError):
            ImaginaryUnit(1.0, 1.0, 0.0)

    def test_zero_vector_rejected(self):
        """Test the zero vector cannot be normalized"""
        with pytest.raises(ValueError):
            ImaginaryUnit.from_vector([0.0, 0.0, 0.0])

    @settings(max_examples=50, deadline=None)
    @given(unit_vectors)
    def test_unit_squares_to_minus_one(self, vector):
        """Test every unit of the sphere satisfies i^2 = -1"""
        # Arrange
        unit = ImaginaryUnit.from_vector(vector)

        # Act
        square = unit.quaternion * unit.quaternion

        # Assert
        assert square.is_close(Quaternion(-1.0), tol=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(unit_vectors)
    def test_orthogonal_unit(self, vector):
        """Test orthogonal_unit returns a perpendicular unit"""
        unit = ImaginaryUnit.from_vector(vector)
        other = orthogonal_unit(unit)
        assert abs(np.dot(unit.vector, other.vector)) < 1e-12

    @pytest.mark.parametrize(
        "vector",
        [(3.0, 6.103515625e-05, 0.0), (1.0, 1e-9, -1e-9), (0.0, 1.0, 2e-7), (1.0, 1.0, 1.0)],
    )
    def test_orthogonal_unit_near_axes(self, vector):
        """Test units almost on a coordinate axis still get an exact perpendicular"""
        unit = ImaginaryUnit.from_vector(vector)
        other = orthogonal_unit(unit)
        assert abs(np.dot(unit.vector, other.vector)) < 1e-14
        assert abs(np.dot(other.vector, other.vector) - 1.0) < 1e-14

    def test_negation(self):
        """Test -unit flips every component"""
        assert (-E2).vector == (-0.0, -1.0, -0.0)

    def test_random_units_are_seeded(self):
        """Test random units depend only on the seed"""
        first = random_units(np.random.default_rng(3), 4)
        second = random_units(np.random.default_rng(3), 4)
        assert first == second
        assert all(abs(sum(c * c for c in u.vector) - 1.0) < 1e-14 for u in first)


class TestSliceDecomposition:
    """Test cases for q = x + unit*y"""

    def test_decompose(self):
        """Test the decomposition of a nonreal quaternion"""
        # Act
        x, y, unit = slice_decompose(Quaternion(1.0, 0.0, 3.0, 4.0))

        # Assert
        assert x == 1.0
        assert y == pytest.approx(5.0)
        assert unit.vector == pytest.approx((0.0, 0.6, 0.8))

    def test_real_quaternion_uses_e1(self):
        """Test real quaternions decompose on e1 with y = 0"""
        x, y, unit = slice_decompose(Quaternion(-2.0))
        assert (x, y, unit) == (-2.0, 0.0, E1)

    @settings(max_examples=50, deadline=None)
    @given(quaternions)
    def test_decompose_then_embed(self, q):
        """Test embed(x + iy, unit) rebuilds q"""
        x, y, unit = slice_decompose(q)
        assert y >= 0.0
        assert embed(complex(x, y), unit).is_close(q, tol=1e-9)

    def test_slice_complex(self):
        """Test SliceComplex realizes x + unit*y"""
        point = SliceComplex(0.5, 2.0, E3)
        assert point.quaternion == Quaternion(0.5, 0.0, 0.0, 2.0)
        assert point.as_complex() == complex(0.5, 2.0)

    def test_slices_are_commutative_fields(self):
        """Test embed is a field homomorphism on one slice"""
        # Arrange
        unit = ImaginaryUnit.from_vector([1.0, -2.0, 2.0])
        z, w = complex(0.3, -1.2), complex(2.0, 0.7)

        # Act
        product = embed(z, unit) * embed(w, unit)

        # Assert
        assert product.is_close(embed(z * w, unit))


class TestSplitting:
    """Test cases for the F + G j splitting of quaternion arrays"""

    def setup_method(self):
        """Set up test fixtures"""
        self.rng = np.random.default_rng(11)
        self.values = self.rng.normal(size=(5, 4))

    def test_split_then_combine(self):
        """Test combine_array inverts split_array"""
        # Arrange
        unit = random_units(self.rng, 1)[0]
        unit_j = orthogonal_unit(unit)

        # Act
        f_part, g_part = split_array(self.values, unit, unit_j)
        rebuilt = combine_array(f_part, g_part, unit, unit_j)

        # Assert
        np.testing.assert_allclose(rebuilt, self.values, atol=1e-12)

    def test_projection_of_slice_values(self):
        """Test project_array recovers embedded complex values"""
        z = np.array([1.0 + 2.0j, -0.5j, 3.0])
        np.testing.assert_allclose(project_array(embed_array(z, E2), E2), z)
