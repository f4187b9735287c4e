"""
Quaternion - quaternion arithmetic, imaginary units and slice decomposition

Scalar values use the immutable ``Quaternion`` type. Vectorized code stores
quaternions as float arrays of shape ``(..., 4)`` in (w, x1, x2, x3) order.
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

Real = Union[int, float]


@dataclass(frozen=True)
class Quaternion:
    """Quaternion w + x1*e1 + x2*e2 + x3*e3"""

    w: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def __add__(self, other: "Quaternion") -> "Quaternion":
        other = as_quaternion(other)
        return Quaternion(self.w + other.w, self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        other = as_quaternion(other)
        return Quaternion(self.w - other.w, self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __rsub__(self, other: "Quaternion") -> "Quaternion":
        return as_quaternion(other) - self

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other: Union["Quaternion", Real]) -> "Quaternion":
        if isinstance(other, Quaternion):
            return mul(self, other)
        return Quaternion(self.w * other, self.x1 * other, self.x2 * other, self.x3 * other)

    def __rmul__(self, other: Real) -> "Quaternion":
        # Reals commute with every quaternion
        return self * other

    def __truediv__(self, other: Real) -> "Quaternion":
        return Quaternion(self.w / other, self.x1 / other, self.x2 / other, self.x3 / other)

    @property
    def vector(self) -> Tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def conj(self) -> "Quaternion":
        return conj(self)

    def norm(self) -> float:
        return norm(self)

    def inverse(self) -> "Quaternion":
        """Multiplicative inverse conj(q)/|q|^2"""
        n2 = self.w ** 2 + self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return conj(self) / n2

    def to_list(self) -> List[float]:
        return [self.w, self.x1, self.x2, self.x3]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=float)

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "Quaternion":
        return cls(float(values[0]), float(values[1]), float(values[2]), float(values[3]))

    def is_close(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return norm(self - as_quaternion(other)) <= tol


ONE = Quaternion(1.0)
ZERO = Quaternion()


def as_quaternion(value: Union[Quaternion, Real]) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    return Quaternion(float(value))


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product with e1 e2 = e3, e2 e3 = e1, e3 e1 = e2"""
    return Quaternion(
        p.w * q.w - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
        p.w * q.x1 + p.x1 * q.w + p.x2 * q.x3 - p.x3 * q.x2,
        p.w * q.x2 - p.x1 * q.x3 + p.x2 * q.w + p.x3 * q.x1,
        p.w * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.w,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x1, -q.x2, -q.x3)


def norm(q: Quaternion) -> float:
    return math.sqrt(q.w ** 2 + q.x1 ** 2 + q.x2 ** 2 + q.x3 ** 2)


@dataclass(frozen=True)
class ImaginaryUnit:
    """Point of the unit sphere of purely imaginary quaternions"""

    u1: float
    u2: float
    u3: float

    def __post_init__(self):
        if abs(self.u1 ** 2 + self.u2 ** 2 + self.u3 ** 2 - 1.0) > 1e-14:
            raise ValueError(f"imaginary unit must have norm 1, got ({self.u1}, {self.u2}, {self.u3})")

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "ImaginaryUnit":
        """Normalize a nonzero 3-vector into a unit"""
        length = math.sqrt(sum(float(c) ** 2 for c in vector))
        if length == 0.0:
            raise ValueError("cannot normalize the zero vector")
        u = [float(c) / length for c in vector]
        # Renormalize once more so the sum of squares lands within 1e-14
        length = math.sqrt(sum(c * c for c in u))
        return cls(u[0] / length, u[1] / length, u[2] / length)

    @property
    def quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.u1, self.u2, self.u3)

    @property
    def vector(self) -> Tuple[float, float, float]:
        return (self.u1, self.u2, self.u3)

    def __neg__(self) -> "ImaginaryUnit":
        return ImaginaryUnit(-self.u1, -self.u2, -self.u3)

    def to_list(self) -> List[float]:
        return [self.u1, self.u2, self.u3]


E1 = ImaginaryUnit(1.0, 0.0, 0.0)
E2 = ImaginaryUnit(0.0, 1.0, 0.0)
E3 = ImaginaryUnit(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SliceComplex:
    """The point x + unit*y of the slice C(unit)"""

    x: float
    y: float
    unit: ImaginaryUnit = E1

    @property
    def quaternion(self) -> Quaternion:
        return embed(complex(self.x, self.y), self.unit)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


def embed(z: complex, unit: ImaginaryUnit) -> Quaternion:
    """Realize the plane complex number z on the slice C(unit)"""
    z = complex(z)
    return Quaternion(z.real, z.imag * unit.u1, z.imag * unit.u2, z.imag * unit.u3)


def slice_decompose(q: Quaternion) -> Tuple[float, float, ImaginaryUnit]:
    """
    Write q = x + unit*y with y >= 0

    Real quaternions decompose with unit e1.

    Args:
        q: Quaternion to decompose

    Returns:
        Tuple (x, y, unit)
    """
    y = math.sqrt(q.x1 ** 2 + q.x2 ** 2 + q.x3 ** 2)
    if y == 0.0:
        return q.w, 0.0, E1
    return q.w, y, ImaginaryUnit.from_vector(q.vector)


def orthogonal_unit(unit: ImaginaryUnit) -> ImaginaryUnit:
    """
    Deterministic unit orthogonal to ``unit``

    Gram-Schmidt of the coordinate axis least aligned with ``unit``, so the
    remainder has norm at least sqrt(2/3); projected once more after
    normalizing.
    """
    u = np.array(unit.vector)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(u)))] = 1.0
    rest = axis - np.dot(axis, u) * u
    rest = rest / np.linalg.norm(rest)
    rest = rest - np.dot(rest, u) * u
    return ImaginaryUnit.from_vector(rest)


def random_units(rng: np.random.Generator, count: int) -> List[ImaginaryUnit]:
    """Uniform random points of the unit sphere from a seeded generator"""
    units = []
    while len(units) < count:
        v = rng.normal(size=3)
        if np.linalg.norm(v) > 1e-8:
            units.append(ImaginaryUnit.from_vector(v))
    return units


# Array helpers (shape (..., 4))


def qarray_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Broadcast Hamilton product of quaternion arrays"""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, q1, q2, q3 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            pw * qw - p1 * q1 - p2 * q2 - p3 * q3,
            pw * q1 + p1 * qw + p2 * q3 - p3 * q2,
            pw * q2 - p1 * q3 + p2 * qw + p3 * q1,
            pw * q3 + p1 * q2 - p2 * q1 + p3 * qw,
        ],
        axis=-1,
    )


def embed_array(z: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    """Realize complex values on C(unit) as quaternion arrays"""
    z = np.asarray(z, dtype=complex)
    im = z.imag
    return np.stack([z.real, im * unit.u1, im * unit.u2, im * unit.u3], axis=-1)


def project_array(values: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    """Component of quaternion values along C(unit), as complex numbers"""
    values = np.asarray(values, dtype=float)
    return values[..., 0] + 1j * (values[..., 1:] @ np.array(unit.vector))


def split_array(
    values: np.ndarray, unit_i: ImaginaryUnit, unit_j: ImaginaryUnit
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split quaternion values as F + G*j with F, G in C(i)

    Args:
        values: Quaternion array of shape (..., 4)
        unit_i: Slice unit
        unit_j: Unit orthogonal to unit_i

    Returns:
        Tuple (F, G) of complex arrays
    """
    f_part = project_array(values, unit_i)
    rest = np.asarray(values, dtype=float) - embed_array(f_part, unit_i)
    # rest = G*j, so G = rest * (-j)
    g_embedded = qarray_mul(rest, -unit_j.quaternion.to_array())
    return f_part, project_array(g_embedded, unit_i)


def combine_array(
    f_part: np.ndarray, g_part: np.ndarray, unit_i: ImaginaryUnit, unit_j: ImaginaryUnit
) -> np.ndarray:
    """Inverse of split_array: F + G*j"""
    return embed_array(f_part, unit_i) + qarray_mul(embed_array(g_part, unit_i), unit_j.quaternion.to_array())
