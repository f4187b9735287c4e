"""
Orders - complex fractional orders and integration sides
"""

import enum
import os
import sys
from dataclasses import dataclass
from typing import List, Sequence

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import DomainError  # noqa: E402


class Side(enum.Enum):
    """Side of a fractional operator"""

    Left = enum.auto()
    """Anchored at the lower end: bases (x - a) and y."""
    Right = enum.auto()
    """Anchored at the upper end: bases (b - x) and (c - y)."""


@dataclass(frozen=True)
class ComplexOrder:
    """Fractional order re + i*im with 0 < re < 1"""

    re: float
    im: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.re < 1.0:
            raise DomainError(f"order real part must lie in (0, 1), got {self.re}")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def complement(self) -> complex:
        """1 - order, the order of the integral inside the RL derivative"""
        return 1.0 - self.value

    def conjugate(self) -> "ComplexOrder":
        return ComplexOrder(self.re, -self.im)

    def to_list(self) -> List[float]:
        return [self.re, self.im]

    @classmethod
    def from_list(cls, values: Sequence[float]) -> "ComplexOrder":
        return cls(float(values[0]), float(values[1]))


@dataclass(frozen=True)
class OrderPair:
    """Orders alpha (x direction, anchor a) and beta (y direction, anchor 0)"""

    alpha: ComplexOrder
    beta: ComplexOrder

    def conjugate(self) -> "OrderPair":
        return OrderPair(self.alpha.conjugate(), self.beta.conjugate())

    def real_parts(self) -> "OrderPair":
        """Same real parts, zero imaginary parts"""
        return OrderPair(ComplexOrder(self.alpha.re), ComplexOrder(self.beta.re))
