"""
Domain - the slice domain S_{a,b,c} with its base point, and evaluation grids
"""

import os
import sys
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import ConfigError, DomainError  # noqa: E402
from algebra.quaternion import E1, E2, E3, ImaginaryUnit, random_units  # noqa: E402
from fractional.orders import ComplexOrder, OrderPair  # noqa: E402

GridPoint = Tuple[ImaginaryUnit, float, float]


@dataclass(frozen=True)
class SliceDomain:
    """
    Rectangle (a, b) x (0, c) on every slice, with frozen base point (u, v)

    Args:
        a, b: x range, a < b
        c: y range end, c > 0
        u: frozen x coordinate used by the y-direction operators
        v: frozen y coordinate used by the x-direction operators
    """

    a: float = 0.0
    b: float = 1.0
    c: float = 1.0
    u: float = 0.5
    v: float = 0.5

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"slice domain needs a < b, got a={self.a}, b={self.b}")
        if not self.c > 0:
            raise DomainError(f"slice domain needs c > 0, got c={self.c}")
        if not (self.a <= self.u <= self.b and 0.0 <= self.v <= self.c):
            raise DomainError(f"base point ({self.u}, {self.v}) lies outside the domain")

    @classmethod
    def from_settings(cls, settings) -> "SliceDomain":
        return cls(settings.a, settings.b, settings.c, settings.u, settings.v)

    def contains(self, x: float, y: float) -> bool:
        return self.a < x < self.b and 0.0 < y < self.c


def orders_from_settings(settings) -> OrderPair:
    return OrderPair(ComplexOrder(*settings.alpha), ComplexOrder(*settings.beta))


def chebyshev_interior(lo: float, hi: float, count: int) -> np.ndarray:
    """First-kind Chebyshev points mapped to (lo, hi), ascending"""
    k = np.arange(count)
    t = np.cos((2 * k + 1) * np.pi / (2 * count))
    return lo + (hi - lo) * (1.0 - t) / 2.0


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid: every unit crossed with every (x, y) pair"""

    units: Tuple[ImaginaryUnit, ...]
    xs: Tuple[float, ...]
    ys: Tuple[float, ...]

    def points(self) -> Iterator[GridPoint]:
        for unit in self.units:
            for x in self.xs:
                for y in self.ys:
                    yield unit, x, y

    def __len__(self) -> int:
        return len(self.units) * len(self.xs) * len(self.ys)

    def subset(self, units: int = None, xs: int = None, ys: int = None) -> "GridSpec":
        """Leading portion of the grid, for expensive sampled checks"""
        return GridSpec(self.units[:units], self.xs[:xs], self.ys[:ys])


def default_units(rng: np.random.Generator, extra: int = 5) -> List[ImaginaryUnit]:
    """e1, e2, e3 followed by seeded random units"""
    return [E1, E2, E3] + random_units(rng, extra)


def _parse_units(raw: Sequence) -> List[ImaginaryUnit]:
    try:
        return [ImaginaryUnit.from_vector(u) for u in raw]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid grid units: {exc}") from exc


def build_grid(dom: SliceDomain, settings=None, seed: int = 7) -> GridSpec:
    """
    Default grid: Chebyshev-interior nodes with margin 0.05 * span

    Args:
        dom: Slice domain
        settings: GridSettings section of a RunConfig (defaults when None)
        seed: Seed of the random units

    Returns:
        The grid specification
    """
    n_x = settings.n_x if settings else 8
    n_y = settings.n_y if settings else 8
    margin = settings.margin if settings else 0.05
    extra = settings.random_units if settings else 5
    raw_units = settings.units if settings else "default"

    if raw_units == "default":
        units = default_units(np.random.default_rng(seed), extra)
    else:
        units = _parse_units(raw_units)

    span_x = dom.b - dom.a
    xs = chebyshev_interior(dom.a + margin * span_x, dom.b - margin * span_x, n_x)
    ys = chebyshev_interior(margin * dom.c, dom.c - margin * dom.c, n_y)
    return GridSpec(tuple(units), tuple(float(x) for x in xs), tuple(float(y) for y in ys))
