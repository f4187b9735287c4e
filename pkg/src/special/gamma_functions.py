"""
GammaFunctions - complex Gamma, reciprocal Gamma, Gamma ratios and complex powers

All powers used by the library have a positive real base, so only the
principal real logarithm is ever taken.
"""

import os
import sys
from typing import Union

import numpy as np

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.errors import DomainError, PoleError  # noqa: E402

PlaneComplex = complex
Number = Union[int, float, complex]

POLE_TOLERANCE = 1e-12

# Lanczos approximation g = 6.0246800407767296, 13 terms (the "lanczos13m53"
# set of Boost.Math, shipped by SciPy's cephes as lanczos_sum_expg_scaled).
# Gamma(z) = L(z) * ((z + g - 1/2) / e) ** (z - 1/2), L a rational function
# with coefficients listed from the highest power down.
LANCZOS_G = 6.024680040776729583740234375
LANCZOS_NUM = np.array(
    [
        0.006061842346248906525783753964555936883222,
        0.5098416655656676188125178644804694509993,
        19.51992788247617482847860966235652136208,
        449.9445569063168119446858607650988409623,
        6955.999602515376140356310115515198987526,
        75999.29304014542649875303443598909137092,
        601859.6171681098786670226533699352302507,
        3481712.15498064590882071018964774556468,
        14605578.08768506808414169982791359218571,
        43338889.32467613834773723740590533316085,
        86363131.28813859145546927288977868422342,
        103794043.1163445451906271053616070238554,
        56906521.91347156388090791033559122686859,
    ]
)
LANCZOS_DENOM = np.array(
    [1, 66, 1925, 32670, 357423, 2637558, 13339535, 45995730, 105258076, 150917976, 120543840, 39916800, 0],
    dtype=float,
)


def is_pole(z: Number) -> bool:
    """True when z lies within POLE_TOLERANCE of a nonpositive integer"""
    z = complex(z)
    nearest = round(z.real)
    return nearest <= 0 and abs(z - nearest) < POLE_TOLERANCE


def _check_pole(z: complex) -> None:
    if is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")


def _lanczos_log(z: complex) -> complex:
    """log Gamma(z) for re(z) >= 1/2, up to a multiple of 2*pi*i"""
    series = np.polyval(LANCZOS_NUM, z) / np.polyval(LANCZOS_DENOM, z)
    zgh = z + LANCZOS_G - 0.5
    return complex(np.log(series) + (z - 0.5) * (np.log(zgh) - 1.0))


def gamma(z: Number) -> PlaneComplex:
    """
    Gamma function of a complex argument

    Args:
        z: Argument, not a nonpositive integer

    Returns:
        Gamma(z) as a Python complex

    Raises:
        PoleError: If z is within 1e-12 of a nonpositive integer
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        # Reflection formula
        return complex(np.pi / (np.sin(np.pi * z) * gamma(1.0 - z)))
    return complex(np.exp(_lanczos_log(z)))


def loggamma(z: Number) -> PlaneComplex:
    """
    Logarithm of Gamma(z), branch unspecified

    Only differences passed through exp are meaningful, which is how
    gamma_ratio uses it.
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return complex(np.log(np.pi) - np.log(np.sin(np.pi * z)) - loggamma(1.0 - z))
    return _lanczos_log(z)


def rgamma(z: Number) -> PlaneComplex:
    """Reciprocal Gamma, entire: zero at the poles of Gamma"""
    z = complex(z)
    if is_pole(z):
        return 0j
    return 1.0 / gamma(z)


def gamma_ratio(num: Number, den: Number) -> PlaneComplex:
    """
    Gamma(num) / Gamma(den) through a log-Gamma difference

    Raises:
        PoleError: If either argument is a pole
    """
    num, den = complex(num), complex(den)
    _check_pole(den)
    _check_pole(num)
    if abs(num - den) == 0.0:
        return 1 + 0j
    return complex(np.exp(loggamma(num) - loggamma(den)))


def cpow(base: float, exponent: Number) -> PlaneComplex:
    """
    exp(exponent * ln(base)) for a positive real base

    Raises:
        DomainError: If base <= 0
    """
    base = float(base)
    if not base > 0.0:
        raise DomainError(f"complex power needs a positive base, got {base}")
    exponent = complex(exponent)
    if exponent == 0:
        return 1 + 0j
    return complex(np.exp(exponent * np.log(base)))


def cpow_array(base: np.ndarray, exponent: Number) -> np.ndarray:
    """
    Vectorized power with the zero-base limits used by monomial evaluation

    A zero base gives 1 for exponent 0 and 0 for exponents with positive
    real part; any other zero-base case and every negative base raise.
    """
    base = np.asarray(base, dtype=float)
    exponent = complex(exponent)
    if exponent == 0:
        return np.ones(base.shape, dtype=complex)
    if np.any(base < 0.0):
        raise DomainError(f"complex power needs a nonnegative base, got min {base.min()}")
    zero = base == 0.0
    if np.any(zero) and not exponent.real > 0.0:
        raise DomainError(f"zero base with exponent {exponent} is singular")
    safe = np.where(zero, 1.0, base)
    return np.where(zero, 0j, np.exp(exponent * np.log(safe)))
