"""
Error types shared across fracslice
"""


class FracSliceError(Exception):
    """Base class for library errors"""


class DomainError(FracSliceError, ValueError):
    """Evaluation point or parameter outside the admissible domain"""


class PoleError(FracSliceError, ArithmeticError):
    """Gamma evaluated at (or within 1e-12 of) a nonpositive integer"""


class QuadratureError(FracSliceError, ArithmeticError):
    """Integrand returned a non-finite value at a quadrature node"""


class StencilError(DomainError):
    """Finite-difference stencil leaves the integrand's domain"""


class ConfigError(FracSliceError, ValueError):
    """Invalid run configuration or CLI usage"""


class ConvergenceWarning(RuntimeWarning):
    """Truncated series whose tail estimate exceeds the tolerance"""
