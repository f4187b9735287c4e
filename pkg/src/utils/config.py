"""
Configuration management for fracslice
"""

import json
import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

VARIANTS = ("corrected", "displayed")


class Config:
    """Process-wide settings read from the environment"""

    # Development
    DEBUG_MODE: bool = os.getenv("DEBUG_MODE", "false").lower() == "true"
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Runtime
    THREADS: int = int(os.getenv("FRACSLICE_THREADS", "1"))
    SEED: int = int(os.getenv("FRACSLICE_SEED", "7"))
    VARIANT: str = os.getenv("FRACSLICE_VARIANT", "corrected")
    OUT_DIR: str = os.getenv("FRACSLICE_OUT_DIR", "reports")

    @classmethod
    def validate(cls) -> bool:
        """Validate configuration settings"""
        errors = []

        if cls.THREADS <= 0:
            errors.append("FRACSLICE_THREADS must be positive")

        if cls.VARIANT not in VARIANTS:
            errors.append(f"FRACSLICE_VARIANT must be one of {', '.join(VARIANTS)}")

        if cls.LOG_LEVEL.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"LOG_LEVEL '{cls.LOG_LEVEL}' is not a logging level")

        if not cls.OUT_DIR:
            errors.append("FRACSLICE_OUT_DIR must not be empty")

        if errors:
            raise ValueError(f"Configuration errors: {', '.join(errors)}")

        return True

    @classmethod
    def get_threads(cls) -> int:
        """Get the worker cap for parallel evaluation"""
        return max(1, cls.THREADS)

    @classmethod
    def is_debug(cls) -> bool:
        """Check if debug mode is enabled"""
        return cls.DEBUG_MODE


@dataclass(frozen=True)
class DomainSettings:
    a: float = 0.0
    b: float = 1.0
    c: float = 1.0
    u: float = 0.5
    v: float = 0.5


@dataclass(frozen=True)
class OrderSettings:
    alpha: Tuple[float, float] = (0.5, 0.2)
    beta: Tuple[float, float] = (0.4, -0.1)


@dataclass(frozen=True)
class QuadratureSettings:
    nodes: int = 64
    diff_step: float = 1e-5
    richardson_levels: int = 2
    grading_levels: int = 24
    grading_ratio: float = 0.1


@dataclass(frozen=True)
class GridSettings:
    units: Any = "default"
    n_x: int = 8
    n_y: int = 8
    margin: float = 0.05
    random_units: int = 5


DEFAULT_TOLERANCES: Dict[str, float] = {
    "power_rule": 1e-6,
    "fund_theorem": 1e-6,
    "rl_caputo_link": 1e-10,
    "example45_kernel": 1e-12,
    "splitting": 1e-10,
    "representation": 1e-12,
    "frac_splitting": 1e-10,
    "frac_representation": 1e-10,
    "fract131": 1e-8,
    "corollary_real": 1e-8,
    "series": 1e-8,
    "kernel_N": 1e-8,
    "caputo_slice": 1e-10,
    "caputo_membership": 1e-10,
    "cauchy": 1e-6,
    "factorization": 1e-10,
    "membership_equiv": 1e-10,
    "kernel_cauchy": 1e-8,
    "gamma": 1e-10,
    "sampled": 1e-5,
}


@dataclass(frozen=True)
class RunConfig:
    """
    Settings for one CLI run, loaded from a JSON document

    Every section falls back to its defaults; CLI flags are applied on top
    with ``with_overrides``.
    """

    domain: DomainSettings = field(default_factory=DomainSettings)
    orders: OrderSettings = field(default_factory=OrderSettings)
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    grid: GridSettings = field(default_factory=GridSettings)
    seed: int = Config.SEED
    variant: str = Config.VARIANT
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """
        Build a run configuration from parsed JSON

        Args:
            data: Mapping with optional sections domain, orders, quadrature,
                grid, seed, variant and tolerances

        Returns:
            The validated configuration

        Raises:
            ConfigError: On unknown keys, wrong types or invalid values
        """
        from utils.errors import ConfigError

        if not isinstance(data, dict):
            raise ConfigError("run configuration must be a JSON object")

        known = {"domain", "orders", "quadrature", "grid", "seed", "variant", "tolerances"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(unknown)}")

        try:
            domain = DomainSettings(**{k: float(v) for k, v in data.get("domain", {}).items()})
            orders_raw = data.get("orders", {})
            orders = OrderSettings(
                **{k: (float(v[0]), float(v[1])) for k, v in orders_raw.items()}
            )
            quad_raw = dict(data.get("quadrature", {}))
            for key in ("nodes", "richardson_levels", "grading_levels"):
                if key in quad_raw:
                    quad_raw[key] = int(quad_raw[key])
            quadrature = QuadratureSettings(**quad_raw)
            grid = GridSettings(**data.get("grid", {}))
            seed = int(data.get("seed", Config.SEED))
            variant = str(data.get("variant", Config.VARIANT))
        except (TypeError, ValueError, IndexError) as exc:
            raise ConfigError(f"invalid run configuration: {exc}") from exc

        tolerances = dict(DEFAULT_TOLERANCES)
        for name, value in data.get("tolerances", {}).items():
            if name not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance name: {name}")
            tolerances[name] = float(value)

        config = cls(domain, orders, quadrature, grid, seed, variant, tolerances)
        config.validate()
        return config

    @classmethod
    def load(cls, path: Optional[str]) -> "RunConfig":
        """Load a JSON run configuration, or the defaults when path is None"""
        from utils.errors import ConfigError

        if path is None:
            return cls()
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def with_overrides(self, seed: Optional[int] = None, variant: Optional[str] = None) -> "RunConfig":
        """Apply CLI flag overrides"""
        config = self
        if seed is not None:
            config = replace(config, seed=seed)
        if variant is not None:
            config = replace(config, variant=variant)
        config.validate()
        return config

    def validate(self) -> bool:
        """Validate the run configuration"""
        from utils.errors import ConfigError

        errors: List[str] = []
        d = self.domain
        if not d.a < d.b:
            errors.append("domain requires a < b")
        if d.c <= 0:
            errors.append("domain requires c > 0")
        if not (d.a <= d.u <= d.b) or not (0.0 <= d.v <= d.c):
            errors.append("base point (u, v) must lie in [a, b] x [0, c]")
        for name, order in (("alpha", self.orders.alpha), ("beta", self.orders.beta)):
            if not 0.0 < order[0] < 1.0:
                errors.append(f"{name} real part must lie in (0, 1)")
        q = self.quadrature
        if q.nodes < 8:
            errors.append("quadrature nodes must be at least 8")
        if q.diff_step <= 0:
            errors.append("quadrature diff_step must be positive")
        if q.richardson_levels < 1:
            errors.append("quadrature richardson_levels must be at least 1")
        if q.grading_levels < 1 or not 0.0 < q.grading_ratio < 1.0:
            errors.append("quadrature grading needs levels >= 1 and ratio in (0, 1)")
        g = self.grid
        if g.n_x < 1 or g.n_y < 1:
            errors.append("grid needs at least one node per axis")
        if not 0.0 <= g.margin < 0.5:
            errors.append("grid margin must lie in [0, 0.5)")
        if self.variant not in VARIANTS:
            errors.append(f"variant must be one of {', '.join(VARIANTS)}")
        if any(t <= 0 for t in self.tolerances.values()):
            errors.append("tolerances must be positive")

        if errors:
            raise ConfigError(f"Configuration errors: {', '.join(errors)}")
        return True
