"""
Unit tests for environment settings, run configurations and the identity registry
"""

import json
import os
import sys
from importlib import reload
from unittest.mock import patch

import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from utils import config  # noqa: E402
from utils.config import DEFAULT_TOLERANCES, RunConfig  # noqa: E402
from utils.errors import ConfigError, DomainError  # noqa: E402
from verification import registry  # noqa: E402
from verification.registry import IDENTITY_NAMES, RunContext, resolve_names, run_identities, run_identity  # noqa: E402
from verification.report import reports_to_json  # noqa: E402


class TestEnvironmentConfig:
    """Test cases for Config"""

    def teardown_method(self):
        """Restore settings read from the real environment"""
        reload(config)

    def test_defaults_validate(self):
        """Test the default environment is valid"""
        assert config.Config.validate() is True
        assert config.Config.get_threads() >= 1
        assert isinstance(config.Config.is_debug(), bool)

    @patch.dict(os.environ, {"FRACSLICE_THREADS": "4", "FRACSLICE_SEED": "11"})
    def test_environment_override(self):
        """Test settings can be overridden by environment variables"""
        reload(config)
        assert config.Config.get_threads() == 4
        assert config.Config.SEED == 11
        assert config.RunConfig().seed == 11

    @pytest.mark.parametrize(
        "env",
        [{"FRACSLICE_THREADS": "0"}, {"FRACSLICE_VARIANT": "literal"}, {"LOG_LEVEL": "LOUD"}],
    )
    def test_invalid_environment(self, env):
        """Test invalid settings raise ValueError"""
        with patch.dict(os.environ, env):
            reload(config)
            with pytest.raises(ValueError):
                config.Config.validate()


class TestRunConfig:
    """Test cases for RunConfig"""

    def test_from_dict_sections(self):
        """Test every section is read and the rest keep their defaults"""
        # Arrange
        data = {
            "domain": {"a": -1, "b": 1, "c": 2, "u": 0, "v": 1},
            "orders": {"alpha": [0.3, 0.1]},
            "quadrature": {"nodes": 32.0},
            "grid": {"n_x": 2, "n_y": 3, "units": [[0, 1, 0]]},
            "seed": 3,
            "tolerances": {"gamma": 1e-9},
        }

        # Act
        run = RunConfig.from_dict(data)

        # Assert
        assert run.domain.a == -1.0 and run.domain.c == 2.0
        assert run.orders.alpha == (0.3, 0.1)
        assert run.orders.beta == (0.4, -0.1)
        assert run.quadrature.nodes == 32 and isinstance(run.quadrature.nodes, int)
        assert run.grid.n_y == 3
        assert run.seed == 3
        assert run.tolerances["gamma"] == 1e-9
        assert run.tolerances["series"] == DEFAULT_TOLERANCES["series"]

    @pytest.mark.parametrize(
        "data",
        [
            [],
            {"domains": {}},
            {"domain": {"a": 1.0, "b": 0.0}},
            {"domain": {"z": 1.0}},
            {"orders": {"alpha": [1.5, 0.0]}},
            {"orders": {"beta": [0.5]}},
            {"quadrature": {"nodes": 4}},
            {"grid": {"margin": 0.6}},
            {"variant": "literal"},
            {"tolerances": {"nonsense": 1.0}},
            {"tolerances": {"gamma": 0.0}},
        ],
    )
    def test_from_dict_errors(self, data):
        """Test malformed or invalid documents raise ConfigError"""
        with pytest.raises(ConfigError):
            RunConfig.from_dict(data)

    def test_config_error_is_value_error(self):
        """Test callers catching ValueError also see configuration errors"""
        assert issubclass(ConfigError, ValueError)

    def test_load(self, tmp_path):
        """Test loading from a file, the defaults, and unreadable files"""
        # Arrange
        good = tmp_path / "run.json"
        good.write_text(json.dumps({"seed": 21}))
        bad = tmp_path / "bad.json"
        bad.write_text("{seed: 21")

        # Act / Assert
        assert RunConfig.load(str(good)).seed == 21
        assert RunConfig.load(None) == RunConfig()
        with pytest.raises(ConfigError):
            RunConfig.load(str(bad))
        with pytest.raises(ConfigError):
            RunConfig.load(str(tmp_path / "missing.json"))

    def test_with_overrides(self):
        """Test CLI flags replace seed and variant"""
        run = RunConfig().with_overrides(seed=99, variant="displayed")
        assert (run.seed, run.variant) == (99, "displayed")
        assert RunConfig().with_overrides() == RunConfig()
        with pytest.raises(ConfigError):
            RunConfig().with_overrides(variant="literal")


class TestRegistry:
    """Test cases for identity name resolution and single runs"""

    def setup_method(self):
        """Set up test fixtures"""
        self.ctx = RunContext.from_config(RunConfig())

    def test_every_identity_has_a_tolerance(self):
        """Test each registered identity has a tolerance of its own"""
        assert set(IDENTITY_NAMES) <= set(DEFAULT_TOLERANCES)

    def test_resolve_names(self):
        """Test all, de-duplication and unknown names"""
        assert resolve_names(["all"]) == list(IDENTITY_NAMES)
        assert resolve_names([]) == list(IDENTITY_NAMES)
        assert resolve_names(["gamma", "series", "gamma"]) == ["gamma", "series"]
        with pytest.raises(ConfigError):
            resolve_names(["gamma", "riemann"])

    def test_context_from_config(self):
        """Test the context carries the resolved domain, grid and seed"""
        assert self.ctx.dom.b == 1.0
        assert len(self.ctx.grid) == 8 * 8 * 8
        assert len(self.ctx.small_grid) == 8
        assert self.ctx.seed == RunConfig().seed

    def test_random_streams_are_per_identity(self):
        """Test each identity draws from its own seeded stream"""
        assert self.ctx.rng("series").random() == self.ctx.rng("series").random()
        assert self.ctx.rng("series").random() != self.ctx.rng("kernel_N").random()

    def test_run_gamma(self):
        """Test a single registered identity runs and passes"""
        (report,) = run_identity("gamma", self.ctx)
        assert report.identity_name == "gamma"
        assert report.passed

    def test_example45_quadrature_check_covers_grid(self):
        """Test the quadrature half of example45_kernel runs on a nonzero member over the full grid"""
        # Act
        symbolic, sampled = run_identity("example45_kernel", self.ctx)

        # Assert
        assert symbolic.backend == "symbolic"
        assert sampled.backend == "sampled"
        assert sampled.notes == ["function kernel_linear"]
        assert len(sampled.point_residuals) == len(self.ctx.grid)
        assert symbolic.passed and sampled.passed, (symbolic.residual, sampled.residual)

    def test_reports_identical_across_thread_counts(self):
        """Test serial and threaded runs of the same context serialize identically"""
        # Arrange
        names = ["gamma", "power_rule", "rl_caputo_link", "series", "kernel_N"]

        # Act
        serial = reports_to_json(run_identities(names, self.ctx, threads=1))
        threaded = reports_to_json(run_identities(names, self.ctx, threads=4))

        # Assert
        assert serial == threaded
        assert [r["identity_name"] for r in json.loads(serial)][0] == "gamma"

    def test_run_failure_becomes_report(self):
        """Test an entry raising a library error yields a failed report"""
        # Arrange
        def broken(ctx):
            raise DomainError("no points")

        # Act
        with patch.dict(registry.REGISTRY, {"gamma": broken}):
            (report,) = run_identity("gamma", self.ctx)

        # Assert
        assert not report.passed
        assert report.notes == ["not run: no points"]
