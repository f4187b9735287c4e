"""
Integration tests for the verify, eval and grid subcommands
"""

import json
import os
import subprocess
import sys

import pytest

REPO_ROOT = os.path.join(os.path.dirname(__file__), "..", "..")
FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def run_cli(*args, threads=None):
    """Run main.py with the given arguments from the repository root"""
    env = dict(os.environ)
    if threads is not None:
        env["FRACSLICE_THREADS"] = str(threads)
    return subprocess.run(
        [sys.executable, "main.py", *args],
        capture_output=True,
        text=True,
        cwd=REPO_ROOT,
        env=env,
    )


class TestVerifyCommand:
    """Integration tests for verify"""

    def test_passing_identities(self, tmp_path):
        """Test passing identities exit 0 and write both report files"""
        # Act
        result = run_cli("verify", "gamma", "example45_kernel", "--out", str(tmp_path))

        # Assert
        assert result.returncode == 0, result.stderr
        assert "identities passed" in result.stdout
        reports = json.loads((tmp_path / "report.json").read_text())
        assert {r["identity_name"] for r in reports} == {"gamma", "example45_kernel"}
        assert all(r["passed"] for r in reports)
        assert (tmp_path / "report.csv").read_text().startswith("identity,variant,u1,u2,u3,x,y,residual,error")

    def test_failed_identity(self, tmp_path):
        """Test a failing identity exits 1"""
        config = os.path.join(FIXTURES, "strict_gamma.json")
        result = run_cli("verify", "gamma", "--config", config, "--out", str(tmp_path))
        assert result.returncode == 1
        assert "FAIL" in result.stdout

    @pytest.mark.parametrize(
        "args",
        [
            ("verify", "riemann"),
            ("verify", "gamma", "--config", "missing.json"),
        ],
    )
    def test_usage_errors(self, args, tmp_path):
        """Test unknown identities and unreadable configs exit 2"""
        result = run_cli(*args, "--out", str(tmp_path))
        assert result.returncode == 2
        assert result.stderr.startswith("Error:")

    def test_reports_are_deterministic(self, tmp_path):
        """Test two runs with the same seed write identical reports"""
        first, second = tmp_path / "first", tmp_path / "second"
        for out in (first, second):
            result = run_cli("verify", "series", "kernel_N", "--seed", "5", "--format", "json", "--out", str(out))
            assert result.returncode == 0, result.stderr
        assert (first / "report.json").read_text() == (second / "report.json").read_text()
        assert not (first / "report.csv").exists()

    def test_full_run_is_deterministic_across_threads(self, tmp_path):
        """Test verify all with one seed writes the same report.json serially and on four threads"""
        # Arrange
        serial, threaded = tmp_path / "serial", tmp_path / "threaded"

        # Act
        results = [
            run_cli("verify", "all", "--seed", "7", "--format", "json", "--out", str(out), threads=threads)
            for out, threads in ((serial, 1), (threaded, 4))
        ]

        # Assert
        for result in results:
            assert result.returncode in (0, 1), result.stderr
            assert "Traceback" not in result.stderr
        assert (serial / "report.json").read_bytes() == (threaded / "report.json").read_bytes()


class TestEvalCommand:
    """Integration tests for eval"""

    def test_eval_json(self):
        """Test the JSON document of one evaluation"""
        # Act
        result = run_cli("eval", "d_rl_left", "--function", "one", "--unit", "e2", "--x", "0.5", "--y", "0.25")

        # Assert
        assert result.returncode == 0, result.stderr
        document = json.loads(result.stdout)
        assert set(document) == {"operator", "function", "unit", "x", "y", "value", "warnings"}
        assert document["unit"] == [0.0, 1.0, 0.0]
        assert len(document["value"]) == 4
        assert abs(document["value"][1]) < 1e-15 and abs(document["value"][3]) < 1e-15

    def test_eval_outside_domain(self):
        """Test a point outside the operator's domain exits 1"""
        result = run_cli("eval", "d_rl_left", "--function", "one", "--x", "0.0", "--y", "0.25")
        assert result.returncode == 1
        assert "d_rl_left" in result.stderr

    def test_eval_inline_function(self):
        """Test an inline monomial sum as --function"""
        function = json.dumps([{"scalar": [1.0, 0.0], "mu": [1.0, 0.0]}])
        result = run_cli("eval", "assoc_map", "--function", function, "--format", "csv")
        assert result.returncode == 0, result.stderr
        header, row = result.stdout.strip().splitlines()
        assert header == "u1,u2,u3,x,y,w,qx1,qx2,qx3"
        assert len(row.split(",")) == 9

    def test_kernel_needs_zeta(self):
        """Test kernel_N without --zeta is a usage error"""
        result = run_cli("eval", "kernel_N", "--x", "0.3", "--y", "0.2")
        assert result.returncode == 2


class TestGridCommand:
    """Integration tests for grid"""

    def test_grid_csv(self, tmp_path):
        """Test one CSV row per grid point"""
        # Arrange
        config = os.path.join(FIXTURES, "run_config.json")

        # Act
        result = run_cli("grid", "d_rl_left", "--function", "example45", "--config", config, "--out", str(tmp_path))

        # Assert
        assert result.returncode == 0, result.stderr
        lines = (tmp_path / "grid.csv").read_text().splitlines()
        assert lines[0] == "u1,u2,u3,x,y,w,qx1,qx2,qx3"
        assert len(lines) == 2 * 2 * 2 + 1

    def test_grid_json_to_stdout(self):
        """Test the JSON grid dump on stdout"""
        config = os.path.join(FIXTURES, "run_config.json")
        result = run_cli("grid", "d_caputo_left", "--function", "identity", "--config", config, "--format", "json")
        assert result.returncode == 0, result.stderr
        rows = json.loads(result.stdout)
        assert len(rows) == 8
        assert all(len(row["value"]) == 4 for row in rows)
