"""
Unit tests for verification reports and their serialization
"""

import json
import math
import os
import sys

import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "..", "src"))

from verification.report import (  # noqa: E402
    CSV_HEADER,
    PointResidual,
    VerificationReport,
    atomic_write,
    reports_to_csv,
    reports_to_json,
    summary_table,
    write_reports,
)

UNIT = (1.0, 0.0, 0.0)


def make_report(residuals, tolerance=1e-8, kind="abs", name="demo", variant="corrected"):
    report = VerificationReport(name, variant, tolerance, residual_kind=kind)
    for index, (residual, scale) in enumerate(residuals):
        report.point_residuals.append(PointResidual(UNIT, 0.1 * (index + 1), 0.5, residual, scale))
    return report


class TestPointResidual:
    """Test cases for PointResidual"""

    def test_relative_residual(self):
        """Test residual over scale, with the zero cases pinned"""
        assert PointResidual(UNIT, 0.5, 0.5, 2e-9, 4.0).relative == pytest.approx(5e-10)
        assert PointResidual(UNIT, 0.5, 0.5, 0.0, 0.0).relative == 0.0
        assert PointResidual(UNIT, 0.5, 0.5, 1e-3, 0.0).relative == math.inf

    def test_error_only_serialized_when_set(self):
        """Test the error key appears for failed points only"""
        assert "error" not in PointResidual(UNIT, 0.5, 0.5, 0.0).to_dict()
        failed = PointResidual(UNIT, 0.5, 0.5, math.inf, error="x > a required").to_dict()
        assert failed["error"] == "x > a required"
        assert failed["residual"] is None


class TestVerificationReport:
    """Test cases for pass/fail logic and merging"""

    def test_passed_uses_selected_residual(self):
        """Test abs and rel residual kinds"""
        # Arrange
        residuals = [(1e-9, 1e-3), (2e-10, 1.0)]

        # Act
        absolute = make_report(residuals, tolerance=1e-8, kind="abs")
        relative = make_report(residuals, tolerance=1e-8, kind="rel")

        # Assert
        assert absolute.passed
        assert absolute.residual == pytest.approx(1e-9)
        assert not relative.passed
        assert relative.residual == pytest.approx(1e-6)

    def test_empty_report_passes(self):
        """Test a report without points passes on its checks alone"""
        report = make_report([])
        assert report.passed
        report.checks_ok = False
        assert not report.passed

    def test_point_error_fails(self):
        """Test a point that failed to evaluate fails the report"""
        report = make_report([(0.0, 1.0)])
        report.point_residuals.append(PointResidual(UNIT, 0.0, 0.5, 0.0, error="stencil"))
        assert not report.passed

    def test_merged(self):
        """Test merged reports keep all points, notes and the worst readings"""
        # Arrange
        first = make_report([(1e-10, 1.0)])
        first.notes.append("first")
        first.variant_outcomes["displayed"] = {"passed": False, "residual": 0.5}
        second = make_report([(3e-10, 1.0)])
        second.notes.append("second")
        second.checks_ok = False
        second.variant_outcomes["displayed"] = {"passed": False, "residual": 2.0}

        # Act
        merged = VerificationReport.merged([first, second])

        # Assert
        assert len(merged.point_residuals) == 2
        assert merged.notes == ["first", "second"]
        assert not merged.checks_ok
        assert merged.variant_outcomes == {"displayed": {"passed": False, "residual": 2.0}}

    def test_record_variant(self):
        """Test another reading's outcome is stored under its variant name"""
        report = make_report([(0.0, 1.0)])
        report.record_variant(make_report([(math.inf, 1.0)], variant="displayed"))
        assert report.variant_outcomes == {"displayed": {"passed": False, "residual": None}}


class TestSerialization:
    """Test cases for JSON, CSV and file output"""

    def test_json_has_no_infinities(self):
        """Test non-finite residuals become null and the document is strict JSON"""
        # Arrange
        report = make_report([(math.inf, 1.0)])

        # Act
        document = json.loads(reports_to_json([report]))

        # Assert
        (entry,) = document
        assert entry["passed"] is False
        assert entry["max_abs_residual"] is None
        assert entry["grid"] == [[1.0, 0.0, 0.0, 0.1, 0.5]]

    def test_json_is_deterministic(self):
        """Test identical reports serialize to identical text"""
        assert reports_to_json([make_report([(1e-9, 1.0)])]) == reports_to_json([make_report([(1e-9, 1.0)])])

    def test_csv_rows(self):
        """Test one CSV row per point after the header"""
        lines = reports_to_csv([make_report([(1e-9, 1.0), (2e-9, 1.0)])]).splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 3
        assert lines[1].startswith("demo,corrected,1,0,0,")

    def test_atomic_write(self, tmp_path):
        """Test the file is written and no temporary file is left behind"""
        path = tmp_path / "nested" / "out.txt"
        atomic_write(str(path), "hello\n")
        assert path.read_text() == "hello\n"
        assert os.listdir(path.parent) == ["out.txt"]

    def test_write_reports(self, tmp_path):
        """Test report.json and report.csv are written in format order"""
        written = write_reports([make_report([(0.0, 1.0)])], str(tmp_path))
        assert [os.path.basename(p) for p in written] == ["report.json", "report.csv"]
        assert write_reports([make_report([])], str(tmp_path), ("csv",)) == [str(tmp_path / "report.csv")]

    def test_summary_table(self):
        """Test the table lists each report and the pass count"""
        table = summary_table([make_report([(0.0, 1.0)]), make_report([(1.0, 1.0)], name="other")])
        lines = table.splitlines()
        assert "PASS" in lines[1]
        assert lines[2].startswith("other") and "FAIL" in lines[2]
        assert lines[-1] == "1/2 identities passed"
