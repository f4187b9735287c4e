"""
Report - verification reports and their JSON / CSV serialization
"""

import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Add src to path for imports (must be before local imports)
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from utils.logger import get_logger  # noqa: E402

logger = get_logger(__name__)

CSV_HEADER = ["identity", "variant", "u1", "u2", "u3", "x", "y", "residual", "error"]


def _finite(value: float) -> Optional[float]:
    """JSON has no inf/nan; non-finite residuals serialize as null"""
    value = float(value)
    return value if math.isfinite(value) else None


@dataclass
class PointResidual:
    """Residual of one identity at one evaluation point"""

    unit: Tuple[float, float, float]
    x: float
    y: float
    residual: float
    scale: float = 0.0
    error: Optional[str] = None

    @property
    def relative(self) -> float:
        if self.residual == 0.0:
            return 0.0
        if self.scale <= 0.0:
            return math.inf
        return self.residual / self.scale

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "unit": list(self.unit),
            "x": self.x,
            "y": self.y,
            "residual": _finite(self.residual),
        }
        if self.error is not None:
            data["error"] = self.error
        return data


@dataclass
class VerificationReport:
    """
    Outcome of one identity check

    ``passed`` is true exactly when ``checks_ok`` holds, the residual selected by
    ``residual_kind`` ("abs" or "rel") is at most ``tolerance`` and no
    point failed to evaluate.
    """

    identity_name: str
    variant: str
    tolerance: float
    point_residuals: List[PointResidual] = field(default_factory=list)
    residual_kind: str = "abs"
    backend: str = "symbolic"
    notes: List[str] = field(default_factory=list)
    variant_outcomes: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    checks_ok: bool = True

    @property
    def max_abs_residual(self) -> float:
        return max((p.residual for p in self.point_residuals), default=0.0)

    @property
    def max_rel_residual(self) -> float:
        return max((p.relative for p in self.point_residuals), default=0.0)

    @property
    def residual(self) -> float:
        return self.max_rel_residual if self.residual_kind == "rel" else self.max_abs_residual

    @property
    def passed(self) -> bool:
        if not self.checks_ok:
            return False
        if any(p.error is not None for p in self.point_residuals):
            return False
        return self.residual <= self.tolerance

    @property
    def grid(self) -> List[List[float]]:
        return [list(p.unit) + [p.x, p.y] for p in self.point_residuals]

    @classmethod
    def merged(cls, reports: Sequence["VerificationReport"]) -> "VerificationReport":
        """
        One report holding the points, notes and check flags of several runs of the same identity

        Recorded outcomes of other readings combine the same way: a reading
        passes when it passed in every run, with the largest residual kept.
        """
        first = reports[0]
        out = cls(first.identity_name, first.variant, first.tolerance, [], first.residual_kind, first.backend)
        for report in reports:
            out.point_residuals.extend(report.point_residuals)
            out.notes.extend(report.notes)
            out.checks_ok = out.checks_ok and report.checks_ok
            for reading, outcome in report.variant_outcomes.items():
                seen = out.variant_outcomes.setdefault(reading, dict(outcome))
                seen["passed"] = seen["passed"] and outcome["passed"]
                if outcome["residual"] is None or seen["residual"] is None:
                    seen["residual"] = None
                else:
                    seen["residual"] = max(seen["residual"], outcome["residual"])
        return out

    def record_variant(self, other: "VerificationReport") -> None:
        """Keep another reading's outcome alongside this report"""
        self.variant_outcomes[other.variant] = {
            "passed": other.passed,
            "residual": _finite(other.residual),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity_name": self.identity_name,
            "variant": self.variant,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "max_abs_residual": _finite(self.max_abs_residual),
            "max_rel_residual": _finite(self.max_rel_residual),
            "residual_kind": self.residual_kind,
            "checks_ok": self.checks_ok,
            "backend": self.backend,
            "grid": self.grid,
            "point_residuals": [p.to_dict() for p in self.point_residuals],
            "notes": list(self.notes),
            "variant_outcomes": {k: self.variant_outcomes[k] for k in sorted(self.variant_outcomes)},
        }

    def csv_rows(self) -> List[List[str]]:
        rows = []
        for p in self.point_residuals:
            rows.append(
                [self.identity_name, self.variant]
                + [format(c, ".17g") for c in p.unit]
                + [format(p.x, ".17g"), format(p.y, ".17g"), format(p.residual, ".17g"), p.error or ""]
            )
        return rows


def reports_to_json(reports: Sequence[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, allow_nan=False) + "\n"


def reports_to_csv(reports: Sequence[VerificationReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for report in reports:
        writer.writerows(report.csv_rows())
    return buffer.getvalue()


def atomic_write(path: str, text: str) -> None:
    """Write text to a temporary sibling file, then move it into place"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    handle, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        os.replace(tmp_path, path)
    except OSError:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logger.debug("wrote %s", path)


def write_reports(reports: Sequence[VerificationReport], out_dir: str, formats: Sequence[str] = ("json", "csv")) -> List[str]:
    """
    Write report.json and/or report.csv into out_dir

    Returns:
        Paths written, in format order
    """
    written = []
    if "json" in formats:
        path = os.path.join(out_dir, "report.json")
        atomic_write(path, reports_to_json(reports))
        written.append(path)
    if "csv" in formats:
        path = os.path.join(out_dir, "report.csv")
        atomic_write(path, reports_to_csv(reports))
        written.append(path)
    return written


def summary_table(reports: Sequence[VerificationReport]) -> str:
    """Fixed-width table: identity, variant, status, residual, tolerance"""
    lines = [f"{'identity':<22} {'variant':<10} {'status':<6} {'residual':>12} {'tolerance':>10}"]
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.identity_name:<22} {r.variant:<10} {status:<6} {r.residual:>12.3e} {r.tolerance:>10.1e}")
    passed = sum(1 for r in reports if r.passed)
    lines.append(f"{passed}/{len(reports)} identities passed")
    return "\n".join(lines)
