# app/reporting/formatter.py
"""
Text and JSON rendering of verification reports for the command line
"""

import json
from typing import Any, Dict, List


class ReportFormatter:
    """Format report dictionaries as compact text or JSON"""

    @staticmethod
    def format(report: Dict[str, Any], fmt: str = "text") -> str:
        """
        Render a report produced by one of the cli commands

        Args:
            report: dict with "command", "results" and "pass"
            fmt: "text" or "json"

        Returns:
            The rendered string
        """
        if fmt == "json":
            return json.dumps(report, indent=2, default=str)
        if fmt != "text":
            raise ValueError(f"Unknown output format {fmt!r}")
        return ReportFormatter._format_text(report)

    @staticmethod
    def _format_text(report: Dict[str, Any]) -> str:
        results: List[Dict[str, Any]] = report.get("results", [])
        passed = sum(1 for r in results if r.get("pass"))
        lines = [f"== {report.get('command', 'report')} =="]
        for result in results:
            lines.append(ReportFormatter._format_result(result))
        lines.append("")
        status = "PASS" if report.get("pass") else "FAIL"
        lines.append(f"{status}: {passed}/{len(results)} checks passed")
        skipped = report.get("skipped") or []
        if skipped:
            lines.append(f"skipped: {len(skipped)} parameter tuples outside the supported range")
        return "\n".join(lines)

    @staticmethod
    def _format_result(result: Dict[str, Any]) -> str:
        mark = "ok  " if result.get("pass") else "FAIL"
        params = result.get("params", {})
        label = " ".join(f"{k}={ReportFormatter._short(v)}" for k, v in params.items())
        detail = ReportFormatter._detail(result)
        return f"  [{mark}] {label}{'  ' + detail if detail else ''}"

    @staticmethod
    def _detail(result: Dict[str, Any]) -> str:
        """Pick the most informative numbers of a result line"""
        parts = []
        for key in ("side", "target_error", "residue_error", "residual", "tolerance"):
            if key in result:
                parts.append(f"{key}={ReportFormatter._short(result[key])}")
        if "checks" in result and isinstance(result["checks"], list):
            failed = [c.get("name") for c in result["checks"] if not c.get("pass")]
            if failed:
                parts.append("failed=" + ",".join(str(f) for f in failed))
        if "error" in result:
            parts.append(f"error={result['error']}")
        return " ".join(parts)

    @staticmethod
    def _short(value: Any) -> str:
        if isinstance(value, float):
            return f"{value:.3e}"
        if isinstance(value, list) and len(value) == 2 and all(isinstance(x, float) for x in value):
            return f"{value[0]:.4f}{value[1]:+.4f}i"
        return str(value)
