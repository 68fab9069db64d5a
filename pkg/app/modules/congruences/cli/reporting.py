# app/modules/congruences/cli/reporting.py
"""Report writers: JSON lines, CSV and plain text."""
import csv
import json
from typing import TextIO

from app.modules.congruences.config import ModuleConfig, ReportFormat
from app.modules.congruences.core.schemas.congruence_schemas import Report


def write_json(report: Report, stream: TextIO, timing: bool = True) -> None:
    for result in report.results:
        stream.write(json.dumps(result.record(timing)) + "\n")
    stream.write(json.dumps({"summary": report.summary.model_dump()}) + "\n")


def write_csv(report: Report, stream: TextIO, timing: bool = True) -> None:
    writer = csv.DictWriter(stream, fieldnames=ModuleConfig.REPORT_FIELDS, lineterminator="\n")
    writer.writeheader()
    for result in report.results:
        row = result.record(timing)
        row["pass"] = "true" if row["pass"] else "false"
        row["micros"] = "" if row["micros"] is None else row["micros"]
        writer.writerow(row)


def write_text(report: Report, stream: TextIO, timing: bool = True) -> None:
    for result in report.results:
        where = f"p={result.p}" + (f" a={result.a}" if result.a else "")
        line = f"{result.check_id:<14} {where:<22} mod p^{result.t}: {result.lhs} vs {result.rhs} -> {result.status}"
        if timing and result.micros is not None:
            line += f" ({result.micros} us)"
        stream.write(line + "\n")
    stream.write(summary_line(report) + "\n")


def summary_line(report: Report) -> str:
    s = report.summary
    return (
        f"{s.total} results: {s.passed} passed, {s.failed} failed, {s.consistent} consistent, "
        f"{s.refuted} refuted, {s.skipped} skipped (exit {s.exit_code})"
    )


WRITERS = {
    ReportFormat.JSON: write_json,
    ReportFormat.CSV: write_csv,
    ReportFormat.TEXT: write_text,
}


def write_report(report: Report, stream: TextIO, fmt: ReportFormat = ReportFormat.JSON, timing: bool = True) -> None:
    WRITERS[ReportFormat(fmt)](report, stream, timing)
