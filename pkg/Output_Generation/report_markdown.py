"""
Markdown rendering of report models, with HTML through the markdown package.

Numbers are printed with 12 significant digits.
"""

import logging
from typing import List, Optional, Sequence, Union

import markdown

from Data_Classes.reports import (
    AuditEntry,
    AuditReport,
    CurvatureSummary,
    EinsteinReport,
    FlatnessReport,
    ReportMetadata,
    ZooDescription,
    ZooListing,
)

logger = logging.getLogger(__name__)

Renderable = Union[AuditReport, FlatnessReport, EinsteinReport, CurvatureSummary,
                   ZooDescription, List[ZooListing]]

STATUS_MARKS = {"pass": "✅ pass", "fail": "❌ fail", "skip": "⏭ skip", "finding": "📐 finding"}


def fmt(value: Optional[float]) -> str:
    """Numbers in reports carry 12 significant digits; missing values print as '-'."""
    if value is None:
        return "-"
    return "%.12g" % value


def fmt_list(values: Sequence[float]) -> str:
    return ", ".join(fmt(v) for v in values)


def _cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", " ")


class ReportMarkdown:
    """Renders report models as markdown, and as HTML through the markdown package."""

    def __init__(self, report: Renderable):
        self.report = report
        self.content: Optional[str] = None

    def generate(self) -> str:
        """Build the markdown text for the wrapped report."""
        report = self.report
        if isinstance(report, AuditReport):
            lines = self._audit(report)
        elif isinstance(report, FlatnessReport):
            lines = self._flatness(report)
        elif isinstance(report, EinsteinReport):
            lines = self._einstein(report)
        elif isinstance(report, CurvatureSummary):
            lines = self._curvature(report)
        elif isinstance(report, ZooDescription):
            lines = self._description(report)
        elif isinstance(report, list):
            lines = self._listing(report)
        else:
            raise TypeError(f"cannot render {type(report).__name__}")
        self.content = "\n".join(lines).rstrip("\n") + "\n"
        return self.content

    def to_html(self) -> str:
        if self.content is None:
            self.generate()
        html = markdown.markdown(self.content, extensions=['extra'])
        logger.debug(f"Rendered {len(html)} characters of HTML")
        return html

    def save_html(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.to_html())
        logger.info(f"💾 HTML report written to {path}")

    @staticmethod
    def _metadata(metadata: Optional[ReportMetadata]) -> List[str]:
        if metadata is None:
            return []
        lines = [f"**Manifold:** {metadata.manifold} | **Seed:** {metadata.seed} | "
                 f"**Samples:** {metadata.samples}"]
        if metadata.command:
            lines.append("")
            lines.append(f"**Command:** `{metadata.command}`")
        for note in metadata.notes:
            lines.append("")
            lines.append(f"*{note}*")
        lines.append("")
        return lines

    @staticmethod
    def _entry_row(entry: AuditEntry) -> str:
        cells = [
            _cell(entry.name),
            STATUS_MARKS[entry.status],
            fmt(entry.max_residual),
            fmt(entry.tol),
            fmt(entry.value),
            entry.provenance,
            _cell(entry.anchor) or "-",
            _cell(entry.note) or "-",
        ]
        return "| " + " | ".join(cells) + " |"

    def _audit(self, report: AuditReport) -> List[str]:
        lines = [f"# {report.title}", ""]
        lines += self._metadata(report.metadata)
        counts = {status: 0 for status in STATUS_MARKS}
        for entry in report.entries:
            counts[entry.status] += 1
        summary = ", ".join(f"{counts[s]} {s}" for s in STATUS_MARKS if counts[s])
        lines.append(f"**Entries:** {len(report.entries)} ({summary or 'none'})")
        lines.append("")
        if report.entries:
            lines.append("| Identity | Status | Max residual | Tol | Value | Provenance | Anchor | Note |")
            lines.append("|---|---|---|---|---|---|---|---|")
            lines += [self._entry_row(entry) for entry in report.entries]
            lines.append("")
        if report.gating:
            verdict = "all checks passed" if report.passed else f"{len(report.failed_entries)} check(s) failed"
        else:
            verdict = "audit report; findings do not affect the exit status"
        lines.append(f"**Result:** {verdict}")
        return lines

    def _flatness(self, report: FlatnessReport) -> List[str]:
        lines = [f"# Flatness of the {report.tensor_name} tensor", ""]
        lines += self._metadata(report.metadata)
        if report.a is not None and report.b is not None:
            lines.append(f"**Parameters:** a = {fmt(report.a)}, b = {fmt(report.b)}")
            lines.append("")
        if report.note:
            lines.append(f"*{report.note}*")
            lines.append("")
        lines.append(f"- Max orthonormal component: {fmt(report.max_component)}")
        lines.append(f"- Tolerance: {fmt(report.tol)}")
        lines.append(f"- Points: {report.samples}")
        lines.append(f"- Flat: {'yes' if report.is_flat else 'no'}")
        return lines

    def _einstein(self, report: EinsteinReport) -> List[str]:
        lines = ["# Einstein check", ""]
        lines += self._metadata(report.metadata)
        lines.append(f"- lambda: {fmt(report.lambda_)}")
        lines.append(f"- Mean scalar curvature: {fmt(report.scal)}")
        lines.append(f"- Max residual of Ric - lambda g: {fmt(report.max_residual)}")
        lines.append(f"- Tolerance: {fmt(report.tol)}")
        lines.append(f"- Einstein: {'yes' if report.is_einstein else 'no'}")
        return lines

    def _curvature(self, report: CurvatureSummary) -> List[str]:
        lines = ["# Curvature summary", ""]
        lines += self._metadata(report.metadata)
        if report.at is not None:
            lines.append(f"**Point:** ({fmt_list(report.at)})")
            lines.append("")
            lines.append(f"- Scalar curvature: {fmt(report.scal_min)}")
            lines.append(f"- Ricci eigenvalues: {fmt_list(report.ricci_eigenvalues_min)}")
        else:
            lines.append(f"**Points:** {report.points}")
            lines.append("")
            lines.append(f"- Scalar curvature: min {fmt(report.scal_min)}, max {fmt(report.scal_max)}")
            lines.append(f"- Ricci eigenvalues (min): {fmt_list(report.ricci_eigenvalues_min)}")
            lines.append(f"- Ricci eigenvalues (max): {fmt_list(report.ricci_eigenvalues_max)}")
        lines.append(f"- Sectional curvature over {report.planes} planes: "
                     f"min {fmt(report.sectional_min)}, max {fmt(report.sectional_max)}")
        return lines

    @staticmethod
    def _listing(entries: List[ZooListing]) -> List[str]:
        lines = ["# Built-in manifolds", ""]
        for item in entries:
            kind = "plain" if item.type == "plain" else f"type {item.type}"
            lines.append(f"- {item.name} (dim {item.dim}, {kind}): {item.summary}")
        return lines

    @staticmethod
    def _description(item: ZooDescription) -> List[str]:
        kind = "plain manifold" if item.type == "plain" else f"contact pair of type {item.type}"
        lines = [f"# {item.name}", "", item.summary, "",
                 f"**Dimension:** {item.dim} | **Structure:** {kind}", "",
                 "## Chart", ""]
        for name, (low, high) in zip(item.coords, item.box):
            lines.append(f"- {name} in [{fmt(low)}, {fmt(high)}]")
        lines.append("")
        lines.append("## Fields")
        lines.append("")
        for kind_name, names in item.fields.items():
            lines.append(f"- {kind_name}: {', '.join(names) if names else 'none'}")
        lines.append("")
        lines.append("## Expected values")
        lines.append("")
        if not item.expected:
            lines.append("*No expected values recorded.*")
            return lines
        lines.append("| Quantity | Value | Provenance | Anchor |")
        lines.append("|---|---|---|---|")
        for expected in item.expected:
            lines.append(f"| {_cell(expected.name)} | {_cell(expected.value)} | "
                         f"{expected.provenance} | {_cell(expected.anchor) or '-'} |")
        return lines
