"""PDF export of run reports."""
from __future__ import annotations

from datetime import datetime
from pathlib import Path
from typing import Any, Sequence

from reportlab.lib.pagesizes import A4
from reportlab.lib.units import cm
from reportlab.pdfgen import canvas

from .journal import RunReport

_TOP = 27 * cm
_BOTTOM = 2.5 * cm
_LINE = 0.55 * cm


def _create_canvas(dest: Path) -> canvas.Canvas:
    dest.parent.mkdir(parents=True, exist_ok=True)
    return canvas.Canvas(str(dest), pagesize=A4)


def _draw_header(c: canvas.Canvas, title: str, subtitle: str) -> None:
    c.setFont("Helvetica-Bold", 20)
    c.drawString(2.5 * cm, _TOP, title)
    c.setFont("Helvetica", 12)
    c.drawString(2.5 * cm, _TOP - 1.1 * cm, subtitle)
    c.setLineWidth(1)
    c.line(2.5 * cm, _TOP - 1.4 * cm, 18.5 * cm, _TOP - 1.4 * cm)


def _verified_text(report: RunReport) -> str:
    if report.verified is None:
        return "not applicable"
    return "passed" if report.verified else "FAILED"


def _draw_metadata(c: canvas.Canvas, report: RunReport) -> float:
    y = _TOP - 2.4 * cm
    c.setFont("Helvetica", 10)
    fields = [(key, value) for key, value in report.inputs.items()]
    fields += [
        ("verification", _verified_text(report)),
        ("wall time", f"{report.wall_time:.3f} s"),
        ("started", report.started_at),
    ]
    for label, value in fields:
        c.drawString(2.5 * cm, y, f"{label}: {value}")
        y -= _LINE
    return y - _LINE


def _draw_table(c: canvas.Canvas, headers: Sequence[str], rows: Sequence[Sequence[Any]], y: float) -> None:
    columns = max(len(headers), 1)
    width = 16 * cm / columns

    def draw_row(values: Sequence[Any], font: str, at: float) -> None:
        c.setFont(font, 9)
        for index, value in enumerate(values):
            c.drawString(2.5 * cm + index * width, at, str(value))

    draw_row(headers, "Helvetica-Bold", y)
    y -= _LINE
    for row in rows:
        if y < _BOTTOM:
            c.showPage()
            y = _TOP
            draw_row(headers, "Helvetica-Bold", y)
            y -= _LINE
        draw_row(row, "Courier", y)
        y -= _LINE


def export_report_pdf(
    title: str,
    report: RunReport,
    headers: Sequence[str],
    rows: Sequence[Sequence[Any]],
    dest: Path,
) -> Path:
    """Write a report with a metadata block and a result table."""
    c = _create_canvas(dest)
    _draw_header(c, title, f"dualtree {report.command}")
    y = _draw_metadata(c, report)
    _draw_table(c, headers, rows, y)
    c.setFont("Helvetica", 8)
    c.drawString(2 * cm, 1.5 * cm, f"Generated {datetime.now().strftime('%Y-%m-%d %H:%M')}")
    c.save()
    return dest
