from __future__ import annotations

from pathlib import Path

from wgamma.models import ComparisonReport
from wgamma.utils import format_exact


def _fmt(value: float, digits: int = 6) -> str:
    return f"{value:.{digits}g}"


def build_comparison_summary_pdf(output_path: Path, report: ComparisonReport, run_id: str) -> None:
    from reportlab.lib import colors
    from reportlab.lib.pagesizes import A4
    from reportlab.lib.styles import getSampleStyleSheet
    from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

    styles = getSampleStyleSheet()
    output_path.parent.mkdir(parents=True, exist_ok=True)
    # invariant=1 drops the creation date so reruns give identical bytes.
    doc = SimpleDocTemplate(str(output_path), pagesize=A4, invariant=1)
    config = report.config

    elements = []
    elements.append(Paragraph("Partial Transpose Comparison Summary", styles["Title"]))
    elements.append(Spacer(1, 12))
    elements.append(Paragraph(f"Run ID: {run_id}", styles["Normal"]))
    elements.append(
        Paragraph(f"Parameters: m={config.m}, n={config.n}, d={config.d}", styles["Normal"])
    )
    elements.append(
        Paragraph(f"Samples: {report.num_samples}, seed: {config.seed}", styles["Normal"])
    )
    max_z = "n/a" if report.max_abs_z is None else _fmt(report.max_abs_z, 4)
    elements.append(Paragraph(f"Max |z|: {max_z}", styles["Normal"]))
    elements.append(Spacer(1, 12))

    table_style = TableStyle(
        [
            ("BACKGROUND", (0, 0), (-1, 0), colors.lightgrey),
            ("GRID", (0, 0), (-1, -1), 0.5, colors.grey),
            ("VALIGN", (0, 0), (-1, -1), "TOP"),
        ]
    )

    moment_rows = [["p", "Analytic", "Empirical mean", "Std. error", "z"]]
    for row in report.rows:
        moment_rows.append(
            [
                str(row.p),
                format_exact(row.analytic),
                _fmt(row.empirical_mean),
                _fmt(row.standard_error, 3),
                _fmt(row.z_score, 3),
            ]
        )
    moment_table = Table(moment_rows, colWidths=[30, 100, 120, 100, 70])
    moment_table.setStyle(table_style)
    elements.append(Paragraph("Moments", styles["Heading2"]))
    elements.append(moment_table)
    elements.append(Spacer(1, 16))

    smallest = report.smallest
    smallest_rows = [
        ["Mean smallest eigenvalue", _fmt(smallest.mean)],
        ["Minimum over samples", _fmt(smallest.minimum)],
        ["Infimum of limiting support", _fmt(smallest.support_infimum)],
        ["Gap", _fmt(smallest.gap)],
        ["Fraction of |eigenvalue| < 1e-3", _fmt(smallest.fraction_near_zero)],
    ]
    smallest_table = Table(smallest_rows, colWidths=[220, 150])
    smallest_table.setStyle(
        TableStyle(
            [
                ("GRID", (0, 0), (-1, -1), 0.5, colors.grey),
                ("VALIGN", (0, 0), (-1, -1), "TOP"),
            ]
        )
    )
    elements.append(Paragraph("Smallest Eigenvalue", styles["Heading2"]))
    elements.append(smallest_table)

    doc.build(elements)
