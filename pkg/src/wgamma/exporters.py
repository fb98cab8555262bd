"""File formats shared by the CLI and the experiment runner."""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Sequence

from wgamma.combinatorics.moments import MomentRoutes
from wgamma.models import ComparisonReport
from wgamma.support import SweepRow
from wgamma.utils import dump_json, format_exact, format_float, write_csv

LOGGER = logging.getLogger(__name__)

SWEEP_HEADER = ("m", "n", "label", "positive", "edge_1", "edge_2", "edge_3", "edge_4")
COMPARISON_HEADER = ("p", "analytic", "empirical_mean", "standard_error", "z_score")


def _float_or_null(value: float):
    return float(value) if math.isfinite(value) else None


def moments_payload(m, n, routes: Sequence[MomentRoutes]) -> dict:
    return {
        "m": format_exact(m),
        "n": format_exact(n),
        "routes_agree": all(row.agree for row in routes),
        "moments": [
            {
                "p": row.p,
                "enumeration": format_exact(row.enumeration),
                "profiles": format_exact(row.profiles),
                "series": format_exact(row.series),
                "cumulants": format_exact(row.cumulants),
            }
            for row in routes
        ],
    }


def write_sweep_csv(rows: Sequence[SweepRow], path: Path) -> Path:
    def cells(row: SweepRow) -> list[str]:
        edges = [format_float(edge) for edge in row.edges] + [""] * (4 - len(row.edges))
        return [
            format_float(row.m),
            format_float(row.n),
            row.label,
            "true" if row.positive else "false",
        ] + edges

    write_csv(path, SWEEP_HEADER, (cells(row) for row in rows))
    LOGGER.info("Wrote %s sweep rows to %s", len(rows), path)
    return path


def comparison_payload(report: ComparisonReport) -> dict:
    config = report.config
    smallest = report.smallest
    return {
        "d": config.d,
        "m": config.m,
        "n": config.n,
        "seed": config.seed,
        "num_samples": report.num_samples,
        "max_abs_z": report.max_abs_z,
        "rows": [
            {
                "p": row.p,
                "analytic": format_exact(row.analytic),
                "empirical_mean": row.empirical_mean,
                "standard_error": _float_or_null(row.standard_error),
                "z_score": _float_or_null(row.z_score),
            }
            for row in report.rows
        ],
        "smallest_eigenvalue": {
            "mean": smallest.mean,
            "minimum": smallest.minimum,
            "support_infimum": smallest.support_infimum,
            "gap": smallest.gap,
            "fraction_near_zero": smallest.fraction_near_zero,
        },
    }


def write_comparison(report: ComparisonReport, json_path: Path, csv_path: Path) -> None:
    dump_json(json_path, comparison_payload(report))
    rows = [
        (
            row.p,
            format_exact(row.analytic),
            format_float(row.empirical_mean),
            format_float(row.standard_error),
            format_float(row.z_score),
        )
        for row in report.rows
    ]
    write_csv(csv_path, COMPARISON_HEADER, rows)


def phase_diagram_gnuplot(csv_name: str) -> str:
    """Script drawing the curves g, h and the sweep labels."""
    return f"""\
set datafile separator ","
set xlabel "m"
set ylabel "n"
set xrange [0:10]
set yrange [1:6]
set key outside right
set samples 500
h(m) = m/4 + 1/m
a(m) = 2 + m**2 + m*sqrt(4 + m**2)
g(m) = (3*2**(2./3)*a(m)**(1./3) + 6*2**(1./3)*a(m)**(-1./3) - 10)/(2*m)
label_id(s) = (s eq "A1") ? 1 : (s eq "A2") ? 2 : (s eq "B") ? 3 : (s eq "C") ? 4 : (s eq "D") ? 5 : 0
set palette defined (0 "grey", 1 "#1f77b4", 2 "#2ca02c", 3 "#d62728", 4 "#9467bd", 5 "#ff7f0e")
set cbrange [0:5]
set cbtics ("MP" 0, "A1" 1, "A2" 2, "B" 3, "C" 4, "D" 5)
plot "{csv_name}" every ::1 using 1:2:(label_id(strcol(3))) with points pt 5 ps 0.6 palette notitle, \\
     (x <= 4 ? g(x) : 1/0) with lines lw 2 lc rgb "black" title "g", \\
     h(x) with lines lw 2 dt 2 lc rgb "black" title "h"
"""


def density_overlay_gnuplot(density_csv: str, histogram_csv: str) -> str:
    """Script overlaying the limiting density on the eigenvalue histogram."""
    return f"""\
set datafile separator ","
set xlabel "x"
set ylabel "density"
set style fill transparent solid 0.4
plot "{histogram_csv}" every ::1 using (($1+$2)/2):3:($2-$1) with boxes title "eigenvalues", \\
     "{density_csv}" every ::2 using 1:2 with lines lw 2 title "limit"
"""


def write_script(text: str, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
