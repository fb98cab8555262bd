from __future__ import annotations

import json
import logging
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

import typer

from wgamma.combinatorics import moment_routes
from wgamma.config import SimulationConfig, SweepConfig, resolve_presets
from wgamma.core import ExperimentRunner
from wgamma.errors import DomainError, InvariantError
from wgamma.exporters import moments_payload, phase_diagram_gnuplot, write_script, write_sweep_csv
from wgamma.models import Params
from wgamma.support import (
    classify_by_roots,
    classify_region,
    phase_diagram,
    positivity_verdict,
    support_edges,
)
from wgamma.transforms import density_curve, write_density_csv
from wgamma.utils import dump_json, format_exact, format_float, parse_rational

app = typer.Typer(add_completion=False)
logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Domain errors exit with 2, invariant breaches with 1."""
    try:
        yield
    except DomainError as exc:
        typer.echo(f"Error: {exc}", err=True)
        raise typer.Exit(code=2) from exc
    except InvariantError as exc:
        typer.echo(f"Internal error: {exc}", err=True)
        raise typer.Exit(code=1) from exc


def _parse_number(text: str, flag: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint=flag) from exc


def _parse_params(m: str, n: str, exact: bool = False) -> Params:
    m_value, n_value = _parse_number(m, "--m"), _parse_number(n, "--n")
    if m_value < 0:
        raise typer.BadParameter(f"must be >= 0, got {m}", param_hint="--m")
    if n_value < 1:
        raise typer.BadParameter(f"must be >= 1, got {n}", param_hint="--n")
    if exact:
        return Params(m_value, n_value)
    return Params(float(m_value), float(n_value))


@app.command("moments")
def moments(
    m: str = typer.Option(..., help="Parameter m >= 0, decimal or a/b"),
    n: str = typer.Option(..., help="Parameter n >= 1, decimal or a/b"),
    p: int = typer.Option(4, min=1, max=12, help="Highest moment order"),
    output_format: str = typer.Option("text", "--format", help="text or json"),
    output: Optional[Path] = typer.Option(None, help="Write the JSON payload to this file"),
):
    if output_format not in ("text", "json"):
        raise typer.BadParameter("must be text or json", param_hint="--format")
    params = _parse_params(m, n, exact=True)
    with _exit_codes():
        routes = moment_routes(p, params.m, params.n)
    payload = moments_payload(params.m, params.n, routes)
    if output:
        dump_json(output, payload)
    if output_format == "json":
        typer.echo(json.dumps(payload, indent=2, sort_keys=True))
        return
    for row in routes:
        typer.echo(
            f"M_{row.p} = {format_exact(row.enumeration)}"
            f"  (profiles {format_exact(row.profiles)},"
            f" series {format_exact(row.series)},"
            f" cumulants {format_exact(row.cumulants)})"
        )
    typer.echo(f"routes-agree: {'yes' if payload['routes_agree'] else 'no'}")


@app.command("density")
def density(
    m: str = typer.Option(..., help="Parameter m >= 0"),
    n: str = typer.Option(..., help="Parameter n >= 1"),
    points: int = typer.Option(1024, min=2, help="Grid points"),
    pad: float = typer.Option(0.05, min=0.0, help="Padding around the support, as a fraction"),
    output: Path = typer.Option(Path("outputs/density.csv"), help="CSV output path"),
    threads: Optional[int] = typer.Option(None, min=1, help="Worker threads"),
):
    params = _parse_params(m, n)
    with _exit_codes():
        curve = density_curve(params, points=points, pad=pad, threads=threads)
        write_density_csv(curve, output)
    typer.echo(f"Density written: {output}")


@app.command("classify")
def classify(
    m: str = typer.Option(..., help="Parameter m > 0"),
    n: str = typer.Option(..., help="Parameter n >= 1"),
):
    params = _parse_params(m, n)
    if params.m <= 0:
        raise typer.BadParameter("must be > 0", param_hint="--m")
    with _exit_codes():
        edges = support_edges(params)
        verdict = positivity_verdict(params)
        if params.n == 1:
            typer.echo("label: MP (Marchenko-Pastur, n = 1)")
        else:
            region = classify_region(params, strict=False)
            boundary = []
            if region.on_g_boundary:
                boundary.append("g")
            if region.on_h_boundary:
                boundary.append("h")
            suffix = f" (near boundary {', '.join(boundary)})" if boundary else ""
            typer.echo(f"label: {region.label}{suffix}")
            typer.echo(f"label-by-roots: {classify_by_roots(params).label}")
    typer.echo(f"positive: {'true' if verdict.positive else 'false'}")
    if verdict.marchenko_pastur_case:
        typer.echo("note: n = 1 is the Marchenko-Pastur case, positive for every m > 0")
    typer.echo("edges: " + ", ".join(format_float(edge) for edge in edges))


@app.command("sweep")
def sweep(
    m_min: float = typer.Option(0.2, help="Smallest m"),
    m_max: float = typer.Option(10.0, help="Largest m"),
    m_steps: int = typer.Option(40, min=1, help="Grid steps along m"),
    n_min: float = typer.Option(1.0, help="Smallest n"),
    n_max: float = typer.Option(6.0, help="Largest n"),
    n_steps: int = typer.Option(40, min=1, help="Grid steps along n"),
    output: Path = typer.Option(Path("outputs/sweep.csv"), help="CSV output path"),
    gnuplot: bool = typer.Option(True, help="Also write a gnuplot script next to the CSV"),
    threads: Optional[int] = typer.Option(None, min=1, help="Worker threads"),
):
    if m_min <= 0:
        raise typer.BadParameter("must be > 0", param_hint="--m-min")
    if m_max < m_min:
        raise typer.BadParameter("must be >= --m-min", param_hint="--m-max")
    if n_min < 1:
        raise typer.BadParameter("must be >= 1", param_hint="--n-min")
    if n_max < n_min:
        raise typer.BadParameter("must be >= --n-min", param_hint="--n-max")
    config = SweepConfig(
        m_min=m_min,
        m_max=m_max,
        m_steps=m_steps,
        n_min=n_min,
        n_max=n_max,
        n_steps=n_steps,
        threads=threads,
    )
    with _exit_codes():
        rows = phase_diagram(config)
        write_sweep_csv(rows, output)
    if gnuplot:
        script = write_script(phase_diagram_gnuplot(output.name), output.with_suffix(".gp"))
        typer.echo(f"Gnuplot script written: {script}")
    typer.echo(f"Sweep written: {output} ({len(rows)} rows)")


def _simulation_config(
    m: int, n: int, d: int, samples: int, p: int, seed: int, output_dir: str, threads, pdf: bool
) -> SimulationConfig:
    return SimulationConfig(
        m=m,
        n=n,
        d=d,
        samples=samples,
        p_max=p,
        seed=seed,
        output_dir=output_dir,
        threads=threads,
        write_pdf=pdf,
    )


def _log_progress(payload: dict) -> None:
    if payload.get("event") == "sample_done":
        LOGGER.debug("Sample %s/%s done", payload["sample_index"] + 1, payload["total"])


@app.command("simulate")
def simulate(
    m: int = typer.Option(..., min=1, help="Integer parameter m"),
    n: int = typer.Option(..., min=1, help="Integer parameter n"),
    d: int = typer.Option(200, min=1, help="Matrix dimension d"),
    samples: int = typer.Option(50, min=1, help="Number of samples"),
    seed: int = typer.Option(7, min=0, help="Base seed"),
    output_dir: str = typer.Option("outputs", help="Output directory"),
    threads: Optional[int] = typer.Option(None, min=1, help="Worker threads"),
):
    cfg = _simulation_config(m, n, d, samples, 4, seed, output_dir, threads, False)
    with _exit_codes():
        result = ExperimentRunner(cfg, _log_progress).run_simulation()
    typer.echo(f"Spectra written: {result['spectra_csv']}")
    typer.echo(f"Histogram written: {result['histogram_csv']}")


def _print_report(report) -> None:
    typer.echo("p,analytic,empirical_mean,standard_error,z_score")
    for row in report.rows:
        typer.echo(
            f"{row.p},{format_exact(row.analytic)},{row.empirical_mean:.6g},"
            f"{row.standard_error:.3g},{row.z_score:.3f}"
        )
    smallest = report.smallest
    typer.echo(
        f"smallest eigenvalue: mean {smallest.mean:.6g}, "
        f"support infimum {smallest.support_infimum:.6g}, gap {smallest.gap:.3g}"
    )


@app.command("compare")
def compare(
    m: Optional[int] = typer.Option(None, min=1, help="Integer parameter m"),
    n: Optional[int] = typer.Option(None, min=1, help="Integer parameter n"),
    d: int = typer.Option(200, min=1, help="Matrix dimension d"),
    samples: int = typer.Option(50, min=2, help="Number of samples"),
    p: int = typer.Option(4, min=1, max=8, help="Highest moment order"),
    seed: int = typer.Option(7, min=0, help="Base seed"),
    preset: Optional[str] = typer.Option(
        None, help="Named preset: acceptance, acceptance_2_2, acceptance_1_3, marchenko_pastur, ppt_regime"
    ),
    output_dir: str = typer.Option("outputs", help="Output directory"),
    pdf: bool = typer.Option(False, help="Write a PDF summary"),
    threads: Optional[int] = typer.Option(None, min=1, help="Worker threads"),
):
    if preset:
        try:
            presets = resolve_presets(preset)
        except KeyError as exc:
            raise typer.BadParameter(str(exc), param_hint="--preset") from exc
        for item in presets:
            cfg = _simulation_config(
                item.m, item.n, item.d, item.samples, item.p_max, seed, output_dir, threads, pdf
            )
            with _exit_codes():
                result = ExperimentRunner(cfg, _log_progress).run_comparison(run_name=item.name)
            typer.echo(f"Preset {item.name}:")
            _print_report(result["report"])
            typer.echo(f"Comparison written: {result['comparison_json']}")
        return

    if m is None:
        raise typer.BadParameter("required unless --preset is given", param_hint="--m")
    if n is None:
        raise typer.BadParameter("required unless --preset is given", param_hint="--n")
    cfg = _simulation_config(m, n, d, samples, p, seed, output_dir, threads, pdf)
    with _exit_codes():
        result = ExperimentRunner(cfg, _log_progress).run_comparison()
    _print_report(result["report"])
    typer.echo(f"Comparison written: {result['comparison_json']}")
    if result["summary_pdf"]:
        typer.echo(f"Summary PDF: {result['summary_pdf']}")


if __name__ == "__main__":
    app()
