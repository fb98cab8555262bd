from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Optional

from wgamma.config import SimulationConfig
from wgamma.exporters import density_overlay_gnuplot, write_comparison, write_script
from wgamma.models import ComparisonReport, Params, SpectrumSample, WishartConfig
from wgamma.pdf_utils import build_comparison_summary_pdf
from wgamma.simulator import report_from_samples, simulate, write_histogram_csv, write_spectra
from wgamma.transforms import density_curve, write_density_csv
from wgamma.utils import ensure_dir

LOGGER = logging.getLogger(__name__)


class ExperimentRunner:
    """Runs Monte Carlo experiments for one configuration and writes their files.

    Progress events are dicts with an ``event`` key: ``sample_done`` after each
    spectrum and ``run_done`` once the files are written.
    """

    def __init__(
        self, config: SimulationConfig, progress_callback: Optional[Callable[[dict], None]] = None
    ):
        self.config = config
        self.progress_callback = progress_callback

    def wishart_config(self) -> WishartConfig:
        return WishartConfig(
            d=self.config.d,
            n=self.config.n,
            m=self.config.m,
            seed=self.config.seed,
            size_cap=self.config.size_cap,
        )

    def run_simulation(self, run_name: Optional[str] = None) -> dict:
        wishart = self.wishart_config()
        run_id = self._run_id("simulate", run_name)
        run_dir = ensure_dir(Path(self.config.output_dir) / run_id)

        samples = self._sample(wishart)
        spectra_csv = write_spectra(samples, run_dir / "spectra.csv")
        histogram_csv = write_histogram_csv(samples, run_dir / "histogram.csv")
        curve = density_curve(Params(wishart.m, wishart.n), threads=self.config.threads)
        density_csv = write_density_csv(curve, run_dir / "density.csv")
        overlay = write_script(
            density_overlay_gnuplot(density_csv.name, histogram_csv.name), run_dir / "overlay.gp"
        )

        result = {
            "run_id": run_id,
            "run_dir": str(run_dir),
            "spectra_csv": str(spectra_csv),
            "spectra_json": str(spectra_csv.with_suffix(".json")),
            "histogram_csv": str(histogram_csv),
            "density_csv": str(density_csv),
            "overlay_script": str(overlay),
            "samples": samples,
        }
        self._notify({"event": "run_done", "run_id": run_id, "run_dir": str(run_dir)})
        return result

    def run_comparison(self, run_name: Optional[str] = None) -> dict:
        wishart = self.wishart_config()
        run_id = self._run_id("compare", run_name)
        run_dir = ensure_dir(Path(self.config.output_dir) / run_id)

        samples = self._sample(wishart)
        report: ComparisonReport = report_from_samples(
            samples, self.config.p_max, self.config.bootstrap_resamples
        )
        comparison_json = run_dir / "comparison.json"
        comparison_csv = run_dir / "comparison.csv"
        write_comparison(report, comparison_json, comparison_csv)

        result = {
            "run_id": run_id,
            "run_dir": str(run_dir),
            "comparison_json": str(comparison_json),
            "comparison_csv": str(comparison_csv),
            "summary_pdf": None,
            "report": report,
        }
        if self.config.write_pdf:
            summary_pdf = run_dir / "summary.pdf"
            build_comparison_summary_pdf(summary_pdf, report, run_id)
            result["summary_pdf"] = str(summary_pdf)

        self._notify(
            {
                "event": "run_done",
                "run_id": run_id,
                "run_dir": str(run_dir),
                "max_abs_z": report.max_abs_z,
            }
        )
        return result

    def _sample(self, wishart: WishartConfig) -> list[SpectrumSample]:
        total = self.config.samples

        def on_sample(sample: SpectrumSample) -> None:
            self._notify(
                {
                    "event": "sample_done",
                    "sample_index": sample.sample_index,
                    "total": total,
                    "smallest": sample.smallest,
                }
            )

        return simulate(wishart, total, threads=self.config.threads, on_sample=on_sample)

    def _run_id(self, kind: str, run_name: Optional[str]) -> str:
        # No timestamp: identical settings map to the same directory.
        config = self.config
        base = f"{kind}_m{config.m}_n{config.n}_d{config.d}_seed{config.seed}"
        if run_name:
            return f"{run_name}_{base}"
        return base

    def _notify(self, payload: dict) -> None:
        if not self.progress_callback:
            return
        try:
            self.progress_callback(payload)
        except Exception:  # noqa: BLE001
            return
