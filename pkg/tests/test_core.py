from pathlib import Path

from wgamma.config import SimulationConfig
from wgamma.core import ExperimentRunner


def small_config(tmp_path: Path, **overrides) -> SimulationConfig:
    values = dict(m=2, n=2, d=6, samples=4, p_max=3, seed=5, output_dir=str(tmp_path))
    values.update(overrides)
    return SimulationConfig(**values)


def test_comparison_run_writes_files_and_events(tmp_path: Path):
    events = []
    result = ExperimentRunner(small_config(tmp_path, write_pdf=True), events.append).run_comparison()
    assert Path(result["comparison_json"]).exists()
    assert Path(result["comparison_csv"]).exists()
    assert Path(result["summary_pdf"]).exists()
    assert result["run_id"] == "compare_m2_n2_d6_seed5"
    sample_events = [e for e in events if e["event"] == "sample_done"]
    assert sorted(e["sample_index"] for e in sample_events) == [0, 1, 2, 3]
    assert events[-1]["event"] == "run_done"
    assert [row.p for row in result["report"].rows] == [1, 2, 3]


def test_simulation_run_writes_overlay_files(tmp_path: Path):
    result = ExperimentRunner(small_config(tmp_path)).run_simulation(run_name="demo")
    assert result["run_id"] == "demo_simulate_m2_n2_d6_seed5"
    for key in ("spectra_csv", "spectra_json", "histogram_csv", "density_csv", "overlay_script"):
        assert Path(result[key]).exists()
    script = Path(result["overlay_script"]).read_text(encoding="utf-8")
    assert "density.csv" in script
    assert "histogram.csv" in script


def test_callback_errors_are_swallowed(tmp_path: Path):
    def broken(payload):
        raise RuntimeError("ui went away")

    result = ExperimentRunner(small_config(tmp_path), broken).run_comparison()
    assert result["report"].num_samples == 4
