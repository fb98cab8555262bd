import json
from pathlib import Path

from typer.testing import CliRunner

from wgamma import cli
from wgamma.errors import InvariantError

runner = CliRunner()


def test_moments_marchenko_pastur():
    result = runner.invoke(cli.app, ["moments", "--m", "1", "--n", "1", "--p", "4"])
    assert result.exit_code == 0
    for line in ("M_1 = 1", "M_2 = 2", "M_3 = 5", "M_4 = 14", "routes-agree: yes"):
        assert line in result.output
    assert "M_3 = 5  (profiles 5, series 5, cumulants 5)" in result.output


def test_moments_exact_rational_input(tmp_path: Path):
    output = tmp_path / "moments.json"
    result = runner.invoke(
        cli.app,
        ["moments", "--m", "1/3", "--n", "1.5", "--p", "2", "--format", "json", "--output", str(output)],
    )
    assert result.exit_code == 0
    payload = json.loads(output.read_text(encoding="utf-8"))
    assert payload["m"] == "1/3"
    assert payload["n"] == "1.5"
    assert payload["routes_agree"] is True
    assert payload["moments"][1]["enumeration"] == "11/18"


def test_moments_rejects_bad_number():
    result = runner.invoke(cli.app, ["moments", "--m", "abc", "--n", "1"])
    assert result.exit_code == 2
    assert "--m" in result.output


def test_moments_rejects_out_of_domain_n():
    result = runner.invoke(cli.app, ["moments", "--m", "1", "--n", "0.5"])
    assert result.exit_code == 2
    assert "--n" in result.output


def test_moments_rejects_large_p():
    result = runner.invoke(cli.app, ["moments", "--m", "1", "--n", "1", "--p", "13"])
    assert result.exit_code == 2


def test_classify_ppt_regime():
    result = runner.invoke(cli.app, ["classify", "--m", "8", "--n", "2"])
    assert result.exit_code == 0
    assert "label: D" in result.output
    assert "label-by-roots: D" in result.output
    assert "positive: true" in result.output


def test_classify_marchenko_pastur_line():
    result = runner.invoke(cli.app, ["classify", "--m", "1", "--n", "1"])
    assert result.exit_code == 0
    assert "label: MP" in result.output
    assert "positive: true" in result.output


def test_classify_internal_error_exit_code(monkeypatch):
    def broken(params):
        raise InvariantError("no edges")

    monkeypatch.setattr(cli, "support_edges", broken)
    result = runner.invoke(cli.app, ["classify", "--m", "2", "--n", "2"])
    assert result.exit_code == 1


def test_density_writes_csv(tmp_path: Path):
    output = tmp_path / "density.csv"
    result = runner.invoke(
        cli.app, ["density", "--m", "2", "--n", "3", "--points", "30", "--output", str(output)]
    )
    assert result.exit_code == 0
    lines = output.read_text(encoding="utf-8").splitlines()
    assert json.loads(lines[0])["n"] == 3.0
    assert lines[1] == "x,rho"
    assert len(lines) == 32


def test_sweep_covers_grid(tmp_path: Path):
    output = tmp_path / "sweep.csv"
    result = runner.invoke(
        cli.app,
        ["sweep", "--m-steps", "4", "--n-steps", "3", "--output", str(output)],
    )
    assert result.exit_code == 0
    lines = output.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "m,n,label,positive,edge_1,edge_2,edge_3,edge_4"
    assert len(lines) == 1 + 12
    assert output.with_suffix(".gp").exists()


def test_sweep_rejects_bad_range(tmp_path: Path):
    result = runner.invoke(cli.app, ["sweep", "--m-min", "0", "--output", str(tmp_path / "s.csv")])
    assert result.exit_code == 2
    assert "--m-min" in result.output


def test_simulate_writes_spectra(tmp_path: Path):
    result = runner.invoke(
        cli.app,
        ["simulate", "--m", "2", "--n", "2", "--d", "5", "--samples", "3", "--output-dir", str(tmp_path)],
    )
    assert result.exit_code == 0
    run_dir = tmp_path / "simulate_m2_n2_d5_seed7"
    assert (run_dir / "spectra.csv").exists()
    assert (run_dir / "spectra.json").exists()
    assert (run_dir / "histogram.csv").exists()
    assert (run_dir / "overlay.gp").exists()


def test_compare_is_reproducible(tmp_path: Path):
    args = ["compare", "--m", "2", "--n", "2", "--d", "8", "--samples", "6", "--p", "3"]
    first = runner.invoke(cli.app, args + ["--output-dir", str(tmp_path / "a")])
    second = runner.invoke(cli.app, args + ["--output-dir", str(tmp_path / "b")])
    assert first.exit_code == 0
    assert second.exit_code == 0
    name = "compare_m2_n2_d8_seed7"
    for filename in ("comparison.json", "comparison.csv"):
        assert (tmp_path / "a" / name / filename).read_bytes() == (
            tmp_path / "b" / name / filename
        ).read_bytes()


def test_compare_requires_parameters():
    result = runner.invoke(cli.app, ["compare", "--n", "2"])
    assert result.exit_code == 2
    assert "--m" in result.output


def test_compare_unknown_preset():
    result = runner.invoke(cli.app, ["compare", "--preset", "nightly"])
    assert result.exit_code == 2
    assert "--preset" in result.output
