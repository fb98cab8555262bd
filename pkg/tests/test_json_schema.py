import json
from pathlib import Path

from jsonschema import validate

from wgamma.combinatorics import moment_routes
from wgamma.exporters import comparison_payload, moments_payload
from wgamma.models import Params, WishartConfig
from wgamma.simulator import compare_report, simulate, write_spectra
from wgamma.transforms import density_curve, read_density_header, write_density_csv

FIXTURES = Path(__file__).parent / "fixtures"


def load_schema(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def test_moments_schema():
    payload = moments_payload(2, 3, moment_routes(5, 2, 3))
    validate(payload, load_schema("moments_schema.json"))
    assert payload["moments"][2]["enumeration"] == "46"


def test_density_header_schema(tmp_path: Path):
    for params in (Params(0.25, 2), Params(1, 1.2), Params(8, 2)):
        path = write_density_csv(density_curve(params, points=10), tmp_path / "density.csv")
        validate(read_density_header(path), load_schema("density_header_schema.json"))


def test_spectra_sidecar_schema(tmp_path: Path):
    samples = simulate(WishartConfig(d=3, n=2, m=2, seed=1), 2)
    path = write_spectra(samples, tmp_path / "spectra.csv")
    sidecar = json.loads(path.with_suffix(".json").read_text(encoding="utf-8"))
    validate(sidecar, load_schema("spectra_sidecar_schema.json"))


def test_comparison_schema():
    report = compare_report(WishartConfig(d=6, n=2, m=1, seed=2), num_samples=4, p_max=4)
    validate(comparison_payload(report), load_schema("comparison_schema.json"))
