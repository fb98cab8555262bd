"""Monte Carlo ground truth for the partially transposed complex Wishart ensemble."""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from wgamma.combinatorics import moment_enum
from wgamma.config import resolve_threads
from wgamma.errors import DomainError
from wgamma.models import (
    ComparisonReport,
    MomentRow,
    Params,
    SmallestEigenvalueSummary,
    SpectrumSample,
    WishartConfig,
)
from wgamma.support import support_edges, support_infimum
from wgamma.utils import dump_json, format_float, ordered_map, write_csv

LOGGER = logging.getLogger(__name__)

MAX_GAUSSIAN_ENTRIES = 1 << 24
HERMITIAN_TOL = 1e-10
EMPIRICAL_P_MAX = 8
NEAR_ZERO = 1e-3
BOOTSTRAP_STREAM = 2**32
DEFAULT_BINS = 64

SampleCallback = Callable[[SpectrumSample], None]


def sample_rng(seed: int, sample_index: int) -> np.random.Generator:
    """Independent stream per sample, so results do not depend on thread count."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(sample_index,)))


def sample_gaussian_matrix(
    rows: int, cols: int, rng: np.random.Generator, max_entries: int = MAX_GAUSSIAN_ENTRIES
) -> np.ndarray:
    """Complex entries (x + iy) / sqrt(2) with x, y standard normal, so E|G_ij|^2 = 1."""
    if rows < 1 or cols < 1:
        raise DomainError(f"Matrix dimensions must be positive, got {rows}x{cols}")
    if rows * cols > max_entries:
        raise DomainError(f"{rows}x{cols} Gaussian matrix exceeds the cap of {max_entries} entries")
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    return (real + 1j * imag) / math.sqrt(2)


def wishart(config: WishartConfig, rng: np.random.Generator) -> np.ndarray:
    """W = G G^* / (d m) with G of shape (d n, d m)."""
    gaussian = sample_gaussian_matrix(config.d * config.n, config.d * config.m, rng)
    matrix = gaussian @ gaussian.conj().T / (config.d * config.m)
    return (matrix + matrix.conj().T) / 2


def partial_transpose(matrix: np.ndarray, d: int, n: int) -> np.ndarray:
    """Transpose every n x n block in place: ``W^Gamma[(i,a),(j,b)] = W[(i,b),(j,a)]``."""
    size = d * n
    if matrix.shape != (size, size):
        raise DomainError(f"Expected a {size}x{size} matrix for d={d}, n={n}, got {matrix.shape}")
    return matrix.reshape(d, n, d, n).transpose(0, 3, 2, 1).reshape(size, size)


def spectrum(matrix: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError(f"Expected a square matrix, got shape {matrix.shape}")
    scale = max(1.0, float(np.max(np.abs(matrix))) if matrix.size else 1.0)
    if matrix.size and np.max(np.abs(matrix - matrix.conj().T)) > HERMITIAN_TOL * scale:
        raise DomainError("Matrix is not Hermitian")
    return np.linalg.eigvalsh(matrix)


def sample_spectrum(config: WishartConfig, sample_index: int) -> SpectrumSample:
    """Spectrum of m W^Gamma for one sample stream."""
    rng = sample_rng(config.seed, sample_index)
    transposed = partial_transpose(wishart(config, rng), config.d, config.n)
    eigenvalues = config.m * spectrum(transposed)
    return SpectrumSample(config=config, sample_index=sample_index, eigenvalues=eigenvalues)


def empirical_moments(sample: SpectrumSample, p_max: int) -> list[float]:
    """(dn)^-1 sum lambda^p for p = 1..p_max."""
    if not 1 <= p_max <= EMPIRICAL_P_MAX:
        raise DomainError(f"p_max must be in [1, {EMPIRICAL_P_MAX}], got {p_max}")
    values = sample.eigenvalues
    return [float(np.mean(values**p)) for p in range(1, p_max + 1)]


def simulate(
    config: WishartConfig,
    num_samples: int,
    threads: Optional[int] = None,
    on_sample: Optional[SampleCallback] = None,
) -> list[SpectrumSample]:
    if num_samples < 1:
        raise DomainError(f"num_samples must be >= 1, got {num_samples}")
    workers = resolve_threads(threads)

    def run_one(index: int) -> SpectrumSample:
        sample = sample_spectrum(config, index)
        if on_sample is not None:
            on_sample(sample)
        return sample

    LOGGER.info(
        "Sampling %s spectra at d=%s n=%s m=%s with %s threads",
        num_samples,
        config.d,
        config.n,
        config.m,
        workers,
    )
    return ordered_map(run_one, list(range(num_samples)), workers)


def bootstrap_standard_error(values: np.ndarray, resamples: int, rng: np.random.Generator) -> float:
    """Standard deviation of the resampled mean."""
    if len(values) < 2 or resamples < 1:
        return float("nan")
    picks = rng.integers(0, len(values), size=(resamples, len(values)))
    return float(np.std(values[picks].mean(axis=1), ddof=1))


def _z_score(mean: float, target: float, error: float) -> float:
    if not error > 0:
        return 0.0 if math.isclose(mean, target) else math.inf
    return (mean - target) / error


def smallest_eigenvalue_summary(samples: Sequence[SpectrumSample]) -> SmallestEigenvalueSummary:
    config = samples[0].config
    smallest = np.array([sample.smallest for sample in samples])
    pooled = np.concatenate([sample.eigenvalues for sample in samples])
    infimum = support_infimum(Params(config.m, config.n))
    return SmallestEigenvalueSummary(
        mean=float(smallest.mean()),
        minimum=float(smallest.min()),
        support_infimum=infimum,
        gap=abs(float(smallest.mean()) - infimum),
        fraction_near_zero=float(np.mean(np.abs(pooled) < NEAR_ZERO)),
    )


def report_from_samples(
    samples: Sequence[SpectrumSample], p_max: int, bootstrap_resamples: int = 1000
) -> ComparisonReport:
    config = samples[0].config
    table = np.array([empirical_moments(sample, p_max) for sample in samples])
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(BOOTSTRAP_STREAM,)))
    rows = []
    for p in range(1, p_max + 1):
        analytic = moment_enum(p, config.m, config.n)
        values = table[:, p - 1]
        mean = float(values.mean())
        error = bootstrap_standard_error(values, bootstrap_resamples, rng)
        rows.append(
            MomentRow(
                p=p,
                analytic=analytic,
                empirical_mean=mean,
                standard_error=error,
                z_score=_z_score(mean, float(analytic), error),
            )
        )
    return ComparisonReport(
        config=config,
        num_samples=len(samples),
        rows=rows,
        smallest=smallest_eigenvalue_summary(samples),
    )


def compare_report(
    config: WishartConfig,
    num_samples: int,
    p_max: int,
    bootstrap_resamples: int = 1000,
    threads: Optional[int] = None,
) -> ComparisonReport:
    """Per-p analytic vs empirical moments with bootstrap z-scores."""
    samples = simulate(config, num_samples, threads)
    return report_from_samples(samples, p_max, bootstrap_resamples)


def deviation_trend(
    m: int,
    n: int,
    dims: Sequence[int],
    samples: int,
    seed: int = 0,
    p: int = 2,
    threads: Optional[int] = None,
) -> list[tuple[int, float]]:
    """Root-mean-square deviation of the per-sample p-th moment from its limit, per d."""
    target = float(moment_enum(p, m, n))
    trend = []
    for d in dims:
        config = WishartConfig(d=d, n=n, m=m, seed=seed)
        moments = np.array(
            [empirical_moments(sample, p)[p - 1] for sample in simulate(config, samples, threads)]
        )
        rms = float(np.sqrt(np.mean((moments - target) ** 2)))
        LOGGER.info("d=%s: rms deviation of M_%s is %.3g", d, p, rms)
        trend.append((d, rms))
    return trend


def histogram_edges(config: WishartConfig, bins: int = DEFAULT_BINS, pad: float = 0.05) -> np.ndarray:
    """Fixed bin edges over the limiting support, padded like the density grid."""
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")
    edges = support_edges(Params(config.m, config.n))
    lower, upper = edges[0], edges[-1]
    width = upper - lower
    return np.linspace(lower - pad * width, upper + pad * width, bins + 1)


def histogram(samples: Sequence[SpectrumSample], bin_edges: np.ndarray) -> np.ndarray:
    """Pooled eigenvalue density per bin, normalised by the total eigenvalue count."""
    pooled = np.concatenate([sample.eigenvalues for sample in samples])
    counts, _ = np.histogram(pooled, bins=bin_edges)
    return counts / (len(pooled) * np.diff(bin_edges))


def write_histogram_csv(samples: Sequence[SpectrumSample], path: Path, bins: int = DEFAULT_BINS) -> Path:
    bin_edges = histogram_edges(samples[0].config, bins)
    heights = histogram(samples, bin_edges)
    rows = [
        (format_float(left), format_float(right), format_float(height))
        for left, right, height in zip(bin_edges[:-1], bin_edges[1:], heights)
    ]
    write_csv(path, ("bin_left", "bin_right", "density"), rows)
    return path


def write_spectra(samples: Sequence[SpectrumSample], path: Path) -> Path:
    """``sample_id,index,value`` rows plus a ``.json`` sidecar describing the run."""
    config = samples[0].config
    rows = (
        (sample.sample_index, index, format_float(value))
        for sample in samples
        for index, value in enumerate(sample.eigenvalues)
    )
    write_csv(path, ("sample_id", "index", "value"), rows)
    dump_json(
        path.with_suffix(".json"),
        {
            "d": config.d,
            "m": config.m,
            "n": config.n,
            "num_samples": len(samples),
            "seed": config.seed,
        },
    )
    LOGGER.info("Wrote %s spectra to %s", len(samples), path)
    return path
