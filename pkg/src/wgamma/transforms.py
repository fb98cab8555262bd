"""Analytic machinery for mu_{m,n}: MGF series, Cauchy transform and density.

The Cauchy transform G solves ``xi G^3 + (mn - 1) G^2 + (m - xi) G + 1 = 0``.
Numerically we work with ``H = 1 / G``, the root of the monic cubic
``H^3 + (m - xi) H^2 + (mn - 1) H + xi``, which stays well conditioned when
``xi`` is close to 0.
"""

from __future__ import annotations

import json
import logging
import math
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from scipy import integrate

from wgamma.config import resolve_threads
from wgamma.errors import DomainError, InvariantError
from wgamma.models import DensityCurve, Params
from wgamma.support import discriminant_quartic, support_edges
from wgamma.utils import format_float, ordered_map, write_csv

LOGGER = logging.getLogger(__name__)

MAX_SERIES_ORDER = 64
TOL_EDGE = 1e-6
EPS_REGULARIZATION = 1e-8
SEED_IMAG = 1e3
STEPS_PER_DECADE = 8
IMAG_TOL = 1e-12
NORMALIZATION_TOL = 1e-6
QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200

Scalar = Union[int, float, Fraction]


def free_poisson_parameters(params: Params) -> tuple[Scalar, Scalar]:
    """(s, t) with mu_{m,n} the free difference of free Poisson laws pi_s and pi_t."""
    return params.s, params.t


def r_transform(params: Params, z: complex) -> complex:
    if abs(z) == 1:
        raise DomainError(f"R-transform has poles at z = +-1, got {z}")
    s, t = free_poisson_parameters(params.as_float())
    return s / (1 - z) - t / (1 + z)


def _series_mul(left: Sequence[Scalar], right: Sequence[Scalar], size: int) -> list[Scalar]:
    out = [left[0] * 0] * size
    for i, a in enumerate(left[:size]):
        if a == 0:
            continue
        for j, b in enumerate(right[: size - i]):
            out[i + j] += a * b
    return out


def _series_inverse(series: Sequence[Scalar], size: int) -> list[Scalar]:
    head = series[0]
    out = [1 / head] + [head * 0] * (size - 1)
    for k in range(1, size):
        acc = sum(series[j] * out[k - j] for j in range(1, min(k, len(series) - 1) + 1))
        out[k] = -acc / head
    return out


def mgf_series(params: Params, order: int) -> list[Scalar]:
    """Moments M_0..M_order from ``F = 1 + m z F (1 + n z F) / (1 - z^2 F^2)``.

    Exact when both parameters are ``int``/``Fraction``. Coefficient k is
    final after k sweeps, so ``order + 1`` sweeps are enough.
    """
    if not 0 <= order <= MAX_SERIES_ORDER:
        raise DomainError(f"order must be in [0, {MAX_SERIES_ORDER}], got {order}")
    m, n = params.m, params.n
    exact = all(isinstance(value, (int, Fraction)) for value in (m, n))
    one: Scalar = Fraction(1) if exact else 1.0
    if not exact:
        m, n = float(m), float(n)
    size = order + 1
    coeffs: list[Scalar] = [one] + [one * 0] * order
    for _ in range(size):
        zf = [one * 0] + coeffs[:-1]
        zf_squared = _series_mul(zf, zf, size)
        denominator = [one] + [-c for c in zf_squared[1:]]
        factor = [one] + [n * c for c in zf[1:]]
        numerator = [m * c for c in _series_mul(zf, factor, size)]
        ratio = _series_mul(numerator, _series_inverse(denominator, size), size)
        coeffs = [one + ratio[0]] + ratio[1:]
    return coeffs


def _reciprocal_roots(m: float, n: float, xi: complex) -> np.ndarray:
    return np.roots([1.0, m - xi, m * n - 1, xi])


def cauchy_transform(params: Params, xi: complex) -> complex:
    """The Herglotz root G(xi), Im G < 0, connected to the 1/xi branch.

    The root is tracked from ``Re xi + i*SEED_IMAG`` down to ``xi`` along a
    geometric path in the imaginary part, matching the nearest root each step.
    """
    xi = complex(xi)
    if not xi.imag > 0:
        raise DomainError(f"Cauchy transform needs Im xi > 0, got {xi}")
    m, n = params.key()
    start = max(xi.imag, SEED_IMAG)
    steps = max(1, math.ceil(math.log10(start / xi.imag) * STEPS_PER_DECADE))
    current = complex(xi.real, start)
    for height in np.geomspace(start, xi.imag, steps + 1):
        roots = _reciprocal_roots(m, n, complex(xi.real, height))
        current = roots[np.argmin(np.abs(roots - current))]
    g = 1 / current
    if g.imag > IMAG_TOL * (1 + abs(g)):
        raise InvariantError(f"No root with Im G < 0 at xi={xi}, m={m}, n={n}: got {g}")
    return complex(g)


def _cubic_density(m: float, n: float, x: float) -> float:
    """|Im G(x)| / pi from the real cubic; 0 when all its roots are real."""
    if discriminant_quartic(Params(m, n))(x) >= 0:
        return 0.0
    roots = _reciprocal_roots(m, n, x)
    root = roots[np.argmax(np.abs(roots.imag))]
    return float(abs((1 / root).imag) / math.pi)


def density(params: Params, x: float) -> float:
    """Density of the absolutely continuous part at real x (the atom is excluded)."""
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x}")
    m, n = params.key()
    if m == 0:
        return 0.0
    edges = support_edges(params)
    if any(abs(x - edge) < TOL_EDGE for edge in edges):
        LOGGER.debug("Regularising density at x=%s near a support edge", x)
        g = cauchy_transform(params, complex(x, EPS_REGULARIZATION))
        return max(0.0, -g.imag / math.pi)
    return _cubic_density(m, n, x)


def atom_mass(params: Params) -> float:
    m, n = params.key()
    return max(1.0 - m * n, 0.0)


def mp_density(t: float, x: float) -> float:
    """Marchenko-Pastur density of pi_t on ((sqrt(t) - 1)^2, (sqrt(t) + 1)^2)."""
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t}")
    lower, upper = (math.sqrt(t) - 1) ** 2, (math.sqrt(t) + 1) ** 2
    if x <= 0 or x <= lower or x >= upper:
        return 0.0
    return math.sqrt(max(4 * t - (x - 1 - t) ** 2, 0.0)) / (2 * math.pi * x)


def semicircle_density(beta: float, x: float) -> float:
    """Semicircle of variance beta centred at 1."""
    if not beta > 0:
        raise DomainError(f"beta must be > 0, got {beta}")
    radicand = 4 * beta - (1 - x) ** 2
    if radicand <= 0:
        return 0.0
    return math.sqrt(radicand) / (2 * beta * math.pi)


def support_intervals(params: Params) -> list[tuple[float, float]]:
    """Intervals between consecutive edges that carry mass."""
    m, n = params.key()
    edges = support_edges(params)
    intervals = []
    for left, right in zip(edges, edges[1:]):
        if _cubic_density(m, n, (left + right) / 2) > 0:
            intervals.append((left, right))
    return intervals


@lru_cache(maxsize=1024)
def _continuous_moment(m: float, n: float, p: int) -> float:
    total = 0.0
    for left, right in support_intervals(Params(m, n)):
        half = (right - left) / 2

        # x = left + half (1 - cos theta) absorbs the square-root edges.
        def integrand(theta: float) -> float:
            x = left + half * (1 - math.cos(theta))
            return x**p * _cubic_density(m, n, x) * half * math.sin(theta)

        value, error = integrate.quad(
            integrand, 0.0, math.pi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
        )
        if error > 1e-6 * max(1.0, abs(value)):
            LOGGER.warning("Quadrature error %.3g on [%s, %s] for p=%s", error, left, right, p)
        total += value
    return total


def continuous_mass(params: Params) -> float:
    m, n = params.key()
    if m == 0:
        return 0.0
    return _continuous_moment(m, n, 0)


def numeric_moment(curve: DensityCurve, p: int) -> float:
    """atom * 0^p + integral of x^p rho(x) over the support."""
    if p < 0:
        raise DomainError(f"p must be >= 0, got {p}")
    total = curve.atom_mass + continuous_mass(curve.params)
    if abs(total - 1) > NORMALIZATION_TOL:
        raise DomainError(f"Curve is not normalised: total mass {total}")
    atom_part = curve.atom_mass if p == 0 else 0.0
    m, n = curve.params.key()
    if m == 0:
        return atom_part
    return atom_part + _continuous_moment(m, n, p)


def density_curve(
    params: Params, points: int = 1024, pad: float = 0.05, threads: Optional[int] = None
) -> DensityCurve:
    """Sample the density on a uniform grid covering the support plus padding."""
    if points < 2:
        raise DomainError(f"Need at least 2 grid points, got {points}")
    params = params.as_float()
    edges = support_edges(params) if params.m > 0 else []
    lower, upper = (edges[0], edges[-1]) if edges else (-1.0, 1.0)
    width = upper - lower
    xs = np.linspace(lower - pad * width, upper + pad * width, points)
    workers = resolve_threads(threads)
    rho = ordered_map(lambda x: density(params, float(x)), list(xs), workers)
    LOGGER.info("Sampled density at %s points for m=%s n=%s", points, params.m, params.n)
    return DensityCurve(
        params=params,
        atom_mass=atom_mass(params),
        xs=xs,
        rho=np.asarray(rho, dtype=float),
        support_edges=edges,
    )


def density_header(curve: DensityCurve) -> dict:
    m, n = curve.params.key()
    return {
        "atom_mass": curve.atom_mass,
        "m": m,
        "n": n,
        "support_edges": [float(edge) for edge in curve.support_edges],
    }


def write_density_csv(curve: DensityCurve, path: Path) -> Path:
    """One JSON header line, then ``x,rho`` rows."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        handle.write(json.dumps(density_header(curve), sort_keys=True) + "\n")
    rows = [(format_float(x), format_float(r)) for x, r in curve.grid]
    write_csv(path, ("x", "rho"), rows, append=True)
    return path


def read_density_header(path: Path) -> dict:
    with path.open("r", encoding="utf-8") as handle:
        return json.loads(handle.readline())
