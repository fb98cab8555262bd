"""Support classification of mu_{m,n} from the discriminant of its Cauchy cubic.

The support edges are the real roots of the quartic Delta(xi), the
discriminant in G of ``xi G^3 + (mn - 1) G^2 + (m - xi) G + 1``. Regions of the
(m, n) plane are separated by the curves g (where Delta has a double root,
P(m, n) = 0) and h (where Delta(0) changes sign); A1, A2 and B have two
support intervals, C and D one.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from wgamma.config import SweepConfig, resolve_threads
from wgamma.errors import BoundaryError, DomainError, InvariantError
from wgamma.models import Params, PositivityVerdict, QuarticPoly, RegionLabel
from wgamma.utils import ordered_map

LOGGER = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
REAL_ROOT_TOL = 1e-8
REGIONS = ("A1", "A2", "B", "C", "D")
MARCHENKO_PASTUR_LABEL = "MP"


@lru_cache(maxsize=4096)
def discriminant_quartic(params: Params) -> QuarticPoly:
    m, n = params.key()
    return QuarticPoly(
        c4=4.0,
        c3=-12 * m,
        c2=n**2 * m**2 + 12 * m**2 - 20 * n * m - 8,
        c1=-2 * n**2 * m**3 - 4 * m**3 + 22 * n * m**2 - 20 * m,
        c0=n**2 * m**4 - 4 * n**3 * m**3 - 2 * n * m**3 + 12 * n**2 * m**2 + m**2 - 12 * n * m + 4,
    )


def delta_at_zero(params: Params) -> float:
    m, n = params.key()
    return (m**2 - 4 * m * n + 4) * (m * n - 1) ** 2


def cubic_discriminant(params: Params, xi: float) -> float:
    """Algebraic discriminant of the Cauchy cubic ``a G^3 + b G^2 + c G + d``."""
    m, n = params.key()
    a, b, c, d = xi, m * n - 1, m - xi, 1.0
    return 18 * a * b * c * d - 4 * b**3 * d + b**2 * c**2 - 4 * a * c**3 - 27 * a**2 * d**2


def p_poly(params: Params) -> float:
    m, n = params.key()
    return m**3 * n**3 + 15 * m**2 * n**2 + 48 * m * n - 27 * m**2 - 64


def delta2(params: Params) -> float:
    """Discriminant of Delta; its sign is opposite to P(m, n) when n > 1."""
    m, n = params.key()
    return -256 * m**2 * (n - 1) * (n + 1) * p_poly(params) ** 3


def h_curve(m: float) -> float:
    if m <= 0:
        raise DomainError(f"h(m) needs m > 0, got {m}")
    return m / 4 + 1 / m


def g_curve(m: float) -> float:
    """The real root in n of P(m, n), for m in (0, 4]."""
    if not 0 < m <= 4:
        raise DomainError(f"g(m) needs m in (0, 4], got {m}")
    radicand = 2 + m**2 + m * math.sqrt(4 + m**2)
    n = (
        3 * 2 ** (2 / 3) * radicand ** (1 / 3)
        + 6 * 2 ** (1 / 3) * radicand ** (-1 / 3)
        - 10
    ) / (2 * m)
    # Newton polish on P(m, .); the closed form loses digits for small m.
    for _ in range(4):
        value = m**3 * n**3 + 15 * m**2 * n**2 + 48 * m * n - 27 * m**2 - 64
        slope = 3 * m**3 * n**2 + 30 * m**2 * n + 48 * m
        if slope == 0:
            break
        step = value / slope
        n -= step
        if abs(step) <= 1e-15 * abs(n):
            break
    return n


def p_curves(m: float) -> tuple[float, float]:
    """Roots in n of Delta'(0) = 0, smaller first."""
    limit = 9 / math.sqrt(8)
    if not 0 < m <= limit * (1 + 1e-12):
        raise DomainError(f"p curves need m in (0, 9/sqrt(8)], got {m}")
    root = math.sqrt(max(81 - 8 * m**2, 0.0))
    return (11 - root) / (2 * m), (11 + root) / (2 * m)


def q_curves(m: float) -> tuple[float, float]:
    """Roots in n of Delta''(0) = 0, smaller first."""
    if not 0 < m <= 3 * (1 + 1e-12):
        raise DomainError(f"q curves need m in (0, 3], got {m}")
    root = 2 * math.sqrt(3) * math.sqrt(max(9 - m**2, 0.0))
    return (10 - root) / m, (10 + root) / m


def real_roots(quartic: QuarticPoly) -> list[float]:
    """Real roots by companion-matrix eigenvalues plus one Newton polish each."""
    roots = np.roots(quartic.coefficients)
    result: list[float] = []
    for root in roots:
        if abs(root.imag) > REAL_ROOT_TOL * (1 + abs(root)):
            continue
        x = float(root.real)
        slope = quartic.derivative(x)
        if slope != 0:
            polished = x - quartic(x) / slope
            if abs(quartic(polished)) < abs(quartic(x)):
                x = polished
        result.append(x)
    return sorted(result)


def marchenko_pastur_edges(t: float) -> list[float]:
    root = math.sqrt(t)
    return [(root - 1) ** 2, (root + 1) ** 2]


@lru_cache(maxsize=4096)
def _edges(params: Params) -> tuple[float, ...]:
    m, n = params.key()
    if m <= 0:
        raise DomainError("mu_{0,n} is the point mass at 0 and has no support edges")
    if n == 1:
        # Delta carries a spurious double root there, from the factor (G + 1).
        return tuple(marchenko_pastur_edges(m))
    roots = real_roots(discriminant_quartic(params))
    if len(roots) not in (2, 4):
        raise InvariantError(f"Discriminant has {len(roots)} real roots at m={m}, n={n}")
    return tuple(roots)


def support_edges(params: Params) -> list[float]:
    return list(_edges(params))


def support_infimum(params: Params) -> float:
    """Left end of the support, counting the atom at 0 when there is one."""
    lowest = support_edges(params)[0]
    m, n = params.key()
    if m * n < 1:
        return min(lowest, 0.0)
    return lowest


def positivity_verdict(params: Params) -> PositivityVerdict:
    m, n = params.key()
    if n == 1:
        return PositivityVerdict(positive=True, marchenko_pastur_case=True)
    return PositivityVerdict(positive=m >= 2 and n <= h_curve(m))


def is_positive_support(params: Params) -> bool:
    return positivity_verdict(params).positive


def classify_region(params: Params, strict: bool = True) -> RegionLabel:
    """Region label from closed-form signs of P, Delta(0), Delta'(0), Delta''(0).

    With ``strict`` a point within ``BOUNDARY_TOL`` of g, h or P = 0 raises
    :class:`BoundaryError`; otherwise the label is returned with boundary flags.
    """
    m, n = params.key()
    if not (m > 0 and n > 1):
        raise DomainError(f"Classification needs m > 0 and n > 1, got m={m}, n={n}")
    p_value = p_poly(params)
    on_g = (m <= 4 and abs(n - g_curve(m)) < BOUNDARY_TOL) or abs(p_value) < BOUNDARY_TOL
    on_h = abs(n - h_curve(m)) < BOUNDARY_TOL
    if strict and (on_g or on_h):
        raise BoundaryError(f"(m={m}, n={n}) lies on a region boundary")

    delta0 = delta_at_zero(params)
    if p_value > 0:
        label = "D" if delta0 > 0 else "C"
    elif delta0 < 0:
        label = "B"
    else:
        quartic = discriminant_quartic(params)
        first, second = quartic.derivative(0.0), quartic.second_derivative(0.0)
        label = "A2" if first < 0 and second > 0 else "A1"
    return RegionLabel(label=label, on_g_boundary=on_g, on_h_boundary=on_h)


def classify_by_roots(params: Params) -> RegionLabel:
    """Region label read off the count and signs of the support edges."""
    edges = support_edges(params)
    negatives = sum(1 for edge in edges if edge < 0)
    if len(edges) == 4:
        if negatives == 0:
            label = "A2"
        elif negatives == 2:
            label = "A1"
        else:
            label = "B"
    else:
        label = "D" if negatives == 0 else "C"
    return RegionLabel(label=label)


@dataclass
class SweepRow:
    m: float
    n: float
    label: str
    positive: bool
    edges: list[float]


def sweep_point(point: tuple[float, float]) -> SweepRow:
    m, n = point
    params = Params(m, n)
    if n == 1:
        label = MARCHENKO_PASTUR_LABEL
    else:
        label = classify_region(params, strict=False).label
    edges: list[float] = []
    try:
        edges = support_edges(params)
    except InvariantError as exc:
        LOGGER.warning("No support edges at m=%s n=%s: %s", m, n, exc)
    return SweepRow(m=m, n=n, label=label, positive=is_positive_support(params), edges=edges)


def phase_diagram(config: SweepConfig, threads: Optional[int] = None) -> list[SweepRow]:
    """Sweep an (m, n) grid; rows are ordered m-major, exactly m_steps * n_steps."""
    if config.m_steps < 1 or config.n_steps < 1:
        raise DomainError("Grid steps must be positive")
    if config.m_min <= 0 or config.m_max < config.m_min:
        raise DomainError(f"Invalid m range [{config.m_min}, {config.m_max}]")
    if config.n_min < 1 or config.n_max < config.n_min:
        raise DomainError(f"Invalid n range [{config.n_min}, {config.n_max}]")
    ms = np.linspace(config.m_min, config.m_max, config.m_steps)
    ns = np.linspace(config.n_min, config.n_max, config.n_steps)
    points = [(float(m), float(n)) for m in ms for n in ns]
    workers = resolve_threads(threads if threads is not None else config.threads)
    LOGGER.info("Sweeping %s grid points with %s threads", len(points), workers)
    return ordered_map(sweep_point, points, workers)
