from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from wgamma.errors import DomainError

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class Params:
    """Parameters (m, n) selecting the measure mu_{m,n}.

    ``m`` and ``n`` may be exact (``int``/``Fraction``) for the combinatorial
    routes; the analytic routes work on their float values.
    """

    m: Number
    n: Number

    def __post_init__(self) -> None:
        if not np.isfinite(float(self.m)) or not np.isfinite(float(self.n)):
            raise DomainError(f"Parameters must be finite, got m={self.m}, n={self.n}")
        if self.m < 0:
            raise DomainError(f"m must be >= 0, got {self.m}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")

    @property
    def s(self) -> Number:
        return self.m * (self.n + 1) / 2

    @property
    def t(self) -> Number:
        return self.m * (self.n - 1) / 2

    def as_float(self) -> "Params":
        return Params(float(self.m), float(self.n))

    def key(self) -> tuple[float, float]:
        return float(self.m), float(self.n)


@dataclass
class DensityCurve:
    params: Params
    atom_mass: float
    xs: np.ndarray
    rho: np.ndarray
    support_edges: list[float]

    @property
    def grid(self) -> list[tuple[float, float]]:
        return list(zip(self.xs.tolist(), self.rho.tolist()))


@dataclass(frozen=True)
class QuarticPoly:
    """Coefficients of the support discriminant, highest degree first."""

    c4: float
    c3: float
    c2: float
    c1: float
    c0: float

    @property
    def coefficients(self) -> tuple[float, float, float, float, float]:
        return (self.c4, self.c3, self.c2, self.c1, self.c0)

    def __call__(self, xi):
        return (((self.c4 * xi + self.c3) * xi + self.c2) * xi + self.c1) * xi + self.c0

    def derivative(self, xi):
        return ((4 * self.c4 * xi + 3 * self.c3) * xi + 2 * self.c2) * xi + self.c1

    def second_derivative(self, xi):
        return (12 * self.c4 * xi + 6 * self.c3) * xi + 2 * self.c2


@dataclass(frozen=True)
class RegionLabel:
    label: str
    on_g_boundary: bool = False
    on_h_boundary: bool = False

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class PositivityVerdict:
    positive: bool
    marchenko_pastur_case: bool = False

    def __bool__(self) -> bool:
        return self.positive


@dataclass(frozen=True)
class WishartConfig:
    d: int
    n: int
    m: int
    seed: int = 0
    size_cap: int = 4096

    def __post_init__(self) -> None:
        for name in ("d", "n", "m"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
        if self.d * self.n > self.size_cap:
            raise DomainError(
                f"Matrix size d*n={self.d * self.n} exceeds the cap {self.size_cap}"
            )
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def size(self) -> int:
        return self.d * self.n


@dataclass
class SpectrumSample:
    config: WishartConfig
    sample_index: int
    eigenvalues: np.ndarray
    smallest: float = field(init=False)

    def __post_init__(self) -> None:
        self.smallest = float(self.eigenvalues[0])


@dataclass
class MomentRow:
    p: int
    analytic: Fraction
    empirical_mean: float
    standard_error: float
    z_score: float


@dataclass
class SmallestEigenvalueSummary:
    mean: float
    minimum: float
    support_infimum: float
    gap: float
    fraction_near_zero: float


@dataclass
class ComparisonReport:
    config: WishartConfig
    num_samples: int
    rows: list[MomentRow]
    smallest: SmallestEigenvalueSummary
    max_abs_z: Optional[float] = None

    def __post_init__(self) -> None:
        finite = [abs(row.z_score) for row in self.rows if np.isfinite(row.z_score)]
        self.max_abs_z = max(finite) if finite else None
