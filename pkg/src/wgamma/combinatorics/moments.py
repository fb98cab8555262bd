"""Exact moments of mu_{m,n} by independent combinatorial routes.

All routes work in exact arithmetic when given ``int``/``Fraction`` inputs:

* enumeration over NC(p) of ``m^#blocks * n^#even-blocks``;
* the block-profile table N(p, b, e) built from the first-block recurrence;
* the moment-cumulant formula with free cumulants read off the R-transform.

The moment generating series in :mod:`wgamma.transforms` is a fourth route.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Union

from wgamma.combinatorics.partitions import P_MAX, check_size, nc_shapes
from wgamma.errors import DomainError
from wgamma.models import Params
from wgamma.transforms import mgf_series

LOGGER = logging.getLogger(__name__)

Exact = Union[int, Fraction]
Profile = tuple[int, int]


@dataclass(frozen=True)
class BlockProfile:
    p: int
    b: int
    e: int

    def __post_init__(self) -> None:
        if not (0 <= self.e <= self.b <= self.p and 2 * self.e <= self.p):
            raise DomainError(f"Invalid block profile {self}")


def catalan(p: int) -> int:
    return comb(2 * p, p) // (p + 1)


def as_exact(value) -> Exact:
    """Coerce to an exact number; floats are taken at their decimal repr."""
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value))


@lru_cache(maxsize=None)
def _enumerated_profiles(p: int) -> dict[Profile, int]:
    """(#blocks, #even blocks) tallied over every shape of NC(p)."""
    return dict(
        Counter(
            (len(shape), sum(1 for block in shape if len(block) % 2 == 0))
            for shape in nc_shapes(p, 1)
        )
    )


@lru_cache(maxsize=None)
def _block_types(p: int) -> dict[tuple[int, ...], int]:
    """Sorted block sizes tallied over every shape of NC(p)."""
    return dict(Counter(tuple(sorted(len(block) for block in shape)) for shape in nc_shapes(p, 1)))


def moment_enum(p: int, m, n, p_max: int = P_MAX) -> Fraction:
    """Limiting p-th moment of ``m W^Gamma`` summed over NC(p)."""
    check_size(p, p_max)
    m, n = as_exact(m), as_exact(n)
    profiles = _enumerated_profiles(p)
    return Fraction(sum(count * m**b * n**e for (b, e), count in profiles.items()))


@lru_cache(maxsize=None)
def _profile_table(p: int) -> dict[Profile, int]:
    """N(p, ., .) via the first-block recurrence; N(0) is the empty partition."""
    if p == 0:
        return {(0, 0): 1}
    table: Counter = Counter()
    # The block containing 1 has r further legs; r odd makes it an even block.
    for r in range(p):
        extra_even = 1 if r % 2 else 0
        for (b, e), count in _gap_table(r + 1, p - r - 1).items():
            table[(b + 1, e + extra_even)] += count
    return dict(table)


@lru_cache(maxsize=None)
def _gap_table(gaps: int, total: int) -> dict[Profile, int]:
    """Profiles of ``gaps`` independent NC partitions with sizes summing to ``total``."""
    if gaps == 0:
        return {(0, 0): 1} if total == 0 else {}
    table: Counter = Counter()
    for first in range(total + 1):
        head = _profile_table(first)
        tail = _gap_table(gaps - 1, total - first)
        for (b1, e1), c1 in head.items():
            for (b2, e2), c2 in tail.items():
                table[(b1 + b2, e1 + e2)] += c1 * c2
    return dict(table)


def profile_counts(p: int, p_max: int = P_MAX) -> dict[BlockProfile, int]:
    check_size(p, p_max)
    return {
        BlockProfile(p=p, b=b, e=e): count for (b, e), count in sorted(_profile_table(p).items())
    }


def moment_from_profiles(p: int, m, n, p_max: int = P_MAX) -> Fraction:
    m, n = as_exact(m), as_exact(n)
    return Fraction(
        sum(count * m**profile.b * n**profile.e for profile, count in profile_counts(p, p_max).items())
    )


def free_cumulants(p_max: int, m, n) -> list[Exact]:
    """kappa_1..kappa_{p_max}: m for odd orders, m*n for even ones."""
    if p_max < 1:
        raise DomainError(f"p_max must be >= 1, got {p_max}")
    m, n = as_exact(m), as_exact(n)
    return [m if order % 2 else m * n for order in range(1, p_max + 1)]


def moment_cumulant_sum(p: int, cumulants: list[Exact], p_max: int = P_MAX) -> Fraction:
    """Sum over NC(p) of the product of ``kappa_|V|`` over blocks."""
    check_size(p, p_max)
    if len(cumulants) < p:
        raise DomainError(f"Need {p} cumulants, got {len(cumulants)}")
    total = Fraction(0)
    for sizes, count in _block_types(p).items():
        total += count * prod(cumulants[size - 1] for size in sizes)
    return total


@dataclass
class MomentRoutes:
    p: int
    enumeration: Fraction
    profiles: Fraction
    series: Fraction
    cumulants: Fraction

    @property
    def agree(self) -> bool:
        return self.enumeration == self.profiles == self.series == self.cumulants


def moment_routes(p_max: int, m, n) -> list[MomentRoutes]:
    """All exact routes for p = 1..p_max, for cross-checking."""
    check_size(p_max)
    m, n = as_exact(m), as_exact(n)
    series = mgf_series(Params(m, n), p_max)
    cumulants = free_cumulants(p_max, m, n)
    rows = []
    for p in range(1, p_max + 1):
        rows.append(
            MomentRoutes(
                p=p,
                enumeration=moment_enum(p, m, n),
                profiles=moment_from_profiles(p, m, n),
                series=Fraction(series[p]),
                cumulants=moment_cumulant_sum(p, cumulants),
            )
        )
    disagreements = [row.p for row in rows if not row.agree]
    if disagreements:
        LOGGER.warning("Moment routes disagree at p=%s", disagreements)
    return rows
