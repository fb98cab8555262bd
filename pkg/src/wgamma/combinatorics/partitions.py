"""Noncrossing partitions, their geodesic permutations and fattened pairings.

Conventions: ground sets are ``{1, ..., p}`` (1-based), and the full cycle is
fixed to ``gamma(i) = i - 1`` cyclically, i.e. ``gamma = (1 2 ... p)^-1``.
A block ``{i_1 < ... < i_k}`` is turned into a permutation by following
``gamma`` inside the block: ``i_j -> i_{j-1}`` and ``i_1 -> i_k``. With this
orientation the one-block partition maps to ``gamma`` itself.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from wgamma.errors import DomainError

LOGGER = logging.getLogger(__name__)

P_MAX = 12

Shape = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class NoncrossingPartition:
    p: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], p: int | None = None) -> "NoncrossingPartition":
        canonical = tuple(sorted(tuple(sorted(block)) for block in blocks))
        size = p if p is not None else sum(len(block) for block in canonical)
        partition = cls(p=size, blocks=canonical)
        partition.validate()
        return partition

    def validate(self) -> None:
        if self.p < 1:
            raise DomainError(f"Ground set size must be positive, got {self.p}")
        elements = sorted(itertools.chain.from_iterable(self.blocks))
        if elements != list(range(1, self.p + 1)):
            raise DomainError(f"Blocks {self.blocks} do not partition 1..{self.p}")
        if any(not block for block in self.blocks):
            raise DomainError("Empty block")
        if list(self.blocks) != sorted(self.blocks, key=lambda block: block[0]):
            raise DomainError("Blocks are not in canonical order")
        if _has_crossing(self.blocks):
            raise DomainError(f"Partition {self.blocks} is crossing")

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def to_permutation(self) -> "Permutation":
        images = list(range(1, self.p + 1))
        for block in self.blocks:
            for position, element in enumerate(block):
                images[element - 1] = block[position - 1]
        return Permutation(self.p, tuple(images))

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, block)) + "}" for block in self.blocks)
        return "{" + inner + "}"


@dataclass(frozen=True)
class Permutation:
    p: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, self.p + 1)):
            raise DomainError(f"{self.images} is not a permutation of 1..{self.p}")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self * other``: apply ``other`` first, then ``self``."""
        if other.p != self.p:
            raise DomainError("Permutations act on different ground sets")
        return Permutation(self.p, tuple(self(other(i)) for i in range(1, self.p + 1)))

    def inverse(self) -> "Permutation":
        images = [0] * self.p
        for i, image in enumerate(self.images, start=1):
            images[image - 1] = i
        return Permutation(self.p, tuple(images))

    def cycle_count(self) -> int:
        seen = [False] * (self.p + 1)
        cycles = 0
        for start in range(1, self.p + 1):
            if seen[start]:
                continue
            cycles += 1
            current = start
            while not seen[current]:
                seen[current] = True
                current = self(current)
        return cycles

    def length(self) -> int:
        """Minimal number of transpositions, ``p - #cycles``."""
        return self.p - self.cycle_count()


@dataclass(frozen=True)
class PairPartition:
    p2: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.p2 < 2 or self.p2 % 2:
            raise DomainError(f"Pairings need an even positive ground set, got {self.p2}")
        elements = sorted(itertools.chain.from_iterable(self.pairs))
        if elements != list(range(1, self.p2 + 1)):
            raise DomainError(f"{self.pairs} is not a pairing of 1..{self.p2}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], p2: int) -> "PairPartition":
        canonical = tuple(sorted(tuple(sorted((a, b))) for a, b in pairs))
        return cls(p2=p2, pairs=canonical)


def full_cycle(p: int) -> Permutation:
    """``gamma(i) = i - 1`` cyclically."""
    return Permutation(p, tuple(p if i == 1 else i - 1 for i in range(1, p + 1)))


def _has_crossing(blocks: Sequence[Sequence[int]]) -> bool:
    # Enough to test consecutive elements of one block against the other block.
    for first, second in itertools.permutations(blocks, 2):
        for left, right in zip(first, first[1:]):
            inside = [left < element < right for element in second]
            if any(inside) and not all(inside):
                return True
    return False


@lru_cache(maxsize=None)
def nc_shapes(length: int, start: int = 0) -> tuple[Shape, ...]:
    """All noncrossing partitions of ``{start, ..., start+length-1}``, canonical order.

    Recursion on the block containing ``start``: pick its other legs, then
    partition each gap between consecutive legs independently. Gaps come in
    increasing order, so concatenating their blocks keeps the order canonical.
    """
    if length == 0:
        return ((),)
    end = start + length
    shapes: list[Shape] = []
    for legs_count in range(length):
        for legs in itertools.combinations(range(start + 1, end), legs_count):
            first = (start,) + legs
            bounds = first + (end,)
            gap_choices = [
                nc_shapes(right - left - 1, left + 1) for left, right in zip(bounds, bounds[1:])
            ]
            for combo in itertools.product(*gap_choices):
                shapes.append((first,) + tuple(itertools.chain.from_iterable(combo)))
    return tuple(shapes)


def check_size(p: int, p_max: int = P_MAX) -> None:
    if not isinstance(p, (int, np.integer)) or p < 1 or p > p_max:
        raise DomainError(f"p must be an integer in [1, {p_max}], got {p!r}")


def enumerate_nc(p: int, p_max: int = P_MAX) -> list[NoncrossingPartition]:
    """Every noncrossing partition of ``{1, ..., p}`` exactly once."""
    check_size(p, p_max)
    return [NoncrossingPartition(p=p, blocks=shape) for shape in nc_shapes(p, 1)]


def even_blocks(partition: NoncrossingPartition) -> int:
    return sum(1 for block in partition.blocks if len(block) % 2 == 0)


def fat(partition: NoncrossingPartition) -> PairPartition:
    pairs: list[tuple[int, int]] = []
    for block in partition.blocks:
        first, last = block[0], block[-1]
        pairs.append((2 * first - 1, 2 * last))
        for left, right in zip(block, block[1:]):
            pairs.append((2 * left, 2 * right - 1))
    return PairPartition.from_pairs(pairs, 2 * partition.p)


def collapse(pairing: PairPartition) -> NoncrossingPartition:
    """Inverse of :func:`fat`: merge ``2i-1`` and ``2i`` into ``i``."""
    p = pairing.p2 // 2
    rows = [(a + 1) // 2 - 1 for a, _ in pairing.pairs]
    cols = [(b + 1) // 2 - 1 for _, b in pairing.pairs]
    labels = _component_labels(p, rows, cols)
    blocks: dict[int, list[int]] = {}
    for element, label in enumerate(labels, start=1):
        blocks.setdefault(int(label), []).append(element)
    return NoncrossingPartition.from_blocks(blocks.values(), p)


def identity_pairing(p: int) -> PairPartition:
    """The fattened identity ``rho_12 = (1 2)(3 4)...(2p-1 2p)``."""
    return PairPartition.from_pairs([(2 * i - 1, 2 * i) for i in range(1, p + 1)], 2 * p)


def cycle_pairing(p: int) -> PairPartition:
    """``rho_14``: pairs ``i`` with ``i + (-1)^(i+1) * 3`` modulo ``2p``."""
    size = 2 * p
    pairs = set()
    for i in range(1, size + 1):
        partner = (i - 1 + (3 if i % 2 else -3)) % size + 1
        pairs.add(tuple(sorted((i, partner))))
    return PairPartition.from_pairs(pairs, size)


def _component_labels(size: int, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    _, labels = connected_components(graph, directed=False)
    return labels


def join_block_count(rho: PairPartition, sigma: PairPartition) -> int:
    """Number of blocks of the join: connected components of both pairings' edges."""
    if rho.p2 != sigma.p2:
        raise DomainError(f"Ground sets differ: {rho.p2} vs {sigma.p2}")
    edges = rho.pairs + sigma.pairs
    rows = [a - 1 for a, _ in edges]
    cols = [b - 1 for _, b in edges]
    labels = _component_labels(rho.p2, rows, cols)
    return int(labels.max()) + 1


def cycle_count_pi_gamma(partition: NoncrossingPartition) -> int:
    """``#(pi gamma)`` with ``pi`` the geodesic permutation of the partition."""
    perm = partition.to_permutation()
    return perm.compose(full_cycle(partition.p)).cycle_count()


def genus_defect(perm: Permutation) -> int:
    """``|pi| + |pi^-1 gamma| - (p - 1)``; zero exactly for geodesic permutations."""
    gamma = full_cycle(perm.p)
    return perm.length() + perm.inverse().compose(gamma).length() - (perm.p - 1)
