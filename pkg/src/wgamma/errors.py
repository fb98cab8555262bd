from __future__ import annotations


class WGammaError(Exception):
    """Base class for errors raised by wgamma."""


class DomainError(WGammaError, ValueError):
    """An input lies outside the domain of the requested operation."""


class BoundaryError(DomainError):
    """A parameter point is too close to a region boundary to be classified."""


class InvariantError(WGammaError, RuntimeError):
    """An internal invariant was violated; this signals a bug, not bad input."""
