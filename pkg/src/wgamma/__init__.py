"""Partially transposed Wishart matrices: exact moments, limit densities and simulation."""

from __future__ import annotations

from typing import Any

__all__ = ["ExperimentRunner", "Params", "SimulationConfig", "get_default_presets"]


def __getattr__(name: str) -> Any:
    if name == "ExperimentRunner":
        from wgamma.core import ExperimentRunner

        return ExperimentRunner
    if name == "Params":
        from wgamma.models import Params

        return Params
    if name == "SimulationConfig":
        from wgamma.config import SimulationConfig

        return SimulationConfig
    if name == "get_default_presets":
        from wgamma.config import get_default_presets

        return get_default_presets
    raise AttributeError(name)
