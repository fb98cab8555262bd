from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Optional

LOGGER = logging.getLogger(__name__)

THREADS_ENV = "WGAMMA_THREADS"


@dataclass
class SimulationConfig:
    m: int
    n: int
    d: int = 200
    samples: int = 50
    p_max: int = 4
    seed: int = 7
    output_dir: str = "outputs"
    threads: Optional[int] = None
    size_cap: int = 4096
    bootstrap_resamples: int = 1000
    write_pdf: bool = False


@dataclass
class SweepConfig:
    m_min: float = 0.2
    m_max: float = 10.0
    m_steps: int = 40
    n_min: float = 1.0
    n_max: float = 6.0
    n_steps: int = 40
    threads: Optional[int] = None


@dataclass
class PresetConfig:
    name: str
    m: int
    n: int
    d: int = 200
    samples: int = 50
    p_max: int = 4


def get_default_presets() -> dict[str, PresetConfig]:
    return {
        "acceptance_2_2": PresetConfig(name="acceptance_2_2", m=2, n=2),
        "acceptance_1_3": PresetConfig(name="acceptance_1_3", m=1, n=3),
        "marchenko_pastur": PresetConfig(name="marchenko_pastur", m=1, n=1),
        "ppt_regime": PresetConfig(name="ppt_regime", m=8, n=2, d=100),
    }


def resolve_presets(preset_name: str) -> list[PresetConfig]:
    defaults = get_default_presets()
    if preset_name == "acceptance":
        return [defaults["acceptance_2_2"], defaults["acceptance_1_3"]]
    if preset_name in defaults:
        return [defaults[preset_name]]
    raise KeyError(f"Unknown preset: {preset_name}")


def _env_threads() -> Optional[int]:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        LOGGER.warning("Ignoring invalid %s=%r", THREADS_ENV, raw)
        return None
    return max(1, value)


def resolve_threads(requested: Optional[int] = None) -> int:
    """Worker count: the request capped by ``WGAMMA_THREADS``; either alone; else 1."""
    cap = _env_threads()
    if requested is None:
        return cap or 1
    requested = max(1, int(requested))
    return requested if cap is None else min(requested, cap)
