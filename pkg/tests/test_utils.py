from dataclasses import fields
from fractions import Fraction

import pytest

from wgamma.config import (
    THREADS_ENV,
    SweepConfig,
    get_default_presets,
    resolve_presets,
    resolve_threads,
)
from wgamma.utils import format_exact, format_float, ordered_map, parse_rational


def test_parse_rational():
    assert parse_rational("0.1") == Fraction(1, 10)
    assert parse_rational(" 2/6 ") == Fraction(1, 3)
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("")


def test_format_exact():
    assert format_exact(Fraction(14)) == "14"
    assert format_exact(Fraction(1, 2)) == "0.5"
    assert format_exact(Fraction(-3, 8)) == "-0.375"
    assert format_exact(Fraction(1, 3)) == "1/3"


def test_format_float_round_trips():
    value = 0.1 + 0.2
    assert float(format_float(value)) == value


def test_ordered_map_keeps_order():
    items = list(range(20))
    assert ordered_map(lambda x: x * x, items, threads=4) == [x * x for x in items]


def test_resolve_threads(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert resolve_threads() == 1
    assert resolve_threads(3) == 3
    monkeypatch.setenv(THREADS_ENV, "4")
    assert resolve_threads() == 4
    assert resolve_threads(8) == 4
    assert resolve_threads(2) == 2
    monkeypatch.setenv(THREADS_ENV, "many")
    assert resolve_threads() == 1
    assert resolve_threads(3) == 3


def test_sweep_config_holds_grid_and_threads_only():
    names = {field.name for field in fields(SweepConfig)}
    assert names == {"m_min", "m_max", "m_steps", "n_min", "n_max", "n_steps", "threads"}


def test_presets():
    names = [preset.name for preset in resolve_presets("acceptance")]
    assert names == ["acceptance_2_2", "acceptance_1_3"]
    assert get_default_presets()["ppt_regime"].m == 8
    with pytest.raises(KeyError):
        resolve_presets("nightly")
