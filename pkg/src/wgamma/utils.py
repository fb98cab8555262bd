from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ensure_dir(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    return path


def dump_json(path: Path, data: object) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_csv(
    path: Path, header: Sequence[str], rows: Iterable[Sequence[object]], append: bool = False
) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a" if append else "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def parse_rational(text: str) -> Fraction:
    """Parse a decimal or ``a/b`` string without going through binary floats."""
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("empty number")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a decimal or rational number: {text!r}") from exc


def format_exact(value: Fraction) -> str:
    """Decimal string when the expansion terminates, ``num/den`` otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    with localcontext() as ctx:
        ctx.prec = len(str(abs(value.numerator))) + digits + 2
        decimal = Decimal(value.numerator) / Decimal(value.denominator)
    return format(decimal, "f")


def ordered_map(func: Callable[[T], R], items: Sequence[T], threads: int) -> list[R]:
    """Map ``func`` over ``items``, possibly in threads; output keeps input order."""
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))
