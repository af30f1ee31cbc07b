#!/usr/bin/env python3
"""
Experiment utility functions
"""

import csv
import math
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np
from dotenv import load_dotenv

THREADS_ENV = "GEOCONC_THREADS"


def format_value(value: Any) -> str:
    """Floats at 17 significant digits, everything else via str()"""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return str(value)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a CSV file with a fixed header and 17-digit floats"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
    return path


def read_csv(path) -> List[Dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def resolve_threads() -> int:
    """
    Worker count for replicate pools

    GEOCONC_THREADS from the environment or a .env file; defaults to the CPU count
    """
    load_dotenv()
    value = os.environ.get(THREADS_ENV)
    if value is None or not value.strip():
        return os.cpu_count() or 1
    try:
        threads = int(value)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer: {value!r}")
    if threads < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer: {value!r}")
    return threads


def tail_r_grid(sigma: float, r_max_sd: float, r_points: int) -> List[float]:
    """Evenly spaced r values on [0, r_max_sd * sigma]"""
    if r_points < 1:
        raise ValueError(f"r_points must be positive: {r_points}")
    if r_points == 1 or sigma <= 0:
        return [0.0]
    return [float(r) for r in np.linspace(0.0, r_max_sd * sigma, r_points)]


def binomial_half_width(p_hat: float, replicates: int) -> float:
    """95% normal-approximation CI half-width 1.96*sqrt(p(1-p)/R)"""
    return 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / replicates)


def print_summary(title: str, items: Dict[str, Any]) -> str:
    """Print a boxed key/value summary and return its text"""
    lines = ["=" * 72, f"📊 {title}", "=" * 72]
    width = max((len(key) for key in items), default=0)
    for key, value in items.items():
        lines.append(f"   {key.ljust(width)} : {format_value(value)}")
    lines.append("=" * 72)
    text = "\n".join(lines)
    print(text)
    return text
