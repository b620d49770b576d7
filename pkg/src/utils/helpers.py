"""Utility helpers used across the project."""
import hashlib
import math
from typing import List

import numpy as np


def make_generator(seed: int) -> np.random.Generator:
    """Seed the pinned portable 64-bit generator (PCG64)."""
    return np.random.Generator(np.random.PCG64(seed))


def spawn_generators(seed: int, count: int) -> List[np.random.Generator]:
    """Independent PCG64 streams derived from one seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def fingerprint(text: str, length: int = 12) -> str:
    """Short SHA-256 fingerprint of a canonical text."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:length]


def power_of_two_checkpoints(horizon: int) -> List[int]:
    """Rounds 1, 2, 4, ... up to the horizon, plus the horizon itself."""
    if horizon <= 0:
        return []
    points = [2 ** k for k in range(int(math.log2(horizon)) + 1) if 2 ** k <= horizon]
    if points[-1] != horizon:
        points.append(horizon)
    return points


def format_significant(value: float, digits: int = 9) -> str:
    """Positional notation with ``digits`` significant digits, trailing zeros kept.

    1.5 -> '1.50000000', 1e-5 -> '0.0000100000000'; never an exponent.
    """
    if value == 0:
        return "0." + "0" * (digits - 1)  # also drops the sign of -0.0
    text = np.format_float_positional(value, precision=digits, unique=False, fractional=False, trim="k")
    return text[:-1] if text.endswith(".") else text


def ceil_log_ratio(numerator: float, denominator: float) -> int:
    """ceil(numerator / denominator) robust to float noise on exact integers."""
    ratio = numerator / denominator
    nearest = round(ratio)
    if abs(ratio - nearest) <= 1e-9 * max(1.0, abs(ratio)):
        return int(nearest)
    return math.ceil(ratio)
