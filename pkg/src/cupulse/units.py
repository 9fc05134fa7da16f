"""Parsing of quantities with explicit units.

Internally frequencies are GHz, durations ns and angles radians.
"""
import re

import numpy as np

FREQUENCY = {"hz": 1e-9, "khz": 1e-6, "mhz": 1e-3, "ghz": 1.0}
TIME = {"ps": 1e-3, "ns": 1.0, "us": 1e3, "µs": 1e3, "ms": 1e6, "s": 1e9}
ANGLE = {"rad": 1.0, "deg": np.pi / 180, "pi": np.pi}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Zµ]*)\s*$")


class UnitError(ValueError):
    pass


def _split(text):
    m = _QUANTITY.match(str(text))
    if not m:
        raise UnitError(f"cannot parse quantity {text!r}")
    return float(m.group(1)), m.group(2).lower()


def _parse(text, table, kind):
    value, unit = _split(text)
    if not unit:
        raise UnitError(f"{kind} {text!r} needs an explicit unit ({', '.join(table)})")
    if unit not in table:
        raise UnitError(f"unknown {kind} unit {unit!r} in {text!r}")
    return value * table[unit]


def parse_frequency(text):
    """``'25MHz'`` -> 0.025 (GHz)."""
    return _parse(text, FREQUENCY, "frequency")


def parse_time(text):
    return _parse(text, TIME, "duration")


def parse_angle(text):
    """Angles default to radians; ``deg`` and ``pi`` suffixes are accepted."""
    text = str(text).strip()
    if text.lower() == "pi":
        return np.pi
    value, unit = _split(text)
    if not unit:
        return value
    if unit not in ANGLE:
        raise UnitError(f"unknown angle unit {unit!r} in {text!r}")
    return value * ANGLE[unit]


def fmt(x):
    return format(float(x), ".12g")


def fmt_mhz(x):
    return f"{fmt(x * 1e3)} MHz"
