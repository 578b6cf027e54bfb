"""JSON wire format.

Complex numbers are ``[re, im]`` pairs and a vector is a list of three of
them.  Floats are rounded to 15 significant digits so reports are stable.
"""
from __future__ import annotations

import math

import numpy as np


class MalformedInput(ValueError):
    """Input does not follow the wire format."""


def fmt(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        return x
    return float(f"{x:.15g}") + 0.0  # + 0.0 folds -0.0


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [fmt(z.real), fmt(z.imag)]


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in obj)):
        raise MalformedInput(f"expected [re, im], got {obj!r}")
    return complex(obj[0], obj[1])


def vector_to_json(v) -> list[list[float]]:
    return [complex_to_json(c) for c in np.asarray(v, dtype=complex)]


def vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, (list, tuple)) or len(obj) != 3:
        raise MalformedInput(f"expected three complex coordinates, got {obj!r}")
    v = np.array([complex_from_json(c) for c in obj], dtype=complex)
    if not np.all(np.isfinite(v)):
        raise MalformedInput("coordinates must be finite")
    return v
