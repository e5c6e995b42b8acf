"""Small input checks shared by the public functions."""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidExponent, OutsideDomain

UNIT_DISK_MARGIN = 1e-9


def check_exponent(p, name: str = "p") -> float:
    """Return ``p`` as a float in ``[1, inf]`` or raise InvalidExponent."""
    if isinstance(p, str):
        p = p.strip().lower()
        p = math.inf if p in ("inf", "infinity", "oo") else float(p)
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise InvalidExponent(f"{name} must lie in [1, inf], got {p!r}")
    return p


def conjugate_exponent(p) -> float:
    """Hölder conjugate q with 1/p + 1/q = 1, using the 1 <-> inf pairing."""
    p = check_exponent(p)
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def check_in_disk(z, margin: float = UNIT_DISK_MARGIN) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise OutsideDomain("point is not finite")
    if np.any(np.abs(z) > 1.0 - margin):
        raise OutsideDomain(f"|z| must be <= 1 - {margin:g}, got max {np.max(np.abs(z))!r}")
    return z


def check_unimodular(w: complex, name: str, tol: float = 1e-12) -> complex:
    w = complex(w)
    if abs(abs(w) - 1.0) > tol:
        raise ValueError(f"{name} must be unimodular, got |{name}| = {abs(w)!r}")
    return w


def complex_to_pair(w) -> list[float]:
    w = complex(w)
    return [w.real, w.imag]


def pair_to_complex(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    re, im = pair
    return complex(float(re), float(im))
