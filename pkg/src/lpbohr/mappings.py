"""Harmonic maps ``f = h + conj(g)`` on the unit disk.

A map is carried as a truncated coefficient table

    f(z) = sum_{n=0}^N a_n z^n + conj( sum_{n=1}^N b_n z^n ),

built either from a boundary function (Poisson extension, via its Fourier
coefficients) or in closed form for the extremal family
``(2 M alpha / pi) arg((1 + beta z^n) / (1 - beta z^n))``.
Derivatives always come from the table, never from differencing the
Poisson integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ._validation import (
    check_exponent,
    check_in_disk,
    check_unimodular,
    complex_to_pair,
    conjugate_exponent,
    pair_to_complex,
)
from .errors import DivergenceRisk
from .spectral import (
    BoundarySpec,
    CircleGrid,
    ExtremalBoundary,
    SampledBoundary,
    cq_constant,
    fourier_coefficients,
    lp_norm,
)

__all__ = [
    "CoeffTable",
    "DerivEval",
    "poisson_extend",
    "coeff_table",
    "extremal_coeffs",
    "table_for",
    "eval_map",
    "majorant",
    "tail_rate",
    "table_to_dict",
    "table_from_dict",
]

DEFAULT_N = 256
EXTREMAL_N = 401


@dataclass(frozen=True)
class CoeffTable:
    """Truncated coefficients of a harmonic map.

    ``a`` has length ``N + 1`` (indices 0..N). ``b`` also has length ``N + 1``
    with ``b[0] == 0`` so that ``b[n]`` is the coefficient of ``conj(z^n)``.
    ``tail_bound_rate`` bounds ``|a_n| + |b_n|`` for every ``n > N``; it is 0
    when no such bound is known.
    """

    a: np.ndarray
    b: np.ndarray
    tail_bound_rate: float = 0.0

    def __post_init__(self):
        a = np.array(self.a, dtype=complex).ravel()
        b = np.array(self.b, dtype=complex).ravel()
        if a.size == 0 or a.shape != b.shape:
            raise ValueError(f"coefficient arrays must have equal nonzero length, got {a.size} and {b.size}")
        if b[0] != 0:
            raise ValueError("b[0] must be zero (g(0) = 0 normalization)")
        if not self.tail_bound_rate >= 0:
            raise ValueError("tail_bound_rate must be nonnegative")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "tail_bound_rate", float(self.tail_bound_rate))

    @property
    def N(self) -> int:
        return self.a.size - 1

    @classmethod
    def from_coeffs(cls, a: Mapping[int, complex] | None = None, b: Mapping[int, complex] | None = None,
                    N: int | None = None, tail_bound_rate: float = 0.0) -> "CoeffTable":
        """Build a table from sparse ``{index: value}`` maps."""
        a = dict(a or {})
        b = dict(b or {})
        if N is None:
            N = max([0, *a.keys(), *b.keys()])
        av = np.zeros(N + 1, dtype=complex)
        bv = np.zeros(N + 1, dtype=complex)
        for n, v in a.items():
            av[n] = v
        for n, v in b.items():
            if n < 1:
                raise ValueError("co-analytic indices start at 1")
            bv[n] = v
        return cls(av, bv, tail_bound_rate)

    def with_rate(self, rate: float) -> "CoeffTable":
        return CoeffTable(self.a, self.b, rate)

    def pair_sums(self) -> np.ndarray:
        """``|a_n| + |b_n|`` for n = 0..N (``|a_0|`` at index 0)."""
        return np.abs(self.a) + np.abs(self.b)


@dataclass(frozen=True)
class DerivEval:
    """Value and first derivatives of a harmonic map at one point (or an array)."""

    f: complex
    fz: complex
    fzbar: complex

    @property
    def Lambda(self):
        return np.abs(self.fz) + np.abs(self.fzbar)

    @property
    def lam(self):
        return np.abs(np.abs(self.fz) - np.abs(self.fzbar))

    @property
    def J(self):
        return np.abs(self.fz) ** 2 - np.abs(self.fzbar) ** 2


def poisson_extend(spec: BoundarySpec, z, grid: CircleGrid | None = None):
    """Poisson integral ``(1/2pi) integral P(z e^{-it}) F(e^{it}) dt`` by grid quadrature.

    ``z`` may be a scalar or an array of points with ``|z| <= 1 - 1e-9``.
    """
    z = check_in_disk(z)
    grid = grid or (spec.grid if isinstance(spec, SampledBoundary) else CircleGrid())
    values = spec.sample(grid)
    w = z[..., None] * np.conj(grid.unit_points)
    kernel = (1.0 - np.abs(w) ** 2) / np.abs(1.0 - w) ** 2
    out = kernel @ values / grid.node_count
    return complex(out) if out.ndim == 0 else out


def tail_rate(spec: BoundarySpec, p, grid: CircleGrid | None = None) -> float:
    """``2 C_q ||F||_p`` with the mean-value norm; bounds every ``|a_n| + |b_n|``."""
    p = check_exponent(p)
    return 2.0 * cq_constant(1, conjugate_exponent(p)) * lp_norm(spec, p, grid, normalized=True)


def coeff_table(spec: BoundarySpec, N: int = DEFAULT_N, grid: CircleGrid | None = None, p=None) -> CoeffTable:
    """Coefficient table of the Poisson extension from quadrature Fourier coefficients.

    ``a_n = c_n`` and ``b_n = conj(c_{-n})``. When ``p`` is given, the tail
    rate ``2 C_q ||F||_p`` is attached.
    """
    spectrum = fourier_coefficients(spec, N, grid)
    c = spectrum.c
    a = c[N:].copy()
    b = np.concatenate([[0.0], np.conj(c[:N][::-1])])
    rate = 0.0 if p is None else tail_rate(spec, p, grid)
    return CoeffTable(a, b, rate)


def extremal_coeffs(n: int, M: float = 1.0, alpha: complex = 1.0, beta: complex = 1.0,
                    N: int = EXTREMAL_N) -> CoeffTable:
    """Closed-form table of the extremal map.

    Expanding ``arg((1+u)/(1-u)) = Im(2 artanh u)`` with ``u = beta z^n``
    gives nonzero coefficients only at ``m = n(2k+1)``:

        a_m = (2 M alpha / (pi i)) beta^(2k+1) / (2k+1)
        b_m = (2 M conj(alpha) / (pi i)) beta^(2k+1) / (2k+1)

    so ``|a_m| + |b_m| = 4M / (pi (2k+1))``. The tail rate is ``4M/pi``.
    """
    n, N = int(n), int(N)
    if n < 1 or N < n:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    if not M > 0:
        raise ValueError("M must be positive")
    alpha = check_unimodular(alpha, "alpha")
    beta = check_unimodular(beta, "beta")
    a = np.zeros(N + 1, dtype=complex)
    b = np.zeros(N + 1, dtype=complex)
    odd = np.arange(1, N // n + 1, 2)
    idx = n * odd
    common = beta ** odd / odd
    a[idx] = (2.0 * M * alpha / (np.pi * 1j)) * common
    b[idx] = (2.0 * M * np.conj(alpha) / (np.pi * 1j)) * common
    return CoeffTable(a, b, 4.0 * M / np.pi)


def table_for(spec: BoundarySpec, N: int | None = None, grid: CircleGrid | None = None, p=None) -> CoeffTable:
    """Best available table: closed form for the extremal kind, quadrature otherwise."""
    if isinstance(spec, ExtremalBoundary):
        return extremal_coeffs(spec.n, spec.M, spec.alpha, spec.beta, EXTREMAL_N if N is None else N)
    return coeff_table(spec, DEFAULT_N if N is None else N, grid, p)


def eval_map(table: CoeffTable, z) -> DerivEval:
    """Evaluate ``f``, ``f_z`` and ``f_zbar`` by term-wise differentiation."""
    z = check_in_disk(z)
    n = np.arange(table.N + 1)
    h = np.polyval(table.a[::-1], z)
    g = np.polyval(table.b[::-1], z)
    dh = np.polyval((n * table.a)[:0:-1], z) if table.N else np.zeros_like(z)
    dg = np.polyval((n * table.b)[:0:-1], z) if table.N else np.zeros_like(z)
    f, fzbar = h + np.conj(g), np.conj(dg)
    if z.ndim == 0:
        return DerivEval(complex(f), complex(dh), complex(fzbar))
    return DerivEval(f=f, fz=dh, fzbar=fzbar)


def majorant(table: CoeffTable, r):
    """Truncated majorant ``|a_0| + sum (|a_n| + |b_n|) r^n`` and its tail bound.

    Returns ``(value, tail)`` with ``tail = rate * r^(N+1) / (1 - r)``; the
    full series lies in ``[value, value + tail]``. ``r`` may be an array.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("r must be nonnegative")
    if np.any(r_arr >= 1):
        raise DivergenceRisk(f"majorant requires r < 1, got {np.max(r_arr)!r}")
    value = np.polyval(table.pair_sums()[::-1], r_arr)
    tail = table.tail_bound_rate * r_arr ** (table.N + 1) / (1.0 - r_arr)
    if r_arr.ndim == 0:
        return float(value), float(tail)
    return value, tail


# --- JSON encoding --------------------------------------------------------


def table_to_dict(table: CoeffTable) -> dict:
    return {
        "N": table.N,
        "a": [complex_to_pair(v) for v in table.a],
        "b": [complex_to_pair(v) for v in table.b[1:]],
        "tail_rate": table.tail_bound_rate,
    }


def table_from_dict(data: Mapping) -> CoeffTable:
    try:
        N = int(data["N"])
        a = [pair_to_complex(v) for v in data["a"]]
        b = [0.0] + [pair_to_complex(v) for v in data["b"]]
        rate = float(data.get("tail_rate", 0.0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed coefficient table: {exc!r}") from exc
    if len(a) != N + 1 or len(b) != N + 1:
        raise ValueError(f"table arrays do not match N={N}")
    return CoeffTable(np.array(a), np.array(b), rate)
