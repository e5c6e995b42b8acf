"""Periodic quadrature on the unit circle.

Boundary functions, L^p norms, Fourier coefficients and the constant
``C_q`` (the normalized L^q mean of ``|cos|``).

Norm convention
---------------
:func:`lp_norm` returns, for finite ``p``, the *unnormalized* quantity

    ||F||_p = ( integral_0^{2 pi} |F(e^{it})|^p dt )^{1/p},

i.e. without the ``1/(2 pi)`` factor. Pass ``normalized=True`` to get the
mean-value version ``( (1/2pi) integral |F|^p dt )^{1/p}``, which is the one
under which the Fourier coefficient bounds ``|a_n|, |b_n| <= ||F||_p`` and
``|a_n| + |b_n| <= 2 C_q ||F||_p`` hold for every ``p``. The two differ by a
factor ``(2 pi)^{1/p}`` and agree at ``p = inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np
from scipy import integrate

from ._validation import (
    check_exponent,
    check_unimodular,
    complex_to_pair,
    conjugate_exponent,
    pair_to_complex,
)
from .errors import AliasRisk, GridMismatch, RemovableSingularity

__all__ = [
    "CircleGrid",
    "ExponentialBoundary",
    "TrigPolyBoundary",
    "ExtremalBoundary",
    "SampledBoundary",
    "BoundarySpec",
    "FourierSpectrum",
    "evaluate_boundary",
    "lp_norm",
    "fourier_coefficients",
    "cq_constant",
    "conjugate_exponent",
    "boundary_from_dict",
    "boundary_to_dict",
]

DEFAULT_NODES = 4096
JUMP_TOL = 1e-12


@dataclass(frozen=True)
class CircleGrid:
    """Uniform nodes ``t_j = 2 pi j / node_count`` on ``[0, 2 pi)``."""

    node_count: int = DEFAULT_NODES

    def __post_init__(self):
        n = int(self.node_count)
        if n < 16 or n & (n - 1):
            raise ValueError(f"node_count must be a power of two >= 16, got {self.node_count}")
        object.__setattr__(self, "node_count", n)

    @property
    def nodes(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.node_count) / self.node_count

    @property
    def unit_points(self) -> np.ndarray:
        """``e^{i t_j}`` computed from exact node indices."""
        return np.exp(1j * self.nodes)

    def node_index(self, t: float, tol: float = 1e-12) -> int:
        """Index ``j`` with ``t == t_j`` modulo ``2 pi``, or raise."""
        x = (t / (2.0 * np.pi)) * self.node_count
        j = round(x)
        if abs(x - j) > tol * self.node_count:
            raise GridMismatch(f"t={t!r} is not a grid node of a {self.node_count}-point grid")
        return j % self.node_count


# --- boundary functions ---------------------------------------------------


@dataclass(frozen=True)
class ExponentialBoundary:
    """``F(e^{it}) = scale * e^{int}``."""

    n: int
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "scale", complex(self.scale))

    def sample(self, grid: CircleGrid) -> np.ndarray:
        j = (self.n * np.arange(grid.node_count)) % grid.node_count
        return self.scale * np.exp(2j * np.pi * j / grid.node_count)

    def value(self, t: float) -> complex:
        return self.scale * complex(np.exp(1j * self.n * t))


@dataclass(frozen=True)
class TrigPolyBoundary:
    """Finite trigonometric polynomial ``sum_k c_k e^{ikt}``."""

    coeffs: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): complex(v) for k, v in dict(self.coeffs).items()}
        object.__setattr__(self, "coeffs", clean)

    @property
    def degree(self) -> int:
        return max((abs(k) for k in self.coeffs), default=0)

    def sample(self, grid: CircleGrid) -> np.ndarray:
        n = grid.node_count
        spectrum = np.zeros(n, dtype=complex)
        if self.coeffs:
            ks = np.fromiter(self.coeffs.keys(), dtype=np.int64) % n
            np.add.at(spectrum, ks, np.fromiter(self.coeffs.values(), dtype=complex))
        return np.fft.ifft(spectrum) * n

    def value(self, t: float) -> complex:
        return complex(sum(c * np.exp(1j * k * t) for k, c in self.coeffs.items()))


@dataclass(frozen=True)
class ExtremalBoundary:
    """Boundary values of ``(2 M alpha / pi) arg((1 + beta z^n) / (1 - beta z^n))``.

    On the circle the Möbius image of ``u = beta e^{int}`` is
    ``2i Im(u) / |1 - u|^2``, purely imaginary, so the boundary function is the
    square wave ``M alpha sign(Im u)`` with jumps where ``u = +-1``.
    """

    n: int
    M: float = 1.0
    alpha: complex = 1.0
    beta: complex = 1.0

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError("extremal boundary needs n >= 1")
        if not self.M > 0:
            raise ValueError("extremal boundary needs M > 0")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "M", float(self.M))
        object.__setattr__(self, "alpha", check_unimodular(self.alpha, "alpha"))
        object.__setattr__(self, "beta", check_unimodular(self.beta, "beta"))

    def _im_u(self, phase: np.ndarray) -> np.ndarray:
        return np.imag(self.beta * np.exp(1j * phase))

    def sample(self, grid: CircleGrid) -> np.ndarray:
        """Grid values, with the midpoint value 0 substituted at jumps."""
        n = grid.node_count
        j = (self.n * np.arange(n)) % n
        im_u = self._im_u(2.0 * np.pi * j / n)
        s = np.where(np.abs(im_u) <= JUMP_TOL, 0.0, np.sign(im_u))
        return self.M * self.alpha * s

    def value(self, t: float) -> complex:
        im_u = float(self._im_u(np.asarray(self.n * t)))
        if abs(im_u) <= JUMP_TOL:
            raise RemovableSingularity(f"extremal boundary has a jump at t={t!r}")
        return self.M * self.alpha * math.copysign(1.0, im_u)


@dataclass(frozen=True)
class SampledBoundary:
    """Values on a uniform grid; ``len(values)`` fixes the node count."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).ravel()
        v.setflags(write=False)
        CircleGrid(len(v))
        object.__setattr__(self, "values", v)

    @property
    def grid(self) -> CircleGrid:
        return CircleGrid(len(self.values))

    def sample(self, grid: CircleGrid) -> np.ndarray:
        if grid.node_count != len(self.values):
            raise GridMismatch(
                f"samples have {len(self.values)} nodes but grid has {grid.node_count}"
            )
        return self.values

    def value(self, t: float) -> complex:
        return complex(self.values[self.grid.node_index(t)])


BoundarySpec = Union[ExponentialBoundary, TrigPolyBoundary, ExtremalBoundary, SampledBoundary]


def evaluate_boundary(spec: BoundarySpec, t: float) -> complex:
    """``F(e^{it})`` for a boundary spec.

    Raises RemovableSingularity for the extremal kind at a jump; callers use
    the midpoint value 0 there.
    """
    t = float(t)
    if not math.isfinite(t):
        raise ValueError("t must be finite")
    return spec.value(t)


def lp_norm(spec: BoundarySpec, p, grid: CircleGrid | None = None, *, normalized: bool = False) -> float:
    """L^p norm of ``F`` by the rectangle rule on ``grid``.

    Unnormalized by default (no ``1/(2 pi)`` factor); see the module notes.
    ``p = inf`` returns the maximum modulus over grid nodes.
    """
    p = check_exponent(p)
    grid = grid or _default_grid(spec)
    mod = np.abs(spec.sample(grid))
    if math.isinf(p):
        return float(np.max(mod)) if mod.size else 0.0
    top = float(np.max(mod))
    if top == 0.0:
        return 0.0
    # factor out the max to keep |F|^p in range for large p
    mean = float(np.mean((mod / top) ** p))
    scale = 1.0 if normalized else 2.0 * np.pi
    return top * (scale * mean) ** (1.0 / p)


@dataclass(frozen=True)
class FourierSpectrum:
    """Coefficients ``c_k`` for ``-N <= k <= N``, stored at offset ``N``."""

    c: np.ndarray
    N: int

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self.N:
            raise IndexError(k)
        return complex(self.c[k + self.N])

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def hermitian_defect(self) -> float:
        """``max_k |c_{-k} - conj(c_k)|``; zero for real boundary data."""
        return float(np.max(np.abs(self.c[::-1] - np.conj(self.c))))

    def as_dict(self) -> dict[int, complex]:
        return {int(k): complex(v) for k, v in zip(self.indices, self.c)}


def fourier_coefficients(spec: BoundarySpec, N: int, grid: CircleGrid | None = None) -> FourierSpectrum:
    """``c_k = (1/2pi) integral F e^{-ikt} dt`` for ``|k| <= N`` via the FFT.

    Exact to round-off for trigonometric polynomials of degree at most
    ``node_count - N - 1``. For the jump discontinuities of the extremal
    boundary the error decays like ``1/node_count**2`` with the midpoint
    convention.
    """
    grid = grid or _default_grid(spec)
    N = int(N)
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > grid.node_count // 2 - 1:
        raise AliasRisk(f"N={N} exceeds node_count/2 - 1 = {grid.node_count // 2 - 1}")
    dft = np.fft.fft(spec.sample(grid)) / grid.node_count
    k = np.arange(-N, N + 1)
    return FourierSpectrum(c=dft[k % grid.node_count], N=N)


def _quarter_period_integral(n: int, q: float) -> float:
    # integral_0^{pi/2n} cos(nt)^q dt; cos(nt) = sin(n s) with s = pi/2n - t,
    # and the (pi/2n - t)^q endpoint factor goes into the algebraic weight.
    b = np.pi / (2 * n)

    def smooth_part(t):
        s = b - t
        return (n * np.sinc(n * s / np.pi)) ** q

    val, _ = integrate.quad(smooth_part, 0.0, b, weight="alg", wvar=(0.0, q), epsabs=1e-15, epsrel=1e-13, limit=200)
    return val


def cq_constant(n: int, q) -> float:
    """``C_q = ( (1/2pi) integral_0^{2pi} |cos(nt)|^q dt )^{1/q}``.

    ``q = inf`` gives 1 without quadrature. The integral over a full period is
    ``4n`` copies of a quarter period, each integrated adaptively with the
    endpoint zero of ``cos`` handled by an algebraic weight. The value is
    checked against the ``n = 1`` integral, since the constant may not depend
    on ``n``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    q = check_exponent(q, "q")
    if math.isinf(q):
        return 1.0
    value = (4 * n * _quarter_period_integral(n, q) / (2.0 * np.pi)) ** (1.0 / q)
    if n != 1:
        ref = (4 * _quarter_period_integral(1, q) / (2.0 * np.pi)) ** (1.0 / q)
        assert abs(value - ref) <= 1e-10, f"C_q depends on n: {value!r} vs {ref!r}"
    return value


def _default_grid(spec: BoundarySpec) -> CircleGrid:
    if isinstance(spec, SampledBoundary):
        return spec.grid
    return CircleGrid()


# --- JSON encoding --------------------------------------------------------


def boundary_to_dict(spec: BoundarySpec) -> dict:
    if isinstance(spec, ExponentialBoundary):
        return {"kind": "exponential", "n": spec.n, "scale": complex_to_pair(spec.scale)}
    if isinstance(spec, TrigPolyBoundary):
        return {
            "kind": "trig_poly",
            "coeffs": {str(k): complex_to_pair(v) for k, v in sorted(spec.coeffs.items())},
        }
    if isinstance(spec, ExtremalBoundary):
        return {
            "kind": "extremal",
            "n": spec.n,
            "M": spec.M,
            "alpha": complex_to_pair(spec.alpha),
            "beta": complex_to_pair(spec.beta),
        }
    if isinstance(spec, SampledBoundary):
        return {"kind": "samples", "values": [complex_to_pair(v) for v in spec.values]}
    raise TypeError(f"not a boundary spec: {type(spec).__name__}")


def boundary_from_dict(data: Mapping) -> BoundarySpec:
    """Decode the JSON form; raises ValueError on malformed input."""
    try:
        kind = data["kind"]
        if kind == "exponential":
            return ExponentialBoundary(int(data["n"]), pair_to_complex(data.get("scale", [1.0, 0.0])))
        if kind == "trig_poly":
            return TrigPolyBoundary({int(k): pair_to_complex(v) for k, v in data["coeffs"].items()})
        if kind == "extremal":
            return ExtremalBoundary(
                int(data["n"]),
                float(data.get("M", 1.0)),
                pair_to_complex(data.get("alpha", [1.0, 0.0])),
                pair_to_complex(data.get("beta", [1.0, 0.0])),
            )
        if kind == "samples":
            return SampledBoundary(np.array([pair_to_complex(v) for v in data["values"]]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed boundary spec: {exc!r}") from exc
    raise ValueError(f"unknown boundary kind {data.get('kind')!r}")
