"""Seeded property harness for the coefficient, Bohr and Landau-type bounds.

Each check draws random trigonometric-polynomial boundary functions,
measures how close the relevant inequality comes to being violated, and
returns a :class:`Verdict`. Margins are ratios ``observed / bound`` (or
differences where the bound can be 0), so a margin above 1 (resp. below 0)
is a violation. Failures are recorded, never raised.

Randomness is split per property and per trial from the config seed via
``SeedSequence(seed, spawn_key=(stream, trial))``, so a trial's draw does
not depend on how many other trials run or in what order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._validation import check_exponent, conjugate_exponent
from .mappings import (
    CoeffTable,
    coeff_table,
    eval_map,
    majorant,
    poisson_extend,
    table_for,
    table_to_dict,
    tail_rate,
)
from .radii import bohr_lp, landau_radii
from .spectral import (
    BoundarySpec,
    CircleGrid,
    ExponentialBoundary,
    ExtremalBoundary,
    SampledBoundary,
    TrigPolyBoundary,
    boundary_to_dict,
    cq_constant,
    lp_norm,
)

__all__ = [
    "VerifyConfig",
    "Verdict",
    "gen_boundary",
    "drop_mean",
    "coeff_bound_margins",
    "check_coeff_bounds",
    "bohr_margin",
    "check_bohr",
    "check_schwarz",
    "check_fd_derivatives",
    "normalized_draw",
    "adversarial_table",
    "check_univalence",
    "check_schlicht",
    "run_suite",
    "verdict_to_dict",
]

DEFAULT_P_GRID = (1.0, 1.5, 2.0, 4.0, math.inf)

# stream ids for SeedSequence spawn keys; never renumber
_STREAM_COEFF = 1
_STREAM_BOHR = 2
_STREAM_SCHWARZ = 3
_STREAM_FD = 4
_STREAM_LANDAU = 5

MAX_REJECTIONS = 1000


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 42
    trials: int = 100
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    grid: CircleGrid = field(default_factory=CircleGrid)
    N: int = 64
    tolerance: float = 1e-9
    max_degree: int = 16

    def __post_init__(self):
        if int(self.trials) < 1:
            raise ValueError("trials must be >= 1")
        if not self.tolerance >= 1e-12:
            raise ValueError("tolerance must be >= 1e-12")
        if int(self.max_degree) < 2:
            raise ValueError("max_degree must be >= 2")
        object.__setattr__(self, "p_grid", tuple(check_exponent(p) for p in self.p_grid))
        object.__setattr__(self, "seed", int(self.seed) & 0xFFFFFFFFFFFFFFFF)

    def rng(self, stream: int, trial: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(stream, trial)))


@dataclass
class Verdict:
    property_name: str
    pass_count: int = 0
    fail_count: int = 0
    worst_margin: float = -math.inf
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    # "max": larger margins are worse; "min": smaller margins are worse
    sense: str = "max"

    @property
    def trials(self) -> int:
        return self.pass_count + self.fail_count

    def record(self, ok: bool, margin: float, witness) -> None:
        if ok:
            self.pass_count += 1
        else:
            self.fail_count += 1
        worse = margin > self.worst_margin if self.sense == "max" else margin < self.worst_margin
        if self.witness is None or worse:
            self.worst_margin = float(margin)
            self.witness = witness() if callable(witness) else witness


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "property": v.property_name,
        "pass_count": v.pass_count,
        "fail_count": v.fail_count,
        "worst_margin": v.worst_margin,
        "details": v.details,
        "witness": v.witness,
    }


# --- generators -----------------------------------------------------------


def gen_boundary(rng: np.random.Generator, degree: int, p, target_norm: float = 1.0,
                 grid: CircleGrid | None = None, *, normalized: bool = True) -> TrigPolyBoundary:
    """Random trig polynomial of the given degree rescaled to ``||F||_p = target_norm``.

    Coefficients for ``-degree <= k <= degree`` are i.i.d. standard complex
    Gaussians. The norm is measured on ``grid`` under the mean-value
    convention unless ``normalized=False``.
    """
    degree = int(degree)
    if degree < 1:
        raise ValueError("degree must be >= 1")
    grid = grid or CircleGrid()
    ks = np.arange(-degree, degree + 1)
    c = (rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)) / math.sqrt(2.0)
    raw = TrigPolyBoundary(dict(zip(ks.tolist(), c)))
    norm = lp_norm(raw, p, grid, normalized=normalized)
    scale = target_norm / norm
    return TrigPolyBoundary({k: v * scale for k, v in raw.coeffs.items()})


def drop_mean(spec: BoundarySpec) -> BoundarySpec:
    """Remove the constant Fourier mode, so ``f(0) = 0``."""
    if isinstance(spec, TrigPolyBoundary):
        return TrigPolyBoundary({k: v for k, v in spec.coeffs.items() if k != 0})
    if isinstance(spec, ExponentialBoundary):
        return TrigPolyBoundary({}) if spec.n == 0 else spec
    if isinstance(spec, SampledBoundary):
        return SampledBoundary(spec.values - spec.values.mean())
    return spec  # the extremal square wave has mean zero


def _draw_degree(rng: np.random.Generator, cfg: VerifyConfig, low: int = 1) -> int:
    return int(rng.integers(low, cfg.max_degree + 1))


# --- coefficient bounds ---------------------------------------------------


def coeff_bound_margins(spec: BoundarySpec, p, grid: CircleGrid, N: int) -> tuple[float, float]:
    """Worst ratios for ``max(|a_n|, |b_n|) <= ||F||_p`` and ``|a_n| + |b_n| <= 2 C_q ||F||_p``.

    Uses the mean-value norm and quadrature coefficients, except for the
    extremal square wave whose closed-form coefficients are used: its jumps
    generally fall between nodes, where trapezoid sums can overshoot the
    true coefficients by ``O(1/node_count)``. Returns ``(0, 0)`` for ``F = 0``.
    """
    p = check_exponent(p)
    norm = lp_norm(spec, p, grid, normalized=True)
    if norm == 0.0:
        return 0.0, 0.0
    t = table_for(spec, N, grid)
    a, b = np.abs(t.a[1:]), np.abs(t.b[1:])
    c = cq_constant(1, conjugate_exponent(p))
    return float(np.max(np.maximum(a, b)) / norm), float(np.max(a + b) / (2.0 * c * norm))


def check_coeff_bounds(cfg: VerifyConfig, specs: Sequence[BoundarySpec] | None = None) -> Verdict:
    """Coefficient bounds on random draws (or on ``specs``) for every ``p`` in the grid.

    ``worst_margin`` is the larger of the two ratios; the per-inequality
    worst ratios and failure counts are in ``details``.
    """
    v = Verdict("coeff_bounds")
    worst_a = worst_b = 0.0
    fail_a = fail_b = 0
    for i, spec_list in enumerate(_trial_specs(cfg, specs, _STREAM_COEFF)):
        ok = True
        trial_worst, trial_witness = -math.inf, None
        for p, spec in spec_list:
            ma, mb = coeff_bound_margins(spec, p, cfg.grid, cfg.N)
            worst_a, worst_b = max(worst_a, ma), max(worst_b, mb)
            bad_a, bad_b = ma > 1.0 + cfg.tolerance, mb > 1.0 + cfg.tolerance
            fail_a += bad_a
            fail_b += bad_b
            ok = ok and not (bad_a or bad_b)
            if max(ma, mb) > trial_worst:
                trial_worst, trial_witness = max(ma, mb), (p, spec)
        v.record(ok, trial_worst, lambda w=trial_witness: _spec_witness(*w))
    v.details = {"worst_margin_a": worst_a, "worst_margin_b": worst_b,
                 "violations_a": fail_a, "violations_b": fail_b}
    return v


# --- Bohr inequality ------------------------------------------------------


def bohr_margin(spec: BoundarySpec, p, grid: CircleGrid, N: int) -> float:
    """``(M_f(r_p) + tail) / ||F||_p`` for the mean-free part of ``spec``."""
    p = check_exponent(p)
    spec0 = drop_mean(spec)
    norm = lp_norm(spec0, p, grid, normalized=True)
    if norm == 0.0:
        return 0.0
    if isinstance(spec0, ExtremalBoundary):
        table = table_for(spec0).with_rate(tail_rate(spec0, p, grid))
    else:
        table = coeff_table(spec0, N, grid, p=p)
    value, tail = majorant(table, bohr_lp(p).value)
    return (value + tail) / norm


def check_bohr(cfg: VerifyConfig, specs: Sequence[BoundarySpec] | None = None) -> Verdict:
    """``M_f(r_p) + tail <= ||F||_p`` with the constant mode removed."""
    v = Verdict("bohr_lp")
    for spec_list in _trial_specs(cfg, specs, _STREAM_BOHR):
        ok, trial_worst, trial_witness = True, -math.inf, None
        for p, spec in spec_list:
            m = bohr_margin(spec, p, cfg.grid, cfg.N)
            ok = ok and m <= 1.0 + cfg.tolerance
            if m > trial_worst:
                trial_worst, trial_witness = m, (p, spec)
        v.record(ok, trial_worst, lambda w=trial_witness: _spec_witness(*w))
    return v


# --- Schwarz growth and derivative cross-check ----------------------------


def check_schwarz(cfg: VerifyConfig) -> Verdict:
    """``|f(z)| <= (4/pi) arctan|z|`` for ``f(0) = 0`` and ``sup |F| <= 1``.

    The sup is taken on an 8x oversampled grid so that the rescaled boundary
    function really satisfies ``|F| <= 1`` between the quadrature nodes.
    """
    v = Verdict("schwarz_growth")
    fine = CircleGrid(8 * cfg.grid.node_count)
    radii = np.arange(1, 10) / 10.0
    theta = 2.0 * np.pi * np.arange(64) / 64
    z = (radii[:, None] * np.exp(1j * theta[None, :])).ravel()
    bound = (4.0 / np.pi) * np.arctan(np.abs(z))
    for i in range(cfg.trials):
        rng = cfg.rng(_STREAM_SCHWARZ, i)
        spec = drop_mean(gen_boundary(rng, _draw_degree(rng, cfg), math.inf, 1.0, cfg.grid))
        sup = lp_norm(spec, math.inf, fine)
        spec = TrigPolyBoundary({k: c / sup for k, c in spec.coeffs.items()})
        f = eval_map(coeff_table(spec, cfg.N, cfg.grid), z).f
        m = float(np.max(np.abs(f) / bound))
        v.record(m <= 1.0 + cfg.tolerance, m, lambda s=spec: _spec_witness(math.inf, s))
    return v


def check_fd_derivatives(cfg: VerifyConfig, points: int = 20, h: float = 1e-5, atol: float = 1e-5) -> Verdict:
    """``f_z``, ``f_zbar`` from the table against central differences of the Poisson integral."""
    v = Verdict("fd_cross_check")
    for i in range(cfg.trials):
        rng = cfg.rng(_STREAM_FD, i)
        spec = gen_boundary(rng, _draw_degree(rng, cfg), 2.0, 1.0, cfg.grid)
        rad = 0.9 * np.sqrt(rng.uniform(size=points))
        z = rad * np.exp(2j * np.pi * rng.uniform(size=points))
        d = eval_map(coeff_table(spec, cfg.N, cfg.grid), z)
        fx = (poisson_extend(spec, z + h, cfg.grid) - poisson_extend(spec, z - h, cfg.grid)) / (2 * h)
        fy = (poisson_extend(spec, z + 1j * h, cfg.grid) - poisson_extend(spec, z - 1j * h, cfg.grid)) / (2 * h)
        err = max(np.max(np.abs(0.5 * (fx - 1j * fy) - d.fz)), np.max(np.abs(0.5 * (fx + 1j * fy) - d.fzbar)))
        m = float(err / atol)
        v.record(m <= 1.0, m, lambda s=spec: _spec_witness(2.0, s))
    return v


# --- Landau-type univalence -----------------------------------------------


def normalized_draw(rng: np.random.Generator, degree: int, K: float) -> tuple[CoeffTable, int]:
    """Random table with ``a_0 = b_1 = 0``, ``a_1 = 1`` and ``max_{n>=2} |a_n| + |b_n| = K``.

    A trig polynomial is drawn, its constant mode and ``conj(z)`` mode are
    dropped and it is divided by ``a_1``; the modes ``n >= 2`` are then
    scaled so the largest pair sum equals ``K``. Draws with ``|a_1| < 1e-6``
    are rejected. Returns the table and the number of rejections.
    """
    degree = int(degree)
    if degree < 2:
        raise ValueError("degree must be >= 2")
    for rejected in range(MAX_REJECTIONS):
        re, im = rng.standard_normal((2, 2 * degree + 1))
        c = (re + 1j * im) / math.sqrt(2.0)  # c[degree + k] is the e^{ikt} mode
        a1 = c[degree + 1]
        if abs(a1) >= 1e-6:
            break
    else:
        raise RuntimeError("normalization rejected every draw")
    c = c / a1
    a = c[degree:].copy()
    b = np.conj(c[: degree + 1][::-1])
    a[0], b[0], b[1] = 0.0, 0.0, 0.0
    s = np.abs(a[2:]) + np.abs(b[2:])
    scale = K / np.max(s) if np.max(s) > 0 else 0.0
    a[2:] *= scale
    b[2:] *= scale
    return CoeffTable(a, b, K), rejected


def adversarial_table(K: float, N: int) -> CoeffTable:
    """``f(z) = z - K sum_{n=2}^N z^n``: pair sums saturate ``K`` with aligned phases."""
    a = np.full(N + 1, -float(K), dtype=complex)
    a[0], a[1] = 0.0, 1.0
    return CoeffTable(a, np.zeros(N + 1, dtype=complex), K)


def _landau_radii_for(norm: float, p) -> tuple[float, float, float]:
    p = check_exponent(p)
    K = 2.0 * cq_constant(1, conjugate_exponent(p)) * float(norm)
    r0, R0 = landau_radii(K)
    return K, r0.value, R0.value


def _landau_tables(cfg: VerifyConfig, K: float, tables: Iterable[CoeffTable] | None):
    if tables is not None:
        yield from tables
        return
    for i in range(cfg.trials):
        rng = cfg.rng(_STREAM_LANDAU, i)
        table, _ = normalized_draw(rng, _draw_degree(rng, cfg, low=2), K)
        yield table


def check_univalence(cfg: VerifyConfig, norm: float, p, tables: Iterable[CoeffTable] | None = None,
                     n_radii: int = 64, n_angles: int = 128, n_pairs_side: int = 32) -> Verdict:
    """Sampled univalence inside ``|z| <= r0 (1 - 1e-6)`` for ``K = 2 C_q norm``.

    Two checks per table: the Jacobian is positive on a polar grid, and no
    two points of a coarser polar grid collide, where a collision means
    ``|f(z1) - f(z2)| < tolerance * |z1 - z2|``. ``worst_margin`` is the
    smallest Jacobian seen.
    """
    K, r0, _ = _landau_radii_for(norm, p)
    rmax = r0 * (1.0 - 1e-6)
    zj = _polar(rmax, n_radii, n_angles)
    zc = _polar(rmax, n_pairs_side, n_pairs_side)
    iu = np.triu_indices(zc.size, k=1)
    dz = np.abs(zc[:, None] - zc[None, :])[iu]
    v = Verdict("univalence", worst_margin=math.inf, sense="min")
    collisions = 0
    for table in _landau_tables(cfg, K, tables):
        J = eval_map(table, zj).J
        fc = eval_map(table, zc).f
        df = np.abs(fc[:, None] - fc[None, :])[iu]
        hits = int(np.count_nonzero(df < cfg.tolerance * dz))
        collisions += hits
        jmin = float(np.min(J))
        v.record(jmin > 0 and hits == 0, jmin, lambda t=table: table_to_dict(t))
    v.details = {"K": K, "r0": r0, "sample_radius": rmax, "collisions": collisions}
    return v


def check_schlicht(cfg: VerifyConfig, norm: float, p, tables: Iterable[CoeffTable] | None = None,
                   n_angles: int = 512) -> Verdict:
    """``min_theta |f(r0 e^{i theta})| >= R0 - tolerance``; margin is ``min |f| - R0``."""
    K, r0, R0 = _landau_radii_for(norm, p)
    z = r0 * np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    v = Verdict("schlicht", worst_margin=math.inf, sense="min")
    for table in _landau_tables(cfg, K, tables):
        m = float(np.min(np.abs(eval_map(table, z).f))) - R0
        v.record(m >= -cfg.tolerance, m, lambda t=table: table_to_dict(t))
    v.details = {"K": K, "r0": r0, "R0": R0}
    return v


def _polar(rmax: float, n_r: int, n_t: int) -> np.ndarray:
    r = rmax * np.arange(1, n_r + 1) / n_r
    t = 2.0 * np.pi * np.arange(n_t) / n_t
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


# --- suite ----------------------------------------------------------------


def run_suite(cfg: VerifyConfig, landau_norm: float | None = None, landau_p=math.inf) -> list[Verdict]:
    """Every property on ``cfg``, sorted by property name.

    The Landau checks default to the regime ``K = 2 C_q norm = 1``.
    """
    landau_p = check_exponent(landau_p)
    if landau_norm is None:
        landau_norm = 1.0 / (2.0 * cq_constant(1, conjugate_exponent(landau_p)))
    verdicts = [
        check_coeff_bounds(cfg),
        check_bohr(cfg),
        check_schwarz(cfg),
        check_fd_derivatives(cfg),
        check_univalence(cfg, landau_norm, landau_p),
        check_schlicht(cfg, landau_norm, landau_p),
    ]
    return sorted(verdicts, key=lambda v: v.property_name)


def _trial_specs(cfg: VerifyConfig, specs, stream: int):
    """Per trial, a list of ``(p, spec)`` pairs."""
    if specs is not None:
        for spec in specs:
            yield [(p, spec) for p in cfg.p_grid]
        return
    for i in range(cfg.trials):
        rng = cfg.rng(stream, i)
        degree = _draw_degree(rng, cfg)
        yield [(p, gen_boundary(rng, degree, p, 1.0, cfg.grid)) for p in cfg.p_grid]


def _spec_witness(p, spec) -> dict:
    return {"p": "inf" if math.isinf(p) else p, "boundary": boundary_to_dict(spec)}
