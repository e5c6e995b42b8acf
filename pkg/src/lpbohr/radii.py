"""Bohr and Landau-type radius constants.

Closed forms carry the residual of the equation that defines them, so every
report can be audited without trusting the formula. Empirical radii come
from bisection on the (monotone) majorant of a coefficient table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields

import numpy as np

from ._validation import check_exponent, conjugate_exponent
from .errors import InvalidBound, NoRadius
from .mappings import CoeffTable, majorant
from .spectral import cq_constant

__all__ = [
    "ClassParams",
    "RadiusReport",
    "bohr_bounded",
    "bohr_lp",
    "landau_radii",
    "landau_lp",
    "landau_classical",
    "landau_bounded",
    "landau_lipschitz",
    "empirical_bohr",
    "sharpness_margin",
    "extremal_witness",
    "report_to_dict",
]

FOUR_OVER_PI = 4.0 / math.pi

CONSTANT_MAP = "ConstantMap"
NO_CROSSING = "NoCrossing"
EMPTY_SCHLICHT_DISK = "EmptySchlichtDisk"
VACUOUS_CLASS = "VacuousClass"


@dataclass(frozen=True)
class ClassParams:
    """Parameters of the class a radius refers to; unused fields stay None."""

    p: float | None = None
    q: float | None = None
    norm: float | None = None
    M: float | None = None
    a: float | None = None
    Lambda_bound: float | None = None
    K: float | None = None

    def __post_init__(self):
        if self.p is not None:
            q = conjugate_exponent(self.p)
            if self.q is None:
                object.__setattr__(self, "q", q)
            elif self.q != q:
                raise ValueError(f"q={self.q} is not conjugate to p={self.p}")
        if self.a is not None and not 0.0 <= self.a <= 1.0:
            raise ValueError("a must lie in [0, 1]")

    def as_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                out[f.name] = "inf" if math.isinf(v) else v
        return out


@dataclass(frozen=True)
class RadiusReport:
    name: str
    value: float
    method: str
    residual: float
    params: ClassParams = field(default_factory=ClassParams)
    flags: tuple[str, ...] = ()

    def __float__(self) -> float:
        return self.value


def report_to_dict(report: RadiusReport) -> dict:
    out = {
        "name": report.name,
        "value": report.value,
        "method": report.method,
        "residual": report.residual,
        "params": report.params.as_dict(),
    }
    if report.flags:
        out["flags"] = list(report.flags)
    return out


def bohr_bounded(a: float) -> RadiusReport:
    """Bohr radius ``(1 - a) / (1 - a + 4/pi)`` for ``|f| <= M`` with ``|a_0| = aM``.

    The residual is ``|a + (4/pi) r/(1-r) - 1|``, the class-worst majorant
    equation with ``M`` divided out.
    """
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a!r}")
    r = (1.0 - a) / (1.0 - a + FOUR_OVER_PI)
    residual = abs(a + FOUR_OVER_PI * r / (1.0 - r) - 1.0)
    return RadiusReport("r_H", r, "closed_form", residual, ClassParams(a=a))


def bohr_lp(p) -> RadiusReport:
    """Bohr radius ``1 / (2 C_q + 1)`` for maps with ``L^p`` boundary data."""
    p = check_exponent(p)
    q = conjugate_exponent(p)
    c = cq_constant(1, q)
    r = 1.0 / (2.0 * c + 1.0)
    residual = abs(2.0 * c * r / (1.0 - r) - 1.0)
    return RadiusReport("r_p", r, "closed_form", residual, ClassParams(p=p, q=q))


def landau_radii(K: float, params: ClassParams | None = None) -> tuple[RadiusReport, RadiusReport]:
    """Univalence radius ``r0`` and schlicht radius ``R0`` for coefficient rate ``K``.

    ``K`` bounds ``|a_n| + |b_n|`` for ``n >= 2`` of a map normalized by
    ``f(0) = f_z(0) - 1 = f_zbar(0) = 0``. ``r0`` is the smaller root of
    ``(K+1) r^2 - 2(K+1) r + 1 = 0`` and ``R0 = r0 - K r0^2 / (1 - r0)``.
    """
    K = float(K)
    if not K > 0:
        raise ValueError(f"K must be positive, got {K!r}")
    params = params or ClassParams(K=K)
    r0 = 1.0 - math.sqrt(K * K + K) / (K + 1.0)
    quad_res = abs((K + 1.0) * r0 * r0 - 2.0 * (K + 1.0) * r0 + 1.0)
    R0 = r0 - K * r0 * r0 / (1.0 - r0)
    schlicht_res = abs((r0 - R0) * (1.0 - r0) - K * r0 * r0)
    flags: tuple[str, ...] = ()
    if R0 <= 0:
        flags = (EMPTY_SCHLICHT_DISK,)
    return (
        RadiusReport("r_0", r0, "closed_form", quad_res, params),
        RadiusReport("R_0", R0, "closed_form", schlicht_res, params, flags),
    )


def landau_lp(p, norm: float) -> tuple[RadiusReport, RadiusReport]:
    """``r0``, ``R0`` for ``||F||_p = norm`` (mean-value convention), ``K = 2 C_q norm``.

    The normalized class is empty when ``norm < 1``, because ``|a_1| <= ||F||_p``
    and ``a_1 = 1``; the radii are still returned, flagged ``VacuousClass``.
    """
    p = check_exponent(p)
    norm = float(norm)
    if not norm > 0:
        raise ValueError("norm must be positive")
    q = conjugate_exponent(p)
    K = 2.0 * cq_constant(1, q) * norm
    params = ClassParams(p=p, q=q, norm=norm, K=K)
    r0, R0 = landau_radii(K, params)
    if norm < 1.0:
        r0 = _with_flag(r0, VACUOUS_CLASS)
        R0 = _with_flag(R0, VACUOUS_CLASS)
    return r0, R0


def landau_classical(M: float) -> tuple[RadiusReport, RadiusReport]:
    """Classical Landau constants ``r0 = 1/(M + sqrt(M^2 - 1))``, ``sigma0 = M r0^2``.

    Residuals: ``r0`` is the critical point of ``f0(z) = Mz(1 - Mz)/(M - z)``,
    i.e. a root of ``z^2 - 2Mz + 1``, and ``sigma0 = f0(r0)``.
    """
    M = float(M)
    if not M >= 1.0:
        raise InvalidBound(f"M must be >= 1, got {M!r}")
    r0 = 1.0 / (M + math.sqrt(M * M - 1.0))
    sigma0 = M * r0 * r0
    r_res = abs(r0 * r0 - 2.0 * M * r0 + 1.0)
    if M == 1.0:
        f0 = r0  # f0(z) = z
    else:
        f0 = M * r0 * (1.0 - M * r0) / (M - r0)
    params = ClassParams(M=M)
    return (
        RadiusReport("r_0_classical", r0, "closed_form", r_res, params),
        RadiusReport("sigma_0", sigma0, "closed_form", abs(f0 - sigma0), params),
    )


def landau_bounded(M: float) -> tuple[RadiusReport, RadiusReport]:
    """Radii ``rho1``, ``R1`` for ``f(0) = 0``, ``J_f(0) = 1``, ``|f| < M``.

    Values use the cancellation-free forms ``rho1 = 1 - 1/sqrt(1 + x)`` and
    ``R1 = pi/(4M) - (pi/(2M)) / (1 + sqrt(1 + x))`` with ``x = pi/(8M^2)``;
    the residual is the gap to the textbook expressions.
    """
    M = float(M)
    if not M > 0:
        raise InvalidBound(f"M must be positive, got {M!r}")
    x = math.pi / (8.0 * M * M)
    s = math.sqrt(1.0 + x)
    rho1 = 1.0 - 1.0 / s
    R1 = math.pi / (4.0 * M) - (math.pi / (2.0 * M)) / (1.0 + s)
    rho1_text = 1.0 - 2.0 * math.sqrt(2.0) * M / math.sqrt(math.pi + 8.0 * M * M)
    R1_text = math.pi / (4.0 * M) + 4.0 * M - 4.0 * M * math.sqrt(1.0 + x)
    assert 0.0 < rho1 < 1.0
    params = ClassParams(M=M)
    return (
        RadiusReport("rho_1", rho1, "closed_form", abs(rho1 - rho1_text), params),
        RadiusReport("R_1", R1, "closed_form", abs(R1 - R1_text), params),
    )


def landau_lipschitz(Lambda: float) -> tuple[RadiusReport, RadiusReport]:
    """Radii ``rho2 = 1/(1 + Lambda)`` and ``R2 = 1 - Lambda ln(1 + 1/Lambda)``.

    Requires ``Lambda >= 1`` since ``lambda_f(0) = 1 <= Lambda_f(0)``.
    """
    L = float(Lambda)
    if not L >= 1.0:
        raise InvalidBound(f"Lambda must be >= 1, got {L!r}")
    rho2 = 1.0 / (1.0 + L)
    R2 = 1.0 - L * math.log1p(1.0 / L)
    R2_text = 1.0 - L * math.log(1.0 + 1.0 / L)
    params = ClassParams(Lambda_bound=L)
    return (
        RadiusReport("rho_2", rho2, "closed_form", abs((1.0 + L) * rho2 - 1.0), params),
        RadiusReport("R_2", R2, "closed_form", abs(R2 - R2_text), params),
    )


def empirical_bohr(table: CoeffTable, bound: float, tol: float = 1e-12, max_iter: int = 200) -> RadiusReport:
    """Largest ``r`` with ``majorant + tail <= bound``, by bisection on ``[0, 1)``.

    If the majorant never exceeds ``bound`` (e.g. a constant map) the supremum
    is the open endpoint; ``1 - tol`` is returned with a flag.
    """
    if not tol >= 1e-12:
        raise ValueError("tol must be >= 1e-12")
    bound = float(bound)
    a0 = abs(complex(table.a[0]))
    if bound < a0:
        raise NoRadius(f"bound {bound!r} is below |a_0| = {a0!r}")

    def excess(r: float) -> float:
        value, tail = majorant(table, r)
        return value + tail - bound

    params = ClassParams(M=bound)
    hi = 1.0 - tol
    if excess(hi) <= 0:
        constant = not np.any(table.pair_sums()[1:]) and table.tail_bound_rate == 0
        flag = CONSTANT_MAP if constant else NO_CROSSING
        return RadiusReport("r_empirical", hi, "bisection", 0.0, params, (flag,))
    lo = 0.0
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if excess(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return RadiusReport("r_empirical", lo, "bisection", abs(excess(lo)), params)


def sharpness_margin(a: float, r: float) -> float:
    """``a + (4/pi) r/(1 - r) - 1``: positive exactly when ``r`` exceeds ``r_H(a)``."""
    if not 0.0 <= a <= 1.0:
        raise ValueError("a must lie in [0, 1]")
    if not 0.0 <= r < 1.0:
        raise ValueError("r must lie in [0, 1)")
    return a + FOUR_OVER_PI * r / (1.0 - r) - 1.0


def extremal_witness(a: float, r: float, n_max: int = 64) -> tuple[int, float]:
    """Best single-map witness among ``aM + (1 - a) f_n`` for ``n <= n_max``.

    Each such map satisfies ``|f| <= M``; its majorant over ``M`` is
    ``a + (1 - a)(4/pi) artanh(r^n)``. Returns ``(n, margin)`` maximizing the
    margin ``majorant/M - 1``. Unlike :func:`sharpness_margin` this is a
    genuine class member, so a negative margin here does not contradict
    sharpness of the class-worst bound.
    """
    if not 0.0 <= a <= 1.0 or not 0.0 <= r < 1.0:
        raise ValueError("need a in [0, 1] and r in [0, 1)")
    n = np.arange(1, int(n_max) + 1)
    margins = a + (1.0 - a) * FOUR_OVER_PI * np.arctanh(r ** n) - 1.0
    best = int(np.argmax(margins))
    return int(n[best]), float(margins[best])


def _with_flag(report: RadiusReport, flag: str) -> RadiusReport:
    return RadiusReport(report.name, report.value, report.method, report.residual, report.params,
                        report.flags + (flag,))
