"""Bohr radii and Landau-type constants for harmonic maps of the unit disk
whose boundary functions lie in L^p of the circle."""

from .errors import (
    AliasRisk,
    DivergenceRisk,
    DomainError,
    GridMismatch,
    InvalidBound,
    InvalidExponent,
    NoRadius,
    OutsideDomain,
    RemovableSingularity,
)
from .mappings import (
    CoeffTable,
    DerivEval,
    coeff_table,
    eval_map,
    extremal_coeffs,
    majorant,
    poisson_extend,
    table_for,
)
from .radii import (
    ClassParams,
    RadiusReport,
    bohr_bounded,
    bohr_lp,
    empirical_bohr,
    landau_classical,
    landau_bounded,
    landau_lipschitz,
    landau_lp,
    landau_radii,
    sharpness_margin,
)
from .spectral import (
    CircleGrid,
    ExponentialBoundary,
    ExtremalBoundary,
    SampledBoundary,
    TrigPolyBoundary,
    conjugate_exponent,
    cq_constant,
    evaluate_boundary,
    fourier_coefficients,
    lp_norm,
)
from .verify import Verdict, VerifyConfig, run_suite

__version__ = "0.1.0"
