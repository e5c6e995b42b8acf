"""Exception hierarchy.

Every domain error raised by the toolkit derives from :class:`DomainError`,
which lets the command line map them to exit status 1 by class name.
"""


class DomainError(ValueError):
    """Base class for mathematical domain violations."""


class InvalidExponent(DomainError):
    """Lebesgue exponent below 1."""


class AliasRisk(DomainError):
    """Truncation too large for the quadrature grid."""


class OutsideDomain(DomainError):
    """Point not strictly inside the unit disk."""


class DivergenceRisk(DomainError):
    """Majorant requested at a radius where the series may diverge."""


class RemovableSingularity(DomainError):
    """Boundary function evaluated exactly at a jump point."""


class InvalidBound(DomainError):
    """Bound parameter outside the range forced by the class normalization."""


class NoRadius(DomainError):
    """No radius satisfies the requested majorant bound."""


class GridMismatch(DomainError):
    """Sampled boundary data does not align with the quadrature grid."""
