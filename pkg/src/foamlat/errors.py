"""Exception types shared across the package."""


class FoamlatError(Exception):
    """Base class for all package errors."""


class SingularBasis(FoamlatError):
    """Basis matrix is (numerically) rank deficient."""


class DimensionUnsupported(FoamlatError):
    """Requested dimension is outside the supported range 2..8."""


class EnumerationBudgetExceeded(FoamlatError):
    """Lattice-point enumeration would visit more candidates than allowed."""


class GeometryDegenerate(FoamlatError):
    """Half-space intersection produced an unbounded or broken cell."""


class InvalidNormSpec(FoamlatError):
    """Norm specification violates its constraints (weights, exponent)."""


class UnknownLattice(FoamlatError):
    """Catalog lookup for a name that is not registered."""
