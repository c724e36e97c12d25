"""Exception hierarchy shared by all clusterlab modules."""


class ClusterLabError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionError(ClusterLabError):
    """Matrix or vector shapes do not match the operation."""


class SignSkewSymmetryError(ClusterLabError):
    """A matrix required to be sign-skew-symmetric is not."""


class SignUndefinedError(ClusterLabError):
    """A column or row sign was requested but the vector is zero or mixed-sign.

    Determinant constraints make zero columns impossible in a healthy
    pattern walk, so seeing this usually means an invariant broke upstream.
    """


class ExactnessError(ClusterLabError):
    """An exact computation produced a remainder or a non-integer.

    Raised when a Laurent division that must be exact is not, or a value
    required to be homogeneous / integral fails to be. Signals a bug, not
    bad user input.
    """


class UnsupportedCoefficientsError(ClusterLabError):
    """Operation requires principal coefficients but the seed has other ones."""


class GroupTooLargeError(ClusterLabError):
    """Group closure exceeded the configured element bound."""


class AdmissibilityError(ClusterLabError):
    """A quiver/action pair required to be admissible is not."""


class UnsupportedInputError(ClusterLabError):
    """Input is structurally valid but outside what the operation supports."""


class ParseError(ClusterLabError):
    """Malformed serialized input (JSON shape, index ranges, etc.)."""
