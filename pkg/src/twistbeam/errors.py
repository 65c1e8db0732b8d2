"""Exception types shared across the package."""


class TwistbeamError(Exception):
    """Base class for all twistbeam errors."""


class DomainError(TwistbeamError, ValueError):
    """An argument is outside the supported domain (negative radius,
    unsupported Bessel order, non-integer orbital index, ...)."""


class BasisError(TwistbeamError, ValueError):
    """A bispinor was supplied in the wrong matrix basis."""


class ZeroDensityError(TwistbeamError):
    """The local density vanishes, so a velocity is undefined there."""


class BesselZeroError(TwistbeamError):
    """A closed-form expression has a pole at this radius (zero of the
    Bessel factor in its denominator)."""


class StencilCrossesAxisError(TwistbeamError, ValueError):
    """A finite-difference stencil would straddle the beam axis."""


class InsufficientSamplesError(TwistbeamError, ValueError):
    """Too few profile samples inside the requested fit window."""


class NoCrossoverError(TwistbeamError):
    """The radial slope profile never changes sign (no transition radius)."""


class ScenarioError(TwistbeamError, ValueError):
    """A scenario file is missing, malformed, or inconsistent."""
