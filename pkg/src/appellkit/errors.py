"""Exception types shared across the package."""


class AppellKitError(Exception):
    """Base class for all appellkit errors."""


class DomainError(AppellKitError):
    """Operation applied outside its algebraic domain (e.g. inverting zero)."""


class NonRestrictedInput(AppellKitError):
    """Input polynomial depends on x0 where x0-free data was required."""


class DegreeCapExceeded(AppellKitError):
    """A symbolic operation would produce a polynomial above the degree cap."""


class NotRegular(AppellKitError):
    """Input is not annihilated by the Cauchy-Fueter operator."""


class NotAxial(AppellKitError):
    """Input failed the axial-symmetry test."""


class ExpansionMismatch(AppellKitError):
    """Candidate Appell expansion does not reproduce the input symbolically."""


class WeightMismatch(AppellKitError):
    """Series from incompatible coefficient spaces were combined."""


class OutOfDomain(AppellKitError):
    """Evaluation point lies outside the convergence domain of a series."""


class QuadratureFailure(AppellKitError):
    """Quadrature result disagrees with its exact counterpart beyond tolerance."""


class UnitDependence(AppellKitError):
    """An integral that must not depend on the imaginary unit varied with it."""


class ExactnessExceeded(AppellKitError):
    """Requested moment degree is beyond the quadrature rule's exactness."""


class ModeDisagreement(AppellKitError):
    """Two computation modes of the same operator produced different results."""
