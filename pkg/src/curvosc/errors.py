"""Exception hierarchy shared by all curvosc modules."""


class CurvoscError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CurvoscError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class InfinitePotentialError(DomainError):
    """The potential is evaluated exactly at a pole (chi = pi, or x0 = -r0)."""


class GeometryError(CurvoscError, ValueError):
    """An operation was called with the wrong geometry variant."""


class UnboundStateError(CurvoscError, ValueError):
    """The requested hyperboloid state is not a bound state."""


class NumericalError(CurvoscError, RuntimeError):
    """A numerical routine failed (non-finite data, eigensolver breakdown)."""


class AccuracyError(NumericalError):
    """A self-validating numerical routine could not meet its tolerance."""
