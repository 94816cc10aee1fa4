from __future__ import annotations


class ThermoError(Exception):
    """Base class for every error raised by the verification library."""


class DomainError(ThermoError, ValueError):
    """A state point lies outside the model's declared domain."""


class InversionError(ThermoError):
    pass


class NoConvergenceError(InversionError):
    def __init__(self, message: str, *, iterations: int) -> None:
        super().__init__(message)
        self.iterations = iterations


class NonBracketedRootError(InversionError):
    """The domain box does not contain a solution for the requested chart values."""


class NonMonotoneError(InversionError):
    """T is not increasing in S (or P not decreasing in V) where the solve needs it."""


class SingularChartError(ThermoError):
    """The coordinate change to the requested (X, Y) pair is not invertible at the point."""


class QuadratureError(ThermoError):
    pass


class PathError(ThermoError):
    pass


class PathGenerationError(PathError):
    """Bounded resampling could not keep a generated path inside the domain box."""


class NonMonotoneSegmentError(ThermoError):
    """dV/dt (or dS/dt) vanishes where an Euler-Lagrange equation needs it as a parameter."""


class ActionCrossCheckError(ThermoError):
    """The component route and the chart 1-form route of the action disagree."""


class UnreachableConstraintError(ThermoError):
    pass


class CycleNotClosedError(ThermoError):
    pass


class FirstLawViolationError(ThermoError):
    def __init__(self, message: str, *, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


class ConfigError(ThermoError, ValueError):
    pass
