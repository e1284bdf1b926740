"""Exception hierarchy shared across the package.

Domain errors (bad inputs, parameters outside validity) map to CLI exit
code 2; numerical failures (continuation breakdown, solver blowup) map to 3.
"""


class DomainError(ValueError):
    """Inputs violate a documented precondition."""


class NumericalError(RuntimeError):
    """A numerical procedure failed (Newton divergence, blowup, ...)."""


class PinchAmbiguousError(NumericalError):
    """Root-labelling continuation passed too close to a double root."""

    def __init__(self, message, path_point=None):
        super().__init__(message)
        self.path_point = path_point


class ContinuationError(NumericalError):
    """A tracked root was lost during homotopy continuation."""
