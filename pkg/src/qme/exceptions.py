"""Exception types raised by the engine simulators."""


class EngineError(ValueError):
    """A parameter lies outside the domain of an engine or operation."""


class InvalidPOVMError(EngineError):
    """Measurement functions violate 0 <= m <= 1 or completeness."""


class DegenerateBranchError(EngineError):
    """A measurement branch has (numerically) zero probability."""


class NumericalError(RuntimeError):
    """A numerical procedure failed; ``parameter`` names the offending input."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class ConvergenceError(NumericalError):
    pass


class ConsistencyError(NumericalError):
    """Quadrature results disagree with closed-form values beyond tolerance."""
