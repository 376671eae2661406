"""Exception types shared across the package."""


class TurbofanError(Exception):
    """Base class for all package errors."""


class TemperatureRangeError(TurbofanError, ValueError):
    """A temperature fell outside the 200-2000 K validity window of the fluid model."""

    def __init__(self, temperature, low=200.0, high=2000.0):
        self.temperature = temperature
        self.low = low
        self.high = high
        super().__init__(
            f"temperature {temperature!r} K outside fluid-model range [{low}, {high}] K"
        )


class ConvergenceError(TurbofanError, ArithmeticError):
    """An iterative solve hit its iteration cap."""

    def __init__(self, what, residual, iterations):
        self.what = what
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"{what} did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )


class InfeasibleDesign(TurbofanError):
    """Raised inside the cycle when a design leaves the model's physical envelope.

    ``run_cycle`` catches it and reports ``feasible = False`` with ``reason``.
    """

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class ModelInconsistencyError(TurbofanError):
    """A second-law audit found negative exergy destruction beyond round-off."""


class UndefinedMetricError(TurbofanError, ValueError):
    """A performance metric is undefined for the given cycle (e.g. zero fuel flow)."""
