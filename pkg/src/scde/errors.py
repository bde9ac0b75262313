"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument left the domain stated by the system or operation."""


class InvalidWindowError(DomainError):
    """Coupling window with a negative sample or no positive sample."""


class ConvergenceError(RuntimeError):
    """Fixed-point iteration ran out of iterations; carries the last state."""

    def __init__(self, message, last_value=None, residual=None, iterations=None):
        super().__init__(message)
        self.last_value = last_value
        self.residual = residual
        self.iterations = iterations


class QuadratureError(RuntimeError):
    """Quadrature failed to reach the requested tolerance."""

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class StructureError(RuntimeError):
    """The two-stable-fixed-point picture does not hold for these inputs."""


class NoThresholdError(RuntimeError):
    """The threshold predicate never changes over the searched range."""


class NoKinkError(RuntimeError):
    """Profile does not cross the midpoint level between its pinned values."""


class NotSolitonicError(RuntimeError):
    """Trajectory has not settled into a traveling fixed shape."""


class DegenerateProfileError(RuntimeError):
    """Velocity denominator vanished (constant or near-constant profile)."""


class MeasurementError(ValueError):
    """Not enough data to estimate the requested quantity."""
