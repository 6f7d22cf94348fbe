"""Error types shared across the package."""


class NumericalError(RuntimeError):
    """Base class for numerical failures (CLI maps these to exit code 2)."""


class SvdConvergenceError(NumericalError):
    """Jacobi SVD did not converge within the sweep cap."""


class AllocationError(NumericalError):
    """Power-allocation bisection could not bracket the multiplier."""
