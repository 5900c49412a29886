"""Exception taxonomy shared by all modules."""


class PWHankelError(Exception):
    """Base class for all package errors."""


class DomainError(PWHankelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RegimeError(DomainError):
    """Input is mathematically valid but outside the supported regime
    (e.g. a point too close to the origin for the sector-containment
    argument, or a bump radius too large for the certified geometry)."""


class NoIntersectionError(DomainError):
    """The two circles do not intersect (|w| > 2)."""


class ConfigurationError(PWHankelError, ValueError):
    """Unknown region, malformed run configuration, or similar."""


class ContractError(PWHankelError, ValueError):
    """Caller violated an interface contract (e.g. dimension mismatch)."""


class ResolutionError(PWHankelError):
    """Requested grid resolution is too coarse for the kernel scale."""


class ResourceError(PWHankelError):
    """A node or memory budget was exceeded.

    Attributes carry diagnostics: ``required`` / ``available`` (bytes or
    node counts) and, for quadratures that made partial progress,
    ``partial`` holds the partial value.
    """

    def __init__(self, message, required=None, available=None, partial=None):
        super().__init__(message)
        self.required = required
        self.available = available
        self.partial = partial


class ConvergenceError(PWHankelError):
    """An iterative solver hit its iteration cap.

    ``last_estimate`` and ``iterations`` describe the final state.
    """

    def __init__(self, message, last_estimate=None, iterations=None):
        super().__init__(message)
        self.last_estimate = last_estimate
        self.iterations = iterations
