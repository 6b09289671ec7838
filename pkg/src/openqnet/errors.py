"""Exception types shared across the package."""


class OpenQNetError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(OpenQNetError, ValueError):
    """Invalid network parameters, selectors, or operation arguments."""


class SizeLimitError(ParameterError):
    """Requested dense computation exceeds the configured size guard."""


class SingularIntervalError(OpenQNetError):
    """Propagator construction anchored at a non-invertible time."""

    def __init__(self, message: str, t1: float | None = None):
        super().__init__(message)
        self.t1 = t1


class DegenerateStateError(OpenQNetError):
    """Reduced state has zero weight on its single-excitation vector.

    ``limit_direction`` carries the limiting unit vector of the internal
    direction so callers can continue with the limit state if they choose.
    """

    def __init__(self, message: str, limit_direction=None):
        super().__init__(message)
        self.limit_direction = limit_direction


class DivergenceError(OpenQNetError):
    """The requested closed-form quantity diverges for this configuration."""


class PoleError(OpenQNetError):
    """Unrescaled Fisher decomposition requested at a pole of 1/[p(1-p)]."""


class OracleFailureError(OpenQNetError):
    """A numerical oracle could not produce a trustworthy value."""


class IndeterminateFlowError(OpenQNetError):
    """The observation window carries no excitation flow; inference undefined."""


class InconsistentObservationError(OpenQNetError):
    """Observed flows are not consistent with any closed network."""


class UnsupportedOracleError(OpenQNetError):
    """Requested brute-force reconstruction lies outside the oracle's domain."""
