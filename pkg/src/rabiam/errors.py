"""Exception types raised across the package."""


class RabiError(Exception):
    """Base class for all package errors."""


class DomainError(RabiError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResonanceError(DomainError):
    """A non-resonant formula was asked to evaluate at Delta = 0."""


class TransformSingularError(RabiError):
    """The near-identity transform cannot be inverted at t = 0.

    This happens when the expansion parameter is far too large for the
    averaging method to make sense.
    """


class IntegrationDivergedError(RabiError):
    """Norm drift of a numerical trajectory exceeded the allowed tolerance."""

    def __init__(self, t, drift, tolerance):
        self.t = t
        self.drift = drift
        self.tolerance = tolerance
        super().__init__(
            f"norm drift {drift:.3e} exceeds tolerance {tolerance:.1e} at t={t:.6g}"
        )


class ConvergenceError(RabiError):
    """Step halving failed to reach the requested agreement."""


class NoOscillationError(RabiError):
    """A signal does not oscillate enough to measure a period or frequency."""


class IrrationalRatioError(RabiError):
    """Two periods have no common multiple within the denominator bound."""


class ConfigError(RabiError, ValueError):
    """A run configuration violates one of its invariants."""


class SchemaError(RabiError, ValueError):
    """A CSV file does not follow the run output schema."""
