"""Exception types shared across the package.

Each failure mode that callers are expected to catch gets its own class;
the CLI maps them to distinct exit codes.
"""


class NlsLabError(Exception):
    """Base class for all package-specific errors."""


class UsageError(NlsLabError, ValueError):
    """An operation was called with arguments outside its contract."""


class ConfigError(NlsLabError, ValueError):
    """Experiment configuration could not be parsed or validated."""


class GridMismatchError(NlsLabError):
    """A rescaled field does not fit on the grid it is being sampled to."""


class DomainEscapeError(NlsLabError):
    """Too much mass has reached the box boundary; enlarge the half-length."""


class IntegrationFailureError(NlsLabError):
    """Adaptive ODE integration failed; carries the failure time."""

    def __init__(self, message, t_fail=None):
        super().__init__(message)
        self.t_fail = t_fail


class InversionFailureError(NlsLabError):
    """Newton inversion of a characteristic map did not converge
    (usually a signal that the cutoff onset time T1 is too small)."""


class ContractionFailureError(NlsLabError):
    """Picard iteration diverged; carries the datum size and start time."""

    def __init__(self, message, sup_datum=None, T=None):
        super().__init__(message)
        self.sup_datum = sup_datum
        self.T = T
