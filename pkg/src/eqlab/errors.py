"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: configuration problems exit 2,
numerical failures exit 3, failed built-in assertions exit 4.
"""


class EqLabError(Exception):
    """Base class for all package errors."""


class ConfigurationError(EqLabError):
    """Invalid sizes, unknown keys, out-of-range static parameters."""


class DomainError(EqLabError):
    """Input outside the mathematical domain (e.g. affine sector with q <= 0)."""


class NoSolutionError(EqLabError):
    """A defining equation has no normalizable solution on the given basis."""


class NumericalResolutionError(EqLabError):
    """Requested quantity cannot be resolved at the configured resolution."""


class ContractViolationError(EqLabError):
    """An object violates a declared invariant (e.g. non-Hermitian input)."""


class ResourceLimitError(EqLabError):
    """Request exceeds the configured desk-scale resource bounds."""
