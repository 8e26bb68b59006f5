"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the CLI: usage errors -> 2, data errors -> 3,
resource errors -> 4.
"""


class GevreyKitError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(GevreyKitError):
    """Unsupported group family or inconsistent configuration."""


class ContractViolation(GevreyKitError):
    """A documented precondition between modules was violated."""


class DomainError(GevreyKitError):
    """Argument outside the mathematical domain of an operation."""


class ResourceError(GevreyKitError):
    """Requested computation exceeds the desk-scale resource budget."""


class InsufficientDataError(GevreyKitError):
    """Not enough nonzero spectral data to fit or classify."""


class IllPairedError(GevreyKitError):
    """Duality pairing refused: partial sums failed the convergence check."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class DataError(GevreyKitError):
    """Malformed persisted data (JSON/CSV round-trip failures)."""
