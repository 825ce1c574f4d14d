"""Exception hierarchy shared across the package.

Domain errors (bad mathematical input: exceptional target, preperiodic point
where a wandering one is required, zero where nonzero is required) map to CLI
exit code 1; parse and configuration errors map to exit code 2.
"""


class FFDynError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FFDynError):
    """Input is syntactically fine but mathematically inadmissible."""


class OrbitBudgetError(DomainError):
    """An orbit computation exceeded its height or iteration budget."""


class ParseError(FFDynError):
    """Malformed expression text. Carries a 0-based position when known."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ConfigError(FFDynError):
    """Malformed configuration file or CLI flag combination."""
