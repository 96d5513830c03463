"""Exception types shared across the package.

Every failure mode that a caller can meaningfully react to gets its own
class; the CLI maps them onto documented exit codes (see cli.EXIT_CODES).
"""


class PowerPartsError(Exception):
    """Base class for all package-specific failures."""


class DomainError(PowerPartsError):
    """An argument lies outside the mathematical domain of the operation."""


class PrecisionAmbiguous(PowerPartsError):
    """A floor/ceiling could not be certified against a one-ulp perturbation."""


class TruncationError(PowerPartsError):
    """The part spectrum is too short to certify the requested series tail."""


class ConvergenceFailure(PowerPartsError):
    """An iteration or quadrature exhausted its budget before reaching target accuracy."""


class BracketFailure(ConvergenceFailure):
    """A root could not be bracketed; usually the spectrum truncation is too small."""


class RangeError(PowerPartsError):
    """A requested target (e.g. part count m) is outside the achievable range."""


class OrderOutOfRange(PowerPartsError):
    """An asymptotic main term needs a polylogarithm of order <= 0."""


class GuardExceeded(PowerPartsError):
    """A resource guard (size ceiling, enumeration limit) was hit."""
