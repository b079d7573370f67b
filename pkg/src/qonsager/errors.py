"""Exception hierarchy shared by all modules."""


class QOnsagerError(Exception):
    """Base class for every error raised by the package."""


class DomainError(QOnsagerError, ValueError):
    """An index or argument lies outside the range where an operation is defined."""


class ValidationError(QOnsagerError, ValueError):
    """An input object (specialization point, JSON payload, ...) is malformed."""


class ConfigurationError(QOnsagerError):
    """A run-level bound (number of deltas, mode alphabet size, ...) is too small."""


class UsageError(QOnsagerError, TypeError):
    """Operands that cannot be combined, e.g. polynomials over different alphabets."""


class EvaluationError(QOnsagerError, ArithmeticError):
    """A symbolic scalar cannot be evaluated at a specialization point."""


class DegreeBoundError(QOnsagerError):
    """A reduction was requested above the degree a rewrite system is complete to."""
