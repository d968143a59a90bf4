"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class FormatError(ValueError):
    """Malformed text input. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceError(RuntimeError):
    """A request exceeds the configured qubit cap."""


class NumericIntegrityError(ArithmeticError):
    """A matrix failed the Hermitian / PSD / trace checks."""


class UnresolvableError(ArithmeticError):
    """A float vector is not close to any low-denominator rational point."""
