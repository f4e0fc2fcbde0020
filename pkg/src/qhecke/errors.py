"""Exception types shared across the package.

The CLI maps these onto exit codes: usage/configuration problems exit 2,
resource refusals and integrity violations exit 3, fixture mismatches exit 1.
"""


class QheckeError(Exception):
    """Base class for package errors."""


class ConfigurationError(QheckeError):
    """Unsupported or malformed Coxeter type / run configuration."""


class ResourceLimitError(QheckeError):
    """A computation was refused because it exceeds the configured budget."""


class IntegrityError(QheckeError):
    """An internal cross-check failed; the computed data cannot be trusted."""


class NotCyclotomicProduct(QheckeError):
    """A polynomial expected to be a product of cyclotomics is not one."""
