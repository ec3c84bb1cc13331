"""Exception hierarchy shared by the kernels, the renderer and the CLI."""


class RevolvableError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RevolvableError, ValueError):
    """An input lies outside the domain of a projection kernel."""


class ConfigError(RevolvableError, ValueError):
    """Invalid or inconsistent configuration, detected before any pixel work."""


class NumericError(RevolvableError, ArithmeticError):
    """A numerical procedure failed to converge."""


class ImageIOError(RevolvableError, OSError):
    """An image could not be read or written."""
