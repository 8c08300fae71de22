"""Exception hierarchy shared by all voldist modules."""


class VolDistError(Exception):
    """Base class for all voldist errors."""


class DomainError(VolDistError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DataError(VolDistError):
    """Input data is malformed, empty, or misaligned."""


class DegenerateDataError(DataError):
    """A sample is constant (or otherwise carries no usable variation)."""


class InsufficientTailError(DataError):
    """Too few nonempty histogram bins in the requested tail window."""


class NumericalError(VolDistError):
    """A quadrature, optimization, or simulation failed to converge."""


class ConfigError(VolDistError):
    """A run configuration is invalid or references missing inputs."""
