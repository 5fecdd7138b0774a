"""
Exception hierarchy shared by every module of the package.
"""


class RoundspecError(Exception):
    """Base class; the CLI turns any of these into a one-line error and exit status 1."""


class DomainError(RoundspecError, ValueError):
    """The requested quantity is mathematically undefined (zero modulus, zero variance, ...)."""


class ParameterError(RoundspecError, ValueError):
    """An argument is out of its allowed range or shapes do not line up."""


class RasterFormatError(RoundspecError, ValueError):
    """An image file is malformed or uses a layout other than single-channel 8-bit."""
