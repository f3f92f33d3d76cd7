"""Exception hierarchy shared by the library and the command line.

Each class carries the process exit code the CLI uses when it escapes.
"""


class ConvpowError(Exception):
    exit_code = 1


class InputError(ConvpowError, ValueError):
    """Malformed or out-of-contract input."""

    exit_code = 2


class GeometryError(InputError):
    """A level set or chart could not be constructed (e.g. |Q| not definite)."""


class HypothesisError(ConvpowError):
    """A theorem hypothesis needed by the requested computation fails."""

    exit_code = 3


class ResourceError(ConvpowError):
    """The computation would exceed a configured memory or size cap."""

    exit_code = 4


class AccuracyError(ConvpowError):
    """A quadrature or series could not reach the requested accuracy."""

    exit_code = 5
