"""Exception hierarchy shared by the library, the CLI and the HTTP service.

Each exception carries the process exit code the CLI returns for it and the
HTTP status the service answers with.
"""


class BinomomentError(Exception):
    """Base class for every error raised by binomoment."""

    exit_code = 1
    status_code = 500


class InvalidArgumentError(BinomomentError, ValueError):
    """An argument is outside the domain of the operation."""

    exit_code = 2
    status_code = 400


class ResourceLimitError(BinomomentError):
    """A configured enumeration or search cap would be exceeded."""

    exit_code = 3
    status_code = 413


class IndistinguishableMaximaError(BinomomentError):
    """Two candidate maxima could not be separated above the refinement floor."""

    exit_code = 4
    status_code = 409


class InternalConsistencyError(BinomomentError, AssertionError):
    """Two exact computation routes disagreed, or a certified residual was nonzero."""

    exit_code = 1
    status_code = 500
