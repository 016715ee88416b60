import typing as t


class IpaError(Exception):
    """
    Root of every error raised by the package
    """


class ConfigError(IpaError):
    """
    Invalid configuration or arguments
    """


class DataError(IpaError):
    """
    Input data does not satisfy the preconditions of an operation
    """


class NumericalError(IpaError):
    """
    A numerical procedure failed or its result cannot be trusted
    """


class ArtifactIOError(IpaError):
    """
    Reading or writing artifacts failed
    """


ERROR_CATEGORIES: t.Tuple[t.Type[IpaError], ...] = (ConfigError, DataError, NumericalError, ArtifactIOError)


def error_category(error: BaseException) -> t.Optional[t.Type[IpaError]]:
    """
    First of the four categories the error derives from, errors wrapping a cause are unwrapped
    """

    cause = getattr(error, 'cause', None)
    if isinstance(cause, BaseException):
        return error_category(cause)

    for category in ERROR_CATEGORIES:
        if isinstance(error, category):
            return category

    return None
