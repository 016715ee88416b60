import enum

from ipa_engine.errors import ArtifactIOError
from ipa_engine.errors import ConfigError
from ipa_engine.errors import DataError
from ipa_engine.errors import NumericalError
from ipa_engine.errors import error_category

__all__ = [
    'ExitCode',
    'exit_code_for',
]


class ExitCode(enum.IntEnum):
    success = 0
    unexpected = 1
    config = 2
    data = 3
    numerical = 4
    io = 5


_BY_CATEGORY = {
    ConfigError: ExitCode.config,
    DataError: ExitCode.data,
    NumericalError: ExitCode.numerical,
    ArtifactIOError: ExitCode.io,
}


def exit_code_for(error: BaseException) -> ExitCode:
    if isinstance(error, OSError):
        return ExitCode.io

    return _BY_CATEGORY.get(error_category(error), ExitCode.unexpected)
