from ipa_engine.errors import ConfigError
from ipa_engine.errors import DataError
from ipa_engine.errors import IpaError
from ipa_engine.errors import NumericalError

__all__ = [
    'BaseSynthError',
    'FamilyDimensionError',
    'InvalidSystemError',
    'SourceSampleError',
    'UndercompletenessError',
    'UnstableDynamicsError',
]


class BaseSynthError(IpaError):
    pass


class FamilyDimensionError(BaseSynthError, ConfigError):
    pass


class InvalidSystemError(BaseSynthError, ConfigError):
    pass


class UndercompletenessError(InvalidSystemError):
    pass


class UnstableDynamicsError(BaseSynthError, NumericalError):
    pass


class SourceSampleError(BaseSynthError, DataError):
    pass
