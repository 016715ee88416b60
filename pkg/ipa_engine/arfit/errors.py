import typing as t

from ipa_engine.errors import ConfigError
from ipa_engine.errors import IpaError
from ipa_engine.errors import NumericalError

__all__ = [
    'BaseArFitError',
    'IllConditionedError',
    'InvalidOrderRuleError',
    'NearUnitRootWarning',
]


class BaseArFitError(IpaError):
    pass


class InvalidOrderRuleError(BaseArFitError, ConfigError):
    pass


class IllConditionedError(BaseArFitError, NumericalError):
    def __init__(self, message: str, condition_number: t.Optional[float] = None) -> None:
        super().__init__(message)
        self.condition_number = condition_number


class NearUnitRootWarning(RuntimeWarning):
    """
    Fitted AR dynamics have a companion eigenvalue close to the unit circle, the series is probably integrated
    """
