import typing as t

from ipa_engine.errors import ConfigError
from ipa_engine.errors import DataError
from ipa_engine.errors import IpaError
from ipa_engine.errors import NumericalError

__all__ = [
    'AmbiguousEigenGapWarning',
    'BaseIsaError',
    'ConditioningError',
    'DegenerateCoordinateError',
    'DisconnectedGraphError',
    'IcaConvergenceError',
    'InvalidGraphError',
    'InvalidRuleError',
    'NotWhiteError',
]


class BaseIsaError(IpaError):
    pass


class InvalidRuleError(BaseIsaError, ConfigError):
    pass


class ConditioningError(BaseIsaError, NumericalError):
    pass


class NotWhiteError(BaseIsaError, DataError):
    pass


class IcaConvergenceError(BaseIsaError, NumericalError):
    def __init__(self, message: str, sweep_log: t.Sequence[float] = (), rotation: t.Any = None) -> None:
        super().__init__(message)
        self.sweep_log = list(sweep_log)
        self.rotation = rotation


class DegenerateCoordinateError(BaseIsaError, DataError):
    def __init__(self, index: int) -> None:
        super().__init__(f'Coordinate {index} is constant, its dependence on other coordinates is undefined')
        self.index = index


class InvalidGraphError(BaseIsaError, DataError):
    pass


class DisconnectedGraphError(BaseIsaError, DataError):
    def __init__(self, components: t.Sequence[t.Sequence[int]], limit: int) -> None:
        super().__init__(
            f'Similarity graph has {len(components)} connected components, more than the allowed {limit} clusters: '
            f'{[list(component) for component in components]}',
        )
        self.components = [list(component) for component in components]
        self.limit = limit


class AmbiguousEigenGapWarning(RuntimeWarning):
    """
    The covariance spectrum has no clear gap, the latent dimension falls back to the energy rule
    """
