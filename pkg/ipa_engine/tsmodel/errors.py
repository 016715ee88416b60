from ipa_engine.errors import DataError

__all__ = [
    'BaseSeriesError',
    'InsufficientLengthError',
    'NonFiniteError',
    'ShapeError',
]


class BaseSeriesError(DataError):
    pass


class ShapeError(BaseSeriesError):
    pass


class InsufficientLengthError(BaseSeriesError):
    pass


class NonFiniteError(BaseSeriesError):
    pass
