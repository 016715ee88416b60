from ipa_engine.errors import DataError
from ipa_engine.errors import IpaError
from ipa_engine.errors import NumericalError

__all__ = [
    'BaseEvaluationError',
    'DegenerateBlockError',
    'DimensionMismatchError',
    'LayoutMismatchWarning',
    'NoGroundTruthError',
]


class BaseEvaluationError(IpaError):
    pass


class DimensionMismatchError(BaseEvaluationError, DataError):
    pass


class DegenerateBlockError(BaseEvaluationError, NumericalError):
    pass


class NoGroundTruthError(BaseEvaluationError, DataError):
    pass


class LayoutMismatchWarning(RuntimeWarning):
    """
    Estimated and true layouts differ as multisets, the block permutation index is reported as 1.0
    """
