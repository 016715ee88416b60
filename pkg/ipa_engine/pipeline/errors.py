from ipa_engine.errors import ConfigError
from ipa_engine.errors import IpaError

__all__ = [
    'BasePipelineError',
    'InvalidStageError',
    'StageError',
]


class BasePipelineError(IpaError):
    pass


class InvalidStageError(BasePipelineError, ConfigError):
    """
    A stage class or its input annotations cannot form a stage graph
    """


class StageError(BasePipelineError):
    """
    A cascade stage failed; the original error is kept in ``cause`` and chained
    """

    def __init__(self, stage_id: str, cause: BaseException) -> None:
        super().__init__(f'Stage {stage_id} failed: {type(cause).__name__}: {cause}')
        self.stage_id = stage_id
        self.cause = cause
