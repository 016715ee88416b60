import typing as t
from dataclasses import dataclass
from uuid import UUID

StageResultT = t.TypeVar('StageResultT')

RunId = t.Union[UUID, str]
StageId = str


@dataclass(frozen=True)
class PipelineResult(t.Generic[StageResultT]):
    """
    Outcome of one chart run, the error is captured instead of raised
    """

    run_id: RunId
    value: t.Optional[StageResultT]
    error: t.Optional[Exception]

    def raise_on_error(self) -> None:
        if self.error is not None:
            raise self.error


class RunContextLike(t.Protocol):
    run_id: RunId
    input_kwargs: t.Dict[str, t.Any]

    async def emit_on_pipeline_start(self) -> t.Any:
        ...

    async def emit_on_pipeline_complete(self, result: PipelineResult) -> t.Any:
        ...

    async def emit_on_stage_start(self, stage_id: StageId) -> t.Any:
        ...

    async def emit_on_stage_complete(self, stage_id: StageId, error: t.Optional[Exception]) -> t.Any:
        ...


class EventManagerLike(t.Protocol):
    """
    Listener of the cascade lifecycle; every callback is optional
    """

    async def on_pipeline_start(self, ctx: RunContextLike) -> None:
        ...

    async def on_pipeline_complete(self, ctx: RunContextLike, result: PipelineResult) -> None:
        ...

    async def on_stage_start(self, ctx: RunContextLike, stage_id: StageId) -> None:
        ...

    async def on_stage_complete(self, ctx: RunContextLike, stage_id: StageId, error: t.Optional[Exception]) -> None:
        ...
