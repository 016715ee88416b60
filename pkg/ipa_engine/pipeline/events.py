import typing as t

from ipa_engine.pipeline.types import EventManagerLike
from ipa_engine.pipeline.types import PipelineResult
from ipa_engine.pipeline.types import StageId

__all__ = ['EventSourceMixin']


class EventSourceMixin:
    _get_event_managers: t.Callable[..., t.List[EventManagerLike]]

    async def _emit(self, event_name: str, **kwargs: t.Any) -> None:
        for mgr in self._get_event_managers():
            callback = getattr(mgr, event_name, None)

            if callback:
                await callback(ctx=self, **kwargs)

    async def emit_on_stage_start(self, stage_id: StageId) -> None:
        await self._emit('on_stage_start', stage_id=stage_id)

    async def emit_on_stage_complete(self, stage_id: StageId, error: t.Optional[Exception]) -> None:
        await self._emit('on_stage_complete', stage_id=stage_id, error=error)

    async def emit_on_pipeline_start(self) -> None:
        await self._emit('on_pipeline_start')

    async def emit_on_pipeline_complete(self, result: PipelineResult) -> None:
        await self._emit('on_pipeline_complete', result=result)
