import functools
import typing as t
import uuid
from dataclasses import dataclass
from dataclasses import field

import anyio
import anyio.to_thread

from ipa_engine.artifact_store.store import ArtifactStore
from ipa_engine.artifact_store.store import NoOpArtifactStore
from ipa_engine.logs import logger_pipeline as logger
from ipa_engine.pipeline.config import PipelineConfig
from ipa_engine.pipeline.errors import StageError
from ipa_engine.pipeline.events import EventSourceMixin
from ipa_engine.pipeline.model import Fitted
from ipa_engine.pipeline.model import SeparationOutcome
from ipa_engine.pipeline.model import SeparationPipeline
from ipa_engine.pipeline.stage import StageGraph
from ipa_engine.pipeline.stage import build_stage_graph
from ipa_engine.pipeline.stages import Assembly
from ipa_engine.pipeline.stages import Observations
from ipa_engine.pipeline.types import EventManagerLike
from ipa_engine.pipeline.types import PipelineResult
from ipa_engine.pipeline.types import RunId
from ipa_engine.pipeline.types import StageId
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'RunContext',
    'SeparationChart',
    'generate_run_id',
    'separate',
]


def generate_run_id() -> uuid.UUID:
    return uuid.uuid4()


class RunContext(EventSourceMixin):
    """
    State of one cascade run: results per stage, the artifact store and the event managers
    """

    def __init__(
        self,
        chart: 'SeparationChart',
        run_id: RunId,
        input_kwargs: t.Dict[str, t.Any],
    ) -> None:
        self.chart = chart
        self.run_id = run_id
        self.input_kwargs = input_kwargs
        self.artifact_store: ArtifactStore = chart.artifact_store or NoOpArtifactStore()
        self.results: t.Dict[StageId, t.Any] = {}

    def _get_event_managers(self) -> t.List[EventManagerLike]:
        return list(self.chart.event_managers)

    async def save_stage_result(self, stage_id: StageId, data: t.Any) -> None:
        series = data.series if isinstance(data, Fitted) else data

        if isinstance(series, TimeSeries):
            await self.artifact_store.save(f'stages/{stage_id}', series)

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__} run_id="{self.run_id}">'


@dataclass(frozen=True, repr=False)
class SeparationChart:
    """
    The separation cascade as a stage graph from ``Observations`` to ``Assembly``.

    ``run`` never raises for stage failures, it returns a ``PipelineResult`` carrying a ``StageError``.
    """

    config: PipelineConfig = field(default_factory=PipelineConfig)
    artifact_store: t.Optional[ArtifactStore] = None
    event_managers: t.Sequence[EventManagerLike] = field(default_factory=list)
    graph: StageGraph = field(default_factory=functools.partial(build_stage_graph, Observations, Assembly))

    async def _run_stage(self, ctx: RunContext, stage_id: StageId) -> t.Any:
        stage = self.graph.stage_map[stage_id](self.config)
        kwargs = {name: ctx.results[source] for name, source in self.graph.inputs_of(stage_id).items()}

        if stage_id == self.graph.input_stage:
            kwargs.update(ctx.input_kwargs)

        await ctx.emit_on_stage_start(stage_id)
        logger.debug('Stage %s started, run_id=%s', stage_id, ctx.run_id)

        try:
            result = await anyio.to_thread.run_sync(functools.partial(stage.process, **kwargs))
        except Exception as ex:
            await ctx.emit_on_stage_complete(stage_id, error=ex)
            raise StageError(stage_id, ex) from ex

        await ctx.emit_on_stage_complete(stage_id, error=None)

        if self.config.retain_series:
            await ctx.save_stage_result(stage_id, result)

        return result

    async def run(self, x: TimeSeries, run_id: t.Optional[RunId] = None) -> PipelineResult[SeparationOutcome]:
        run_id = run_id if run_id is not None else generate_run_id()
        ctx = RunContext(chart=self, run_id=run_id, input_kwargs={'x': x})

        await ctx.emit_on_pipeline_start()

        try:
            for stage_id in self.graph.order():
                ctx.results[stage_id] = await self._run_stage(ctx, stage_id)

            result = PipelineResult(run_id=run_id, value=ctx.results[self.graph.output_stage], error=None)

        except Exception as ex:
            logger.warning('Separation run %s failed: %s', run_id, ex)
            result = PipelineResult(run_id=run_id, value=None, error=ex)

        await ctx.emit_on_pipeline_complete(result=result)
        return result


def separate(
    x: TimeSeries,
    config: t.Optional[PipelineConfig] = None,
    artifact_store: t.Optional[ArtifactStore] = None,
    event_managers: t.Sequence[EventManagerLike] = (),
) -> t.Tuple[SeparationPipeline, TimeSeries]:
    """
    Fit the whole cascade on ``x``; returns the pipeline and the estimated sources, clusters made contiguous.

    Stage failures raise ``StageError`` naming the stage, with the original error chained.
    """

    chart = SeparationChart(
        config=config if config is not None else PipelineConfig(),
        artifact_store=artifact_store,
        event_managers=list(event_managers),
    )

    result = anyio.run(chart.run, x)
    result.raise_on_error()

    return result.value.pipeline, result.value.sources
