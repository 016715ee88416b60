import typing as t
from pathlib import Path
from unittest.mock import ANY
from uuid import UUID

import numpy as np
import pytest
import pytest_mock

from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.store import FileSystemBundleStore
from ipa_engine.isa import DimRule
from ipa_engine.isa import InvalidRuleError
from ipa_engine.pipeline import PipelineConfig
from ipa_engine.pipeline import RunContext
from ipa_engine.pipeline import SeparationChart
from ipa_engine.pipeline import StageError
from ipa_engine.pipeline import separate
from ipa_engine.pipeline.types import PipelineResult
from ipa_engine.pipeline.types import RunContextLike
from ipa_engine.pipeline.types import StageId
from ipa_engine.synth import GroundTruth
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import sample_covariance

CASCADE = [
    'observations',
    'differencing',
    'ar_fit',
    'innovation',
    'whitening',
    'unmixing',
    'dependence',
    'clustering',
    'assembly',
]


class RecordingEvents:
    async def on_pipeline_start(self, ctx: RunContextLike) -> None:
        ...

    async def on_pipeline_complete(self, ctx: RunContextLike, result: PipelineResult) -> None:
        ...

    async def on_stage_start(self, ctx: RunContextLike, stage_id: StageId) -> None:
        ...

    async def on_stage_complete(self, ctx: RunContextLike, stage_id: StageId, error: t.Optional[Exception]) -> None:
        ...


async def test_chart_run_success(
    isa_observations: t.Tuple[TimeSeries, GroundTruth],
    isa_config: PipelineConfig,
) -> None:
    x, truth = isa_observations

    result = await SeparationChart(config=isa_config).run(x)

    assert result.error is None
    pipeline, sources = result.value.pipeline, result.value.sources

    assert pipeline.estimated_layout.multiset() == truth.layout.multiset()
    assert sources.length == x.length
    np.testing.assert_allclose(sample_covariance(sources), np.eye(4), atol=1e-8)
    assert pipeline.summary() == {
        'r': 0,
        'ar_order': 0,
        'ar_spectral_radius': 0.0,
        'kept': 4,
        'ica_sweeps': pipeline.ica.sweeps,
        'n_clusters': 2,
        'estimated_layout': [2, 2],
    }


async def test_chart_run_error(isa_observations: t.Tuple[TimeSeries, GroundTruth], isa_config: PipelineConfig) -> None:
    x, _ = isa_observations
    config = PipelineConfig.from_dict({**isa_config.to_dict(), 'dim_rule': DimRule.fixed(5).to_dict()})

    result = await SeparationChart(config=config).run(x)

    assert result.value is None
    assert isinstance(result.error, StageError)
    assert result.error.stage_id == 'whitening'
    assert isinstance(result.error.cause, InvalidRuleError)

    with pytest.raises(StageError):
        result.raise_on_error()


async def test_chart_events(
    mocker: pytest_mock.MockerFixture,
    isa_observations: t.Tuple[TimeSeries, GroundTruth],
    isa_config: PipelineConfig,
) -> None:
    on_pipeline_start = mocker.spy(RecordingEvents, 'on_pipeline_start')
    on_pipeline_complete = mocker.spy(RecordingEvents, 'on_pipeline_complete')
    on_stage_start = mocker.spy(RecordingEvents, 'on_stage_start')
    on_stage_complete = mocker.spy(RecordingEvents, 'on_stage_complete')

    chart = SeparationChart(config=isa_config, event_managers=[RecordingEvents()])
    run_id = UUID('d18ff00c-3c43-4ed5-a755-13d6f89e6f44')
    result = await chart.run(isa_observations[0], run_id=run_id)

    on_pipeline_start.assert_called_once()
    assert isinstance(on_pipeline_start.call_args.kwargs['ctx'], RunContext)
    assert on_pipeline_start.call_args.kwargs['ctx'].run_id == run_id

    on_pipeline_complete.assert_called_once()
    assert on_pipeline_complete.call_args.kwargs == {'ctx': ANY, 'result': result}

    assert [call.kwargs['stage_id'] for call in on_stage_start.call_args_list] == CASCADE
    assert [call.kwargs['stage_id'] for call in on_stage_complete.call_args_list] == CASCADE
    assert all(call.kwargs['error'] is None for call in on_stage_complete.call_args_list)


async def test_chart_events_on_failure(mocker: pytest_mock.MockerFixture, isa_config: PipelineConfig) -> None:
    on_stage_complete = mocker.spy(RecordingEvents, 'on_stage_complete')
    short = TimeSeries(np.zeros((1, 4)))

    result = await SeparationChart(config=isa_config, event_managers=[RecordingEvents()]).run(short)

    assert result.error.stage_id == on_stage_complete.call_args.kwargs['stage_id']
    assert on_stage_complete.call_args.kwargs['error'] is result.error.cause


async def test_retained_series_are_stored(
    tmp_path: Path,
    isa_observations: t.Tuple[TimeSeries, GroundTruth],
    isa_config: PipelineConfig,
) -> None:
    config = PipelineConfig.from_dict({**isa_config.to_dict(), 'retain_series': True})
    store = FileSystemBundleStore(tmp_path)

    result = await SeparationChart(config=config, artifact_store=store).run(isa_observations[0])
    result.raise_on_error()

    for stage_id in ('observations', 'differencing', 'innovation', 'whitening', 'unmixing'):
        assert store.path_of(f'stages/{stage_id}', DataFormat.SERIES).exists()

    assert sorted(result.value.pipeline.intermediates) == ['differenced', 'innovation', 'unmixed', 'whitened']


def test_separate_is_reproducible(
    isa_observations: t.Tuple[TimeSeries, GroundTruth],
    isa_config: PipelineConfig,
) -> None:
    x, _ = isa_observations

    first, first_sources = separate(x, isa_config)
    second, second_sources = separate(x, isa_config)

    assert first.partition == second.partition
    np.testing.assert_array_equal(first.ica.rotation, second.ica.rotation)
    assert first_sources.allclose(second_sources, atol=0.0)


def test_separate_raises_stage_error(isa_config: PipelineConfig) -> None:
    with pytest.raises(StageError, match='Stage whitening failed'):
        separate(TimeSeries(np.ones((50, 4))), isa_config)
