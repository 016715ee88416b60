import functools
import typing as t
from pathlib import Path

import anyio.to_thread
import numpy as np

from ipa_engine.artifact_store.bundles import Dataset
from ipa_engine.artifact_store.bundles import load_dataset
from ipa_engine.artifact_store.bundles import load_pipeline
from ipa_engine.artifact_store.bundles import save_dataset
from ipa_engine.artifact_store.bundles import save_pipeline
from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.serializers import read_matrix_file
from ipa_engine.artifact_store.store import FileSystemBundleStore
from ipa_engine.cli.config import RunConfig
from ipa_engine.cli.config import with_matrix_defaults
from ipa_engine.cli.manifest import StageTimer
from ipa_engine.evaluation import BlockNorm
from ipa_engine.evaluation import DimensionMismatchError
from ipa_engine.evaluation import block_permutation_index
from ipa_engine.evaluation import collapse_blocks
from ipa_engine.evaluation import global_transform
from ipa_engine.evaluation import hinton_export
from ipa_engine.evaluation import match_layouts
from ipa_engine.logs import logger_cli as logger
from ipa_engine.pipeline import SeparationChart
from ipa_engine.pipeline import SeparationPipeline
from ipa_engine.synth import draw_sources
from ipa_engine.synth import simulate
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'COMMANDS',
    'CommandOutput',
    'run_demo',
    'run_evaluate',
    'run_matrix_isa',
    'run_separate',
    'run_simulate',
]

Outputs = t.Dict[str, str]
Summary = t.Dict[str, t.Any]
CommandOutput = t.Tuple[Outputs, Summary]
Arguments = t.Dict[str, t.Any]


def _store(root: t.Union[str, Path], arguments: Arguments) -> FileSystemBundleStore:
    return FileSystemBundleStore(root, overwrite=bool(arguments.get('overwrite')))


def _simulate_dataset(config: RunConfig) -> Dataset:
    system, sources_spec, length = config.require_simulation()
    sources = draw_sources(sources_spec, length + system.effective_burn_in)
    observations, truth = simulate(system, sources, sources_spec.layout)
    return Dataset(observations=observations, truth=truth, sources_spec=sources_spec)


async def _fit(
    config: RunConfig,
    observations: TimeSeries,
    timer: StageTimer,
    store: FileSystemBundleStore,
) -> t.Tuple[SeparationPipeline, TimeSeries]:
    chart = SeparationChart(config=config.pipeline, artifact_store=store, event_managers=[timer])
    result = await chart.run(observations)
    result.raise_on_error()
    return result.value.pipeline, result.value.sources


def _index_summary(pipeline: SeparationPipeline, dataset: Dataset) -> Summary:
    try:
        transform = global_transform(pipeline, dataset.truth)
    except DimensionMismatchError as ex:
        logger.warning('Block permutation index skipped: %s', ex)
        return {'index': None, 'index_skipped': str(ex)}

    return {'index': block_permutation_index(transform)}


async def run_simulate(config: RunConfig, arguments: Arguments, timer: StageTimer) -> CommandOutput:
    timer.start('simulate')
    dataset = await anyio.to_thread.run_sync(_simulate_dataset, config)
    timer.stop('simulate')

    store = _store(arguments['out'], arguments)
    await save_dataset(store, dataset)

    outputs = {'dataset': str(store.root)}
    summary = {
        'length': dataset.observations.length,
        'dim': dataset.observations.dim,
        'layout': dataset.truth.layout.as_list(),
    }
    return outputs, summary


async def run_separate(config: RunConfig, arguments: Arguments, timer: StageTimer) -> CommandOutput:
    dataset = await load_dataset(FileSystemBundleStore(arguments['data']))
    out = Path(arguments['out'])

    pipeline_store = _store(out / 'pipeline', arguments)
    pipeline, sources = await _fit(config, dataset.observations, timer, pipeline_store)

    await save_pipeline(pipeline_store, pipeline)

    out_store = _store(out, arguments)
    await out_store.save('sources', sources, DataFormat.SERIES)

    summary = {'estimated_M': pipeline.partition.n_clusters, 'layout': pipeline.estimated_layout.as_list()}
    summary.update(pipeline.summary())

    if dataset.has_truth:
        summary.update(_index_summary(pipeline, dataset))

    outputs = {
        'pipeline': str(pipeline_store.root),
        'sources': str(out_store.path_of('sources', DataFormat.SERIES)),
    }
    return outputs, summary


async def run_evaluate(config: RunConfig, arguments: Arguments, timer: StageTimer) -> CommandOutput:
    pipeline = await load_pipeline(FileSystemBundleStore(arguments['pipeline']))
    dataset = await load_dataset(FileSystemBundleStore(arguments['data']))
    norm = BlockNorm(arguments.get('norm', BlockNorm.frobenius.value))

    transform = global_transform(pipeline, dataset.truth)
    match = match_layouts(transform.row_layout, transform.col_layout)

    metrics = {
        'index': block_permutation_index(transform, norm),
        'norm': norm.value,
        'layout_match': match.to_dict(),
        'estimated_layout': transform.row_layout.as_list(),
        'true_layout': transform.col_layout.as_list(),
        'collapsed': collapse_blocks(transform, norm).tolist() if match.multisets_equal else None,
    }

    store = _store(arguments['out'], arguments)
    await store.save('metrics', metrics, DataFormat.JSON)
    csv_path, sidecar = await hinton_export(transform, Path(arguments['out']) / 'hinton.csv')

    outputs = {
        'metrics': str(store.path_of('metrics', DataFormat.JSON)),
        'hinton': str(csv_path),
        'hinton_sidecar': str(sidecar),
    }
    summary = {key: metrics[key] for key in ('index', 'estimated_layout', 'true_layout')}
    summary['verdict'] = match.verdict.value
    return outputs, summary


def _load_observation_matrix(path: Path, columns_as_observations: bool) -> TimeSeries:
    matrix = read_matrix_file(path)
    return TimeSeries(matrix.T if columns_as_observations else matrix)


async def run_matrix_isa(config: RunConfig, arguments: Arguments, timer: StageTimer) -> CommandOutput:
    """
    ISA on an i.i.d. sample matrix: clusters of coordinates plus the observation-space image of every cluster
    """

    config = with_matrix_defaults(config)
    observations = await anyio.to_thread.run_sync(
        functools.partial(_load_observation_matrix, Path(arguments['matrix']), config.matrix.columns_as_observations),
    )
    out = Path(arguments['out'])

    pipeline_store = _store(out / 'pipeline', arguments)
    pipeline, sources = await _fit(config, observations, timer, pipeline_store)
    await save_pipeline(pipeline_store, pipeline)

    store = _store(out, arguments)
    mixing = pipeline.mixing_estimate
    layout = pipeline.estimated_layout
    groups = {
        'layout': layout.as_list(),
        'clusters': [list(cluster) for cluster in pipeline.partition.clusters],
        'components': [],
    }

    for index, block in enumerate(layout.blocks()):
        name = f'components/cluster_{index}'
        await store.save(name, np.ascontiguousarray(mixing[:, block]), DataFormat.MATRIX)
        groups['components'].append(str(store.path_of(name, DataFormat.MATRIX).relative_to(out)))

    await store.save('groups', groups, DataFormat.JSON)
    await store.save('sources', sources, DataFormat.SERIES)

    outputs = {
        'groups': str(store.path_of('groups', DataFormat.JSON)),
        'sources': str(store.path_of('sources', DataFormat.SERIES)),
        'pipeline': str(pipeline_store.root),
    }
    summary = {'estimated_M': pipeline.partition.n_clusters, 'layout': layout.as_list(), 'kept': pipeline.pca.kept}
    return outputs, summary


async def run_demo(config: RunConfig, arguments: Arguments, timer: StageTimer) -> CommandOutput:
    """
    simulate, separate and evaluate in one go, each into its own subdirectory of ``out``
    """

    out = Path(arguments['out'])
    dataset_dir = out / 'dataset'
    separation_dir = out / 'separation'
    overwrite = bool(arguments.get('overwrite'))

    sim_outputs, sim_summary = await run_simulate(config, {'out': dataset_dir, 'overwrite': overwrite}, timer)
    sep_outputs, sep_summary = await run_separate(
        config,
        {'data': dataset_dir, 'out': separation_dir, 'overwrite': overwrite},
        timer,
    )

    summary = {'simulate': sim_summary, 'separate': sep_summary}
    outputs = {**sim_outputs, **sep_outputs}

    if sep_summary.get('index') is not None:
        eval_outputs, eval_summary = await run_evaluate(
            config,
            {**arguments, 'pipeline': separation_dir / 'pipeline', 'data': dataset_dir, 'out': out / 'evaluation'},
            timer,
        )
        summary['evaluate'] = eval_summary
        outputs.update(eval_outputs)

    return outputs, summary


COMMANDS: t.Dict[str, t.Callable[[RunConfig, Arguments, StageTimer], t.Awaitable[CommandOutput]]] = {
    'simulate': run_simulate,
    'separate': run_separate,
    'evaluate': run_evaluate,
    'matrix-isa': run_matrix_isa,
    'demo': run_demo,
}
