import typing as t
from dataclasses import dataclass

import numpy as np

from ipa_engine.arfit import ArFit
from ipa_engine.arfit import OrderRule
from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.errors import BundleFormatError
from ipa_engine.artifact_store.store.base import ArtifactStore
from ipa_engine.const import DATASET_FORMAT_TAG
from ipa_engine.const import PIPELINE_FORMAT_TAG
from ipa_engine.errors import IpaError
from ipa_engine.isa import IcaStage
from ipa_engine.isa import Partition
from ipa_engine.isa import PcaStage
from ipa_engine.isa import SimilarityGraph
from ipa_engine.logs import logger_artifact_store as logger
from ipa_engine.pipeline import PipelineConfig
from ipa_engine.pipeline import SeparationPipeline
from ipa_engine.synth import GroundTruth
from ipa_engine.synth import SourceSpec
from ipa_engine.synth import SystemSpec
from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import MatrixPolynomial
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'MANIFEST',
    'Dataset',
    'load_dataset',
    'load_pipeline',
    'save_dataset',
    'save_pipeline',
]

MANIFEST = 'manifest'


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Observations, optionally with the ground truth and the specs they were simulated from
    """

    observations: TimeSeries
    truth: t.Optional[GroundTruth] = None
    sources_spec: t.Optional[SourceSpec] = None

    @property
    def has_truth(self) -> bool:
        return self.truth is not None


def _check_format(manifest: t.Any, expected: str) -> t.Dict[str, t.Any]:
    if not isinstance(manifest, dict) or manifest.get('format') != expected:
        found = manifest.get('format') if isinstance(manifest, dict) else type(manifest).__name__
        raise BundleFormatError(f'Expected a bundle in format {expected}, found {found}')

    return manifest


def _split_polynomial(stacked: np.ndarray, in_dim: int) -> MatrixPolynomial:
    if in_dim < 1 or stacked.shape[1] % in_dim:
        raise BundleFormatError(f'Stacked polynomial of shape {stacked.shape} does not split into {in_dim} columns')

    return MatrixPolynomial(tuple(np.hsplit(stacked, stacked.shape[1] // in_dim)))


def _row(vector: np.ndarray) -> np.ndarray:
    return np.asarray(vector, dtype=np.float64).reshape(1, -1)


async def save_dataset(store: ArtifactStore, dataset: Dataset) -> None:
    truth = dataset.truth
    manifest: t.Dict[str, t.Any] = {
        'format': DATASET_FORMAT_TAG,
        'observations': {'length': dataset.observations.length, 'dim': dataset.observations.dim},
        'has_truth': truth is not None,
        'sources': dataset.sources_spec.to_dict() if dataset.sources_spec is not None else None,
    }

    await store.save('observations', dataset.observations, DataFormat.SERIES)

    if truth is not None:
        manifest.update(
            system=truth.spec.to_dict(),
            layout=truth.layout.as_list(),
            burn_in=truth.burn_in,
        )
        await store.save('truth/sources', truth.sources, DataFormat.SERIES)
        await store.save('truth/mixing', truth.mixing, DataFormat.MATRIX)
        await store.save('truth/ar', truth.ar.stacked(), DataFormat.MATRIX)
        await store.save('truth/ma', truth.ma.stacked(), DataFormat.MATRIX)

    await store.save(MANIFEST, manifest, DataFormat.JSON)
    logger.info('Dataset bundle saved, store=%s, has_truth=%s', store, truth is not None)


async def load_dataset(store: ArtifactStore) -> Dataset:
    manifest = _check_format(await store.load(MANIFEST), DATASET_FORMAT_TAG)
    observations = await store.load('observations')

    try:
        sources_spec = SourceSpec.from_dict(manifest['sources']) if manifest.get('sources') else None

        if not manifest.get('has_truth'):
            return Dataset(observations=observations, sources_spec=sources_spec)

        spec = SystemSpec.from_dict(manifest['system'])
        truth = GroundTruth(
            mixing=await store.load('truth/mixing'),
            ar=_split_polynomial(await store.load('truth/ar'), spec.D_s),
            ma=_split_polynomial(await store.load('truth/ma'), spec.D_e),
            sources=await store.load('truth/sources'),
            layout=ComponentLayout(tuple(manifest['layout'])),
            spec=spec,
            burn_in=int(manifest['burn_in']),
        )

    except BundleFormatError:
        raise

    except (KeyError, TypeError, ValueError) as ex:
        raise BundleFormatError(f'Dataset manifest is incomplete or invalid: {ex!r}') from ex

    except IpaError as ex:
        raise BundleFormatError(f'Dataset manifest describes an invalid system: {ex}') from ex

    return Dataset(observations=observations, truth=truth, sources_spec=sources_spec)


async def save_pipeline(store: ArtifactStore, pipeline: SeparationPipeline) -> None:
    ar = pipeline.ar
    coeffs = np.hstack(ar.coeffs) if ar.order else np.zeros((ar.dim, 0))

    manifest = {
        'format': PIPELINE_FORMAT_TAG,
        'config': pipeline.config.to_dict(),
        'r': int(pipeline.r),
        'ar': {
            'order': ar.order,
            'rule': ar.rule.to_dict(),
            'criterion_trace': {str(order): score for order, score in ar.criterion_trace.items()},
            'spectral_radius': ar.spectral_radius,
            'n_obs': ar.n_obs,
        },
        'ica': {'convergence': list(pipeline.ica.convergence)},
        'partition': pipeline.partition.to_dict(),
        'has_graph': pipeline.graph is not None,
        'intermediates': sorted(pipeline.intermediates),
        'summary': pipeline.summary(),
    }

    matrices = {
        'ar/coeffs': coeffs,
        'ar/noise_cov': ar.noise_cov,
        'ar/mean': _row(ar.mean),
        'pca/mean': _row(pipeline.pca.mean),
        'pca/basis': pipeline.pca.basis,
        'pca/eigvals': _row(pipeline.pca.eigvals),
        'ica/rotation': pipeline.ica.rotation,
    }

    if pipeline.graph is not None:
        matrices['graph'] = pipeline.graph.weights

    for name, matrix in matrices.items():
        await store.save(name, matrix, DataFormat.MATRIX)

    for name, series in pipeline.intermediates.items():
        await store.save(f'series/{name}', series, DataFormat.SERIES)

    await store.save(MANIFEST, manifest, DataFormat.JSON)
    logger.info('Pipeline bundle saved, store=%s, layout=%s', store, pipeline.estimated_layout.as_list())


async def load_pipeline(store: ArtifactStore) -> SeparationPipeline:
    manifest = _check_format(await store.load(MANIFEST), PIPELINE_FORMAT_TAG)

    try:
        ar_meta = manifest['ar']
        coeffs = await store.load('ar/coeffs')
        mean = (await store.load('ar/mean')).reshape(-1)
        order = int(ar_meta['order'])

        ar = ArFit(
            order=order,
            coeffs=tuple(np.hsplit(coeffs, order)) if order else (),
            noise_cov=await store.load('ar/noise_cov'),
            mean=mean,
            criterion_trace={int(key): float(value) for key, value in ar_meta['criterion_trace'].items()},
            rule=OrderRule(**ar_meta['rule']),
            spectral_radius=float(ar_meta['spectral_radius']),
            n_obs=int(ar_meta['n_obs']),
        )
        pca = PcaStage(
            mean=(await store.load('pca/mean')).reshape(-1),
            basis=await store.load('pca/basis'),
            eigvals=(await store.load('pca/eigvals')).reshape(-1),
        )
        ica = IcaStage(
            rotation=await store.load('ica/rotation'),
            convergence=tuple(manifest['ica']['convergence']),
        )
        graph = SimilarityGraph(await store.load('graph')) if manifest.get('has_graph') else None
        intermediates = {name: await store.load(f'series/{name}') for name in manifest.get('intermediates', [])}

        return SeparationPipeline(
            r=int(manifest['r']),
            ar=ar,
            pca=pca,
            ica=ica,
            partition=Partition.from_dict(manifest['partition']),
            config=PipelineConfig.from_dict(manifest['config']),
            graph=graph,
            intermediates=intermediates,
        )

    except (KeyError, TypeError, ValueError) as ex:
        raise BundleFormatError(f'Pipeline manifest is incomplete or invalid: {ex!r}') from ex
