import typing as t
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from ipa_engine.arfit import ArFit
from ipa_engine.arfit import innovation
from ipa_engine.isa import IcaStage
from ipa_engine.isa import Partition
from ipa_engine.isa import PcaStage
from ipa_engine.isa import SimilarityGraph
from ipa_engine.logs import logger_pipeline as logger
from ipa_engine.pipeline.config import PipelineConfig
from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import DifferenceOrder
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import difference

__all__ = [
    'Fitted',
    'SeparationOutcome',
    'SeparationPipeline',
    'apply',
]


class Fitted(t.NamedTuple):
    """
    A fitted stage together with its output on the fitting sample
    """

    model: t.Any
    series: TimeSeries


@dataclass(frozen=True, eq=False)
class SeparationPipeline:
    """
    The fitted cascade P W_ICA W_PCA W_AR[z] grad^r[z].

    Immutable once fitted and safe to share between threads; ``apply`` runs it on new observations.
    """

    r: DifferenceOrder
    ar: ArFit
    pca: PcaStage
    ica: IcaStage
    partition: Partition
    config: PipelineConfig
    graph: t.Optional[SimilarityGraph] = None
    intermediates: t.Dict[str, TimeSeries] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'r', DifferenceOrder.of(self.r))

        if self.ar.dim != self.pca.input_dim:
            raise ShapeError(f'AR stage is {self.ar.dim}-dimensional, PCA expects {self.pca.input_dim}')

        if self.pca.kept != self.ica.dim or self.ica.dim != self.partition.size:
            raise ShapeError(
                f'Stage dimensions do not chain: PCA keeps {self.pca.kept}, ICA rotates {self.ica.dim}, '
                f'partition covers {self.partition.size}',
            )

    @property
    def input_dim(self) -> int:
        return self.ar.dim

    @property
    def output_dim(self) -> int:
        return self.pca.kept

    @property
    def estimated_layout(self) -> ComponentLayout:
        return self.partition.layout

    @property
    def demixing_matrix(self) -> np.ndarray:
        """
        P W_ICA W_PCA, maps innovations (after the AR mean) to the estimated sources
        """

        return self.partition.permutation @ self.ica.rotation @ self.pca.basis

    @property
    def mixing_estimate(self) -> np.ndarray:
        return np.linalg.pinv(self.demixing_matrix)

    def sources_from_unmixed(self, unmixed: TimeSeries) -> TimeSeries:
        return TimeSeries(unmixed.data[:, self.partition.order])

    def apply(self, series: TimeSeries) -> TimeSeries:
        return apply(self, series)

    def summary(self) -> t.Dict[str, t.Any]:
        return {
            'r': int(self.r),
            'ar_order': self.ar.order,
            'ar_spectral_radius': self.ar.spectral_radius,
            'kept': self.pca.kept,
            'ica_sweeps': self.ica.sweeps,
            'n_clusters': self.partition.n_clusters,
            'estimated_layout': self.estimated_layout.as_list(),
        }


@dataclass(frozen=True, eq=False)
class SeparationOutcome:
    pipeline: SeparationPipeline
    sources: TimeSeries


def apply(pipeline: SeparationPipeline, series: TimeSeries) -> TimeSeries:
    """
    Run the fitted cascade on ``series`` without refitting; the output has ``T - r - ar.order`` rows
    """

    if series.dim != pipeline.input_dim:
        raise ShapeError(f'Pipeline expects dimension {pipeline.input_dim}, got {series.dim}')

    whitened = pipeline.pca.transform(innovation(difference(series, int(pipeline.r)), pipeline.ar))
    estimated = pipeline.sources_from_unmixed(pipeline.ica.transform(whitened))

    logger.debug('Applied pipeline, input=%s, output=%s', series.length, estimated.length)
    return estimated
