import dataclasses
import typing as t

from ipa_engine.arfit import ArFit
from ipa_engine.arfit import fit_ar
from ipa_engine.arfit import innovation
from ipa_engine.isa import Partition
from ipa_engine.isa import SimilarityGraph
from ipa_engine.isa import ica
from ipa_engine.isa import ncut_cluster
from ipa_engine.isa import pairwise_dependence
from ipa_engine.isa import pca_whiten
from ipa_engine.logs import logger_stages as logger
from ipa_engine.pipeline.marks import Input
from ipa_engine.pipeline.model import Fitted
from ipa_engine.pipeline.model import SeparationOutcome
from ipa_engine.pipeline.model import SeparationPipeline
from ipa_engine.pipeline.stage import StageBase
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import difference

__all__ = [
    'ArFitting',
    'Assembly',
    'Clustering',
    'DependenceGraph',
    'Differencing',
    'InnovationEstimate',
    'Observations',
    'Unmixing',
    'Whitening',
]


class Observations(StageBase[TimeSeries]):
    name = 'observations'
    verbose_name = 'Observations'

    def process(self, x: TimeSeries) -> TimeSeries:
        if not isinstance(x, TimeSeries):
            x = TimeSeries(x)

        logger.info('Observations, length=%s, dim=%s', x.length, x.dim)
        return x


class Differencing(StageBase[TimeSeries]):
    name = 'differencing'
    verbose_name = 'Differencing'

    def process(self, x: Input(Observations)) -> TimeSeries:
        return difference(x, self.config.r)


class ArFitting(StageBase[ArFit]):
    name = 'ar_fit'
    verbose_name = 'AR fit'

    def process(self, u: Input(Differencing)) -> ArFit:
        return fit_ar(u, self.config.max_ar_order, self.config.order_rule, min_order=self.config.min_ar_order)


class InnovationEstimate(StageBase[TimeSeries]):
    name = 'innovation'
    verbose_name = 'Innovation'

    def process(self, u: Input(Differencing), fit: Input(ArFitting)) -> TimeSeries:
        return innovation(u, fit)


class Whitening(StageBase[Fitted]):
    name = 'whitening'
    verbose_name = 'PCA whitening'

    def process(self, innovations: Input(InnovationEstimate)) -> Fitted:
        return Fitted(*pca_whiten(innovations, self.config.dim_rule))


class Unmixing(StageBase[Fitted]):
    name = 'unmixing'
    verbose_name = 'ICA'

    def process(self, whitened: Input(Whitening)) -> Fitted:
        return Fitted(
            *ica(
                whitened.series,
                max_sweeps=self.config.max_sweeps,
                tol=self.config.tolerance,
                seed=self.config.stage_seed('ica'),
            ),
        )


class DependenceGraph(StageBase[SimilarityGraph]):
    name = 'dependence'
    verbose_name = 'Pairwise dependence'

    def process(self, unmixed: Input(Unmixing)) -> SimilarityGraph:
        estimator = self.config.estimator
        if dataclasses.is_dataclass(estimator) and 'seed' in {item.name for item in dataclasses.fields(estimator)}:
            estimator = dataclasses.replace(estimator, seed=self.config.stage_seed('kcca'))

        return pairwise_dependence(unmixed.series, estimator)


class Clustering(StageBase[Partition]):
    name = 'clustering'
    verbose_name = 'Ncut clustering'

    def process(self, graph: Input(DependenceGraph)) -> Partition:
        return ncut_cluster(
            graph,
            self.config.cluster_rule,
            seed=self.config.stage_seed('ncut'),
            restarts=self.config.restarts,
        )


class Assembly(StageBase[SeparationOutcome]):
    name = 'assembly'
    verbose_name = 'Assembly'

    def process(
        self,
        fit: Input(ArFitting),
        whitened: Input(Whitening),
        unmixed: Input(Unmixing),
        graph: Input(DependenceGraph),
        partition: Input(Clustering),
        u: Input(Differencing),
        innovations: Input(InnovationEstimate),
    ) -> SeparationOutcome:
        intermediates: t.Dict[str, TimeSeries] = {}

        if self.config.retain_series:
            intermediates = {
                'differenced': u,
                'innovation': innovations,
                'whitened': whitened.series,
                'unmixed': unmixed.series,
            }

        pipeline = SeparationPipeline(
            r=self.config.r,
            ar=fit,
            pca=whitened.model,
            ica=unmixed.model,
            partition=partition,
            config=self.config,
            graph=graph,
            intermediates=intermediates,
        )

        logger.info('Assembled pipeline, %s', pipeline.summary())
        return SeparationOutcome(pipeline=pipeline, sources=pipeline.sources_from_unmixed(unmixed.series))
