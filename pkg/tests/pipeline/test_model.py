import typing as t

import numpy as np
import pytest

from ipa_engine.arfit import OrderRule
from ipa_engine.isa import AbsCorrEstimator
from ipa_engine.isa import ClusterRule
from ipa_engine.isa import DimRule
from ipa_engine.isa import InvalidRuleError
from ipa_engine.isa import Partition
from ipa_engine.pipeline import PipelineConfig
from ipa_engine.pipeline import SeparationPipeline
from ipa_engine.pipeline import separate
from ipa_engine.synth import GroundTruth
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries


@pytest.fixture
def fitted(
    isa_observations: t.Tuple[TimeSeries, GroundTruth],
    isa_config: PipelineConfig,
) -> t.Tuple[SeparationPipeline, TimeSeries, TimeSeries]:
    x, _ = isa_observations
    pipeline, sources = separate(x, isa_config)
    return pipeline, sources, x


def test_apply_reproduces_fitting_output(fitted: t.Tuple[SeparationPipeline, TimeSeries, TimeSeries]) -> None:
    pipeline, sources, x = fitted

    assert pipeline.apply(x).allclose(sources, atol=1e-8)


def test_apply_rejects_other_dimensions(fitted: t.Tuple[SeparationPipeline, TimeSeries, TimeSeries]) -> None:
    pipeline, _, _ = fitted

    with pytest.raises(ShapeError):
        pipeline.apply(TimeSeries(np.zeros((100, 3))))


def test_demixing_and_mixing_estimate(fitted: t.Tuple[SeparationPipeline, TimeSeries, TimeSeries]) -> None:
    pipeline, sources, x = fitted

    assert pipeline.demixing_matrix.shape == (4, 4)
    np.testing.assert_allclose(pipeline.demixing_matrix @ pipeline.mixing_estimate, np.eye(4), atol=1e-8)
    np.testing.assert_allclose(
        (x.data - pipeline.ar.mean) @ pipeline.demixing_matrix.T - pipeline.pca.mean @ pipeline.demixing_matrix.T,
        sources.data,
        atol=1e-8,
    )


def test_stage_dimensions_must_chain(fitted: t.Tuple[SeparationPipeline, TimeSeries, TimeSeries]) -> None:
    pipeline, _, _ = fitted

    with pytest.raises(ShapeError):
        SeparationPipeline(
            r=0,
            ar=pipeline.ar,
            pca=pipeline.pca,
            ica=pipeline.ica,
            partition=Partition((0, 0, 1)),
            config=pipeline.config,
        )


def test_config_dict_round_trip() -> None:
    config = PipelineConfig(
        r=2,
        max_ar_order=4,
        order_rule=OrderRule.aic(),
        dim_rule=DimRule.energy(0.95),
        estimator=AbsCorrEstimator(),
        cluster_rule=ClusterRule.fixed(3),
        seed=42,
    )

    assert PipelineConfig.from_dict(config.to_dict()) == config
    assert config.with_seed(7).seed == 7
    assert config.stage_seed('ica') != config.with_seed(7).stage_seed('ica')


@pytest.mark.parametrize(
    'kwargs',
    [dict(min_ar_order=3, max_ar_order=2), dict(max_sweeps=0), dict(restarts=0), dict(tolerance=0.0)],
)
def test_config_validation(kwargs: dict) -> None:
    with pytest.raises(InvalidRuleError):
        PipelineConfig(**kwargs)
