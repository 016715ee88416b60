import logging
import typing as t

import numpy as np
import pytest

from ipa_engine import logs
from ipa_engine.arfit import OrderRule
from ipa_engine.isa import ClusterRule
from ipa_engine.isa import DimRule
from ipa_engine.parallelism import threads_pool_registry
from ipa_engine.pipeline import PipelineConfig
from ipa_engine.synth import GroundTruth
from ipa_engine.synth import SourceSpec
from ipa_engine.synth import SystemSpec
from ipa_engine.synth import draw_sources
from ipa_engine.synth import simulate
from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import TimeSeries


def pytest_sessionstart(session):  # noqa
    threads_pool_registry.auto_init(4)


@pytest.fixture
def get_loggers() -> t.Tuple[logging.Logger, ...]:
    return (
        logs.logger_arfit,
        logs.logger_isa,
        logs.logger_pipeline,
        logs.logger_stages,
        logs.logger_evaluation,
    )


@pytest.fixture
def caplog_debug(caplog: pytest.LogCaptureFixture, get_loggers: t.Tuple[logging.Logger]) -> pytest.LogCaptureFixture:

    for logger in get_loggers:
        logger.addHandler(caplog.handler)

    log_level = logging.getLevelName(logging.root.level)
    caplog.set_level(logging.DEBUG)

    yield caplog

    caplog.set_level(log_level)
    for logger in get_loggers:
        logger.removeHandler(caplog.handler)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def isa_layout() -> ComponentLayout:
    return ComponentLayout((2, 2))


@pytest.fixture
def isa_observations(isa_layout: ComponentLayout) -> t.Tuple[TimeSeries, GroundTruth]:
    """
    Plain ISA: two 2D glyph sources mixed by a random orthogonal 4x4 matrix, no dynamics
    """

    spec = SystemSpec(p=0, q=0, r=0, D_x=4, D_s=4, D_e=4, seed=3, burn_in=0)
    sources = draw_sources(SourceSpec.default(isa_layout, seed=3), 6000)
    return simulate(spec, sources, isa_layout)


@pytest.fixture
def isa_config() -> PipelineConfig:
    return PipelineConfig(
        min_ar_order=0,
        max_ar_order=0,
        order_rule=OrderRule.fixed(0),
        dim_rule=DimRule.fixed(4),
        cluster_rule=ClusterRule.eigengap(),
        max_sweeps=1000,
        restarts=5,
        seed=11,
    )
