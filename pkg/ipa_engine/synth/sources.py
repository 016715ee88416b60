import typing as t

import numpy as np

from ipa_engine.artifact_store.serializers import read_series_file
from ipa_engine.logs import logger_synth as logger
from ipa_engine.seeding import spawn_rngs
from ipa_engine.synth.enums import SourceFamily
from ipa_engine.synth.errors import SourceSampleError
from ipa_engine.synth.shapes import GLYPHS
from ipa_engine.synth.shapes import WIREFRAMES
from ipa_engine.synth.shapes import sample_hypercube_shell
from ipa_engine.synth.shapes import sample_on_segments
from ipa_engine.synth.specs import ComponentSource
from ipa_engine.synth.specs import SourceSpec
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'draw_component',
    'draw_sources',
]


def _standardize(samples: np.ndarray) -> np.ndarray:
    centered = samples - samples.mean(axis=0)
    scale = centered.std(axis=0)
    scale[scale == 0] = 1.0
    return centered / scale


def draw_component(component: ComponentSource, dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    Raw (unnormalized) i.i.d. samples of one component
    """

    if component.family is SourceFamily.glyph:
        return sample_on_segments(GLYPHS[component.shape or 'A'], count, rng)

    if component.family is SourceFamily.wireframe:
        return sample_on_segments(WIREFRAMES[component.shape or 'cube'], count, rng)

    if component.family is SourceFamily.hypercube_shell:
        return sample_hypercube_shell(dim, count, rng)

    pool = read_series_file(component.path).data
    if pool.shape[1] != dim:
        raise SourceSampleError(f'Sample file {component.path} has dimension {pool.shape[1]}, layout expects {dim}')

    return pool[rng.integers(0, pool.shape[0], size=count)]


def draw_sources(spec: SourceSpec, length: int) -> TimeSeries:
    """
    Draw the driving noise e(t): components are mutually independent, each from its own sub-stream of the seed,
    and every coordinate is standardized to zero mean and unit variance after generation.
    """

    if length < 1:
        raise SourceSampleError(f'Number of samples must be positive, got {length}')

    rngs = spawn_rngs(spec.seed, spec.layout.n_components, 'sources')
    blocks: t.List[np.ndarray] = []

    for dim, component, rng in zip(spec.layout.dims, spec.components, rngs):
        blocks.append(_standardize(draw_component(component, dim, length, rng)))

    logger.info('Drawn sources, layout=%s, length=%s, seed=%s', spec.layout.as_list(), length, spec.seed)
    return TimeSeries(np.hstack(blocks))
