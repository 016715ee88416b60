import itertools
import typing as t

import numpy as np

from ipa_engine.isa.dependence import DependenceEstimator
from ipa_engine.isa.dependence import SimilarityGraph
from ipa_engine.isa.dependence import pairwise_dependence
from ipa_engine.isa.partition import Partition
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'graph_objective',
    'ipa_objective',
]


def _pair_weights(graph: SimilarityGraph, partition: Partition) -> t.Tuple[t.List[float], t.List[float]]:
    if partition.size != graph.size:
        raise ShapeError(f'Partition covers {partition.size} coordinates, graph has {graph.size}')

    within: t.List[float] = []
    between: t.List[float] = []

    for i, j in itertools.combinations(range(graph.size), 2):
        bucket = within if partition.assignment[i] == partition.assignment[j] else between
        bucket.append(float(graph.weights[i, j]))

    return within, between


def graph_objective(graph: SimilarityGraph, partition: Partition, normalized: bool = False) -> float:
    """
    Between-cluster dependence minus within-cluster dependence over unordered pairs, lower is better.

    The normalized form compares mean pair weights instead of sums, so partitions with different cluster counts
    can be ranked against each other; an empty pair set contributes 0.
    """

    within, between = _pair_weights(graph, partition)

    if normalized:
        return float((np.mean(between) if between else 0.0) - (np.mean(within) if within else 0.0))

    return float(sum(between) - sum(within))


def ipa_objective(
    series: TimeSeries,
    partition: Partition,
    estimator: t.Optional[DependenceEstimator] = None,
    normalized: bool = False,
) -> float:
    return graph_objective(pairwise_dependence(series, estimator), partition, normalized=normalized)
