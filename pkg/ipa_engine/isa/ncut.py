import typing as t

import networkx as nx
import numpy as np
import scipy.linalg

from ipa_engine.isa.dependence import SimilarityGraph
from ipa_engine.isa.enums import ClusterRuleKind
from ipa_engine.isa.errors import DisconnectedGraphError
from ipa_engine.isa.errors import InvalidRuleError
from ipa_engine.isa.objective import graph_objective
from ipa_engine.isa.partition import Partition
from ipa_engine.isa.rules import ClusterRule
from ipa_engine.logs import logger_isa as logger
from ipa_engine.parallelism import threads_pool_registry
from ipa_engine.seeding import Seed
from ipa_engine.seeding import spawn_rngs

__all__ = [
    'DEFAULT_RESTARTS',
    'GAP_CANDIDATES',
    'GAP_TIE_TOLERANCE',
    'connected_components',
    'ncut_cluster',
    'ncut_value',
]

DEFAULT_RESTARTS = 20
GAP_CANDIDATES = 3
GAP_TIE_TOLERANCE = 0.2

_MAX_DISCRETIZATION_STEPS = 100
_LAPLACIAN_UPPER_BOUND = 2.0


def ncut_value(graph: SimilarityGraph, assignment: t.Sequence[int]) -> float:
    """
    Normalized cut sum_m cut(V_m, rest) / vol(V_m); clusters with zero volume contribute nothing
    """

    weights = graph.weights
    labels = np.asarray(assignment)
    degrees = weights.sum(axis=1)
    value = 0.0

    for label in np.unique(labels):
        members = labels == label
        volume = degrees[members].sum()

        if volume > 0:
            value += weights[np.ix_(members, ~members)].sum() / volume

    return float(value)


def connected_components(graph: SimilarityGraph) -> t.List[t.List[int]]:
    network = nx.Graph()
    network.add_nodes_from(range(graph.size))
    network.add_edges_from(zip(*np.nonzero(np.triu(graph.weights) > 0)))

    return sorted((sorted(component) for component in nx.connected_components(network)), key=lambda c: c[0])


def _normalized_laplacian(weights: np.ndarray) -> np.ndarray:
    degrees = weights.sum(axis=1)
    inv_sqrt = np.zeros_like(degrees)
    inv_sqrt[degrees > 0] = 1.0 / np.sqrt(degrees[degrees > 0])

    return np.diag((degrees > 0).astype(np.float64)) - inv_sqrt[:, None] * weights * inv_sqrt[None, :]


def _discretize(embedding: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """
    Alternate between the nearest indicator matrix and the best rotation of the embedding onto it.
    """

    count, k = embedding.shape
    rotation = np.zeros((k, k))
    rotation[:, 0] = embedding[rng.integers(count)]

    closeness = np.zeros(count)
    for column in range(1, k):
        closeness += np.abs(embedding @ rotation[:, column - 1])
        rotation[:, column] = embedding[int(np.argmin(closeness))]

    last_value = 0.0
    labels = np.zeros(count, dtype=int)

    for _ in range(_MAX_DISCRETIZATION_STEPS):
        labels = np.argmax(embedding @ rotation, axis=1)
        indicator = np.zeros((count, k))
        indicator[np.arange(count), labels] = 1.0

        left, singular, right = scipy.linalg.svd(indicator.T @ embedding)
        value = 2.0 * (count - singular.sum())

        if abs(value - last_value) < np.finfo(float).eps:
            break

        last_value = value
        rotation = (left @ right).T

    return labels


def _spectral_partition(
    graph: SimilarityGraph,
    eigvecs: np.ndarray,
    k: int,
    restarts: int,
    seed: Seed,
) -> Partition:
    embedding = eigvecs[:, :k].copy()
    norms = np.linalg.norm(embedding, axis=1)
    norms[norms == 0] = 1.0
    embedding /= norms[:, None]

    rngs = spawn_rngs(seed, restarts, 'ncut', str(k))
    candidates = threads_pool_registry.map_ordered(lambda rng: _discretize(embedding, rng), rngs)

    def rank(item: t.Tuple[int, np.ndarray]) -> t.Tuple[bool, float, int]:
        index, labels = item
        return len(np.unique(labels)) != k, ncut_value(graph, labels), index

    _, best = min(enumerate(candidates), key=rank)
    return Partition.from_labels(best)


def ncut_cluster(
    graph: SimilarityGraph,
    rule: t.Optional[ClusterRule] = None,
    seed: Seed = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> Partition:
    """
    Spectral normalized-cut clustering of the dependence graph.

    The cluster count is ``fixed(M)`` or the largest eigengap of the normalized Laplacian in the admissible range
    (never fewer clusters than connected components); candidate counts whose gaps are nearly tied are decided by
    the normalized ISA objective. When the count equals the number of components, the components are the answer.
    """

    rule = rule if rule is not None else ClusterRule.eigengap()
    size = graph.size
    limit = rule.limit(size)

    if limit > size:
        raise InvalidRuleError(f'Cannot form {limit} clusters out of {size} coordinates')

    if restarts < 1:
        raise InvalidRuleError(f'Ncut needs at least one restart, got {restarts}')

    components = connected_components(graph)
    if len(components) > limit:
        raise DisconnectedGraphError(components, limit)

    eigvals, eigvecs = scipy.linalg.eigh(_normalized_laplacian(graph.weights))
    spectrum = np.append(eigvals, _LAPLACIAN_UPPER_BOUND)
    cache: t.Dict[int, Partition] = {}

    def candidate(count: int) -> Partition:
        if count not in cache:
            cache[count] = _candidate(graph, components, eigvecs, count, restarts, seed)
        return cache[count]

    if rule.kind is ClusterRuleKind.fixed:
        k = rule.count
    else:
        counts = list(range(len(components), limit + 1))
        gaps = {count: float(spectrum[count] - spectrum[count - 1]) for count in counts}
        ranked = sorted(counts, key=lambda count: (-gaps[count], count))[:GAP_CANDIDATES]
        tied = [count for count in ranked if gaps[count] >= (1.0 - GAP_TIE_TOLERANCE) * gaps[ranked[0]]]

        if len(tied) == 1:
            k = tied[0]
        else:
            scored = {count: graph_objective(graph, candidate(count), normalized=True) for count in tied}
            k = min(tied, key=lambda count: (scored[count], -gaps[count], count))

        logger.debug('Eigengap candidates=%s, gaps=%s, chosen=%s', ranked, [gaps[c] for c in ranked], k)

    partition = candidate(k)
    logger.info('Ncut clustering, clusters=%s, layout=%s', partition.n_clusters, partition.layout.as_list())
    return partition


def _candidate(
    graph: SimilarityGraph,
    components: t.List[t.List[int]],
    eigvecs: np.ndarray,
    k: int,
    restarts: int,
    seed: Seed,
) -> Partition:
    if k == len(components):
        return Partition.from_clusters(components)

    if k == graph.size:
        return Partition(tuple(range(graph.size)))

    return _spectral_partition(graph, eigvecs, k, restarts, seed)
