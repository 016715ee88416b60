import itertools
import threading
import typing as t
from dataclasses import dataclass

import cachetools
import numpy as np
import scipy.linalg
from scipy.spatial.distance import pdist

from ipa_engine.artifact_store.serializers import table_to_csv
from ipa_engine.isa.enums import EstimatorKind
from ipa_engine.isa.errors import DegenerateCoordinateError
from ipa_engine.isa.errors import InvalidGraphError
from ipa_engine.isa.errors import InvalidRuleError
from ipa_engine.logs import logger_isa as logger
from ipa_engine.parallelism import threads_pool_registry
from ipa_engine.seeding import Seed
from ipa_engine.seeding import make_rng
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'AbsCorrEstimator',
    'DependenceEstimator',
    'KccaEstimator',
    'SimilarityGraph',
    'estimator_from_dict',
    'incomplete_cholesky',
    'pairwise_dependence',
]

_MAX_FACTOR_RANK = 200


@dataclass(frozen=True, eq=False)
class SimilarityGraph:
    """
    Symmetric nonnegative pairwise dependence weights over the ICA coordinates, zero diagonal
    """

    weights: np.ndarray

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=np.float64, copy=True)

        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:  # noqa: PLR2004
            raise InvalidGraphError(f'Similarity weights must be a square matrix, got shape {weights.shape}')

        if not np.isfinite(weights).all() or (weights < 0).any():
            raise InvalidGraphError('Similarity weights must be finite and nonnegative')

        if np.max(np.abs(weights - weights.T), initial=0.0) > 1e-12:  # noqa: PLR2004
            raise InvalidGraphError('Similarity weights must be symmetric')

        np.fill_diagonal(weights, 0.0)
        weights.setflags(write=False)
        object.__setattr__(self, 'weights', weights)

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    def to_csv(self) -> str:
        return table_to_csv(self.weights)


class DependenceEstimator(t.Protocol):
    kind: t.ClassVar[EstimatorKind]

    def prepare(self, data: np.ndarray) -> t.Callable[[int, int], float]:
        ...

    def to_dict(self) -> t.Dict[str, t.Any]:
        ...


def incomplete_cholesky(points: np.ndarray, sigma: float, eta: float, max_rank: int = _MAX_FACTOR_RANK) -> np.ndarray:
    """
    Pivoted incomplete Cholesky factor G (N x r) of the Gaussian kernel matrix, K ~ G G'.

    Stops once the trace of the residual K - G G' drops to ``eta`` or the rank cap is hit.
    """

    count = points.shape[0]
    max_rank = min(max_rank, count)
    factor = np.zeros((count, max_rank))
    residual = np.ones(count)
    scale = -0.5 / sigma ** 2

    rank = 0
    while rank < max_rank and residual.sum() > eta:
        pivot = int(np.argmax(residual))
        pivot_value = np.sqrt(residual[pivot])

        column = np.exp(scale * (points - points[pivot]) ** 2)
        column -= factor[:, :rank] @ factor[pivot, :rank]

        factor[:, rank] = column / pivot_value
        factor[pivot, rank] = pivot_value
        residual = np.maximum(residual - factor[:, rank] ** 2, 0.0)
        rank += 1

    return factor[:, :rank]


@dataclass(frozen=True)
class KccaEstimator:
    """
    First regularized kernel canonical correlation with Gaussian kernels.

    ``sigma=None`` picks the median pairwise distance of each coordinate's samples; the ridge is ``kappa * N``
    for N subsampled points, shared by all coordinates.
    """

    kind: t.ClassVar[EstimatorKind] = EstimatorKind.kcca

    sigma: t.Optional[float] = None
    kappa: float = 2e-2
    eta: float = 1e-4
    max_samples: int = 2000
    seed: Seed = 0

    def __post_init__(self) -> None:
        if self.sigma is not None and self.sigma <= 0:
            raise InvalidRuleError(f'Kernel width must be positive, got {self.sigma}')

        if self.kappa <= 0 or self.eta <= 0 or self.max_samples < 2:  # noqa: PLR2004
            raise InvalidRuleError('KCCA needs kappa > 0, eta > 0 and max_samples >= 2')

    def _width(self, points: np.ndarray) -> float:
        if self.sigma is not None:
            return self.sigma

        width = float(np.median(pdist(points[:, None])))
        return width if width > 0 else float(np.std(points)) or 1.0

    def _spectrum(self, points: np.ndarray) -> t.Tuple[np.ndarray, np.ndarray]:
        """
        Left singular vectors of the centered factor and their shrinkage lambda / (lambda + N kappa)
        """

        factor = incomplete_cholesky(points, self._width(points), self.eta)
        factor = factor - factor.mean(axis=0)

        vectors, singular, _ = scipy.linalg.svd(factor, full_matrices=False)
        eigvals = singular ** 2
        keep = eigvals > 1e-12 * max(eigvals.max(initial=0.0), 1e-300)

        shrink = eigvals[keep] / (eigvals[keep] + self.kappa * points.shape[0])
        return vectors[:, keep], shrink

    def prepare(self, data: np.ndarray) -> t.Callable[[int, int], float]:
        length = data.shape[0]
        indices = np.arange(length)

        if length > self.max_samples:
            indices = np.sort(make_rng(self.seed, 'kcca-subsample').choice(length, self.max_samples, replace=False))

        sample = data[indices]
        lock = threading.RLock()

        @cachetools.cached(cache=cachetools.LRUCache(maxsize=max(data.shape[1], 1)), lock=lock)
        def spectrum(index: int) -> t.Tuple[np.ndarray, np.ndarray]:
            return self._spectrum(sample[:, index])

        def weight(i: int, j: int) -> float:
            vectors_i, shrink_i = spectrum(i)
            vectors_j, shrink_j = spectrum(j)

            if not shrink_i.size or not shrink_j.size:
                return 0.0

            coupling = (shrink_i[:, None] * (vectors_i.T @ vectors_j)) * shrink_j[None, :]
            return float(min(scipy.linalg.svdvals(coupling)[0], 1.0))

        return weight

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'kind': self.kind.value,
            'sigma': self.sigma,
            'kappa': self.kappa,
            'eta': self.eta,
            'max_samples': self.max_samples,
            'seed': self.seed,
        }


@dataclass(frozen=True)
class AbsCorrEstimator:
    """
    |corr(|y_i|, |y_j|)|, a cheap proxy for dependence between uncorrelated coordinates
    """

    kind: t.ClassVar[EstimatorKind] = EstimatorKind.abs_corr

    def prepare(self, data: np.ndarray) -> t.Callable[[int, int], float]:
        magnitudes = np.abs(data - data.mean(axis=0))
        magnitudes = magnitudes - magnitudes.mean(axis=0)
        norms = np.linalg.norm(magnitudes, axis=0)
        norms[norms == 0] = 1.0
        standardized = magnitudes / norms

        def weight(i: int, j: int) -> float:
            return float(abs(standardized[:, i] @ standardized[:, j]))

        return weight

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'kind': self.kind.value}


def estimator_from_dict(payload: t.Optional[t.Dict[str, t.Any]]) -> DependenceEstimator:
    payload = dict(payload or {'kind': EstimatorKind.kcca.value})

    try:
        kind = EstimatorKind(payload.pop('kind', EstimatorKind.kcca.value))
    except ValueError as ex:
        raise InvalidRuleError(f'Unknown dependence estimator: {ex}') from ex

    if kind is EstimatorKind.abs_corr:
        return AbsCorrEstimator()

    try:
        return KccaEstimator(**payload)
    except TypeError as ex:
        raise InvalidRuleError(f'Invalid KCCA parameters: {ex}') from ex


def pairwise_dependence(series: TimeSeries, estimator: t.Optional[DependenceEstimator] = None) -> SimilarityGraph:
    """
    Dependence weight of every unordered coordinate pair, computed once per pair and mirrored
    """

    estimator = estimator if estimator is not None else KccaEstimator()
    data = series.data

    if series.dim < 2:  # noqa: PLR2004
        raise ShapeError(f'Pairwise dependence needs at least two coordinates, got {series.dim}')

    spread = np.ptp(data, axis=0)
    for index in range(series.dim):
        if spread[index] == 0.0:
            raise DegenerateCoordinateError(index)

    weight = estimator.prepare(data)
    pairs = list(itertools.combinations(range(series.dim), 2))
    values = threads_pool_registry.map_ordered(lambda pair: weight(*pair), pairs)

    weights = np.zeros((series.dim, series.dim))
    for (i, j), value in zip(pairs, values):
        weights[i, j] = weights[j, i] = max(value, 0.0)

    logger.info('Dependence graph, estimator=%s, pairs=%s', estimator.kind.value, len(pairs))
    return SimilarityGraph(weights)
