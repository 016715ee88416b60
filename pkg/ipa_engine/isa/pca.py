import typing as t
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ipa_engine.isa.enums import DimRuleKind
from ipa_engine.isa.errors import AmbiguousEigenGapWarning
from ipa_engine.isa.errors import ConditioningError
from ipa_engine.isa.errors import InvalidRuleError
from ipa_engine.isa.rules import DimRule
from ipa_engine.logs import logger_isa as logger
from ipa_engine.tsmodel import InsufficientLengthError
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'AMBIGUOUS_GAP_RATIO',
    'FALLBACK_ENERGY',
    'PcaStage',
    'pca_whiten',
    'select_dimension',
]

AMBIGUOUS_GAP_RATIO = 2.0
FALLBACK_ENERGY = 0.99

_NULL_EIGENVALUE = 1e-12


@dataclass(frozen=True, eq=False)
class PcaStage:
    """
    Whitening x -> W_PCA (x - mean) onto the ``kept`` leading principal directions
    """

    mean: np.ndarray
    basis: np.ndarray
    eigvals: np.ndarray

    @property
    def kept(self) -> int:
        return self.basis.shape[0]

    @property
    def input_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def dewhitening(self) -> np.ndarray:
        """
        Right inverse of the basis, maps whitened coordinates back to the input space
        """

        return np.linalg.pinv(self.basis)

    def transform(self, series: TimeSeries) -> TimeSeries:
        if series.dim != self.input_dim:
            raise ShapeError(f'PCA stage expects dimension {self.input_dim}, got {series.dim}')

        return TimeSeries((series.data - self.mean) @ self.basis.T)


def _eigen_gap(positive: np.ndarray, total: int) -> t.Tuple[int, float]:
    """
    k maximizing eigvals[k-1] / eigvals[k]; numerically null eigenvalues behind the positive block make the gap
    at their border infinite
    """

    count = positive.shape[0]
    ratios = positive[:-1] / positive[1:]

    if count < total:
        ratios = np.append(ratios, np.inf)

    if not ratios.size:
        return count, np.inf

    best = int(np.argmax(ratios))
    return best + 1, float(ratios[best])


def _energy(eigvals: np.ndarray, tau: float) -> int:
    share = np.cumsum(eigvals) / eigvals.sum()
    return int(np.searchsorted(share, tau - 1e-12) + 1)


def select_dimension(eigvals: np.ndarray, rule: DimRule) -> int:
    """
    Number of kept directions for a descending eigenvalue list
    """

    if eigvals.size == 0 or eigvals[0] <= 0.0:
        raise ConditioningError('Covariance has no positive eigenvalue')

    positive = eigvals[eigvals > _NULL_EIGENVALUE * eigvals[0]]

    if rule.kind is DimRuleKind.fixed:
        if rule.value > eigvals.shape[0]:
            raise InvalidRuleError(f'Cannot keep {rule.value} directions out of {eigvals.shape[0]}')
        return rule.value

    if rule.kind is DimRuleKind.energy:
        return min(_energy(positive, rule.value), positive.shape[0])

    kept, ratio = _eigen_gap(positive, eigvals.shape[0])
    if ratio < AMBIGUOUS_GAP_RATIO:
        logger.warning(
            'No clear eigenvalue gap, largest ratio=%.3f; falling back to energy(%s)', ratio, FALLBACK_ENERGY,
        )
        warnings.warn(
            f'Largest eigenvalue ratio {ratio:.3f} is below {AMBIGUOUS_GAP_RATIO}, using energy({FALLBACK_ENERGY})',
            AmbiguousEigenGapWarning,
            stacklevel=3,
        )
        return min(_energy(positive, FALLBACK_ENERGY), positive.shape[0])

    return kept


def pca_whiten(series: TimeSeries, rule: t.Optional[DimRule] = None) -> t.Tuple[PcaStage, TimeSeries]:
    """
    Whiten ``series`` with PCA and reduce it to the latent dimension chosen by ``rule``.

    Works from the thin SVD of the centered sample, so matrices with more coordinates than samples are fine.
    The output has identity sample covariance on the fitting sample.
    """

    rule = rule if rule is not None else DimRule.eigen_gap()

    if series.length < 2:  # noqa: PLR2004
        raise InsufficientLengthError('PCA needs at least two samples')

    mean = series.mean()
    centered = series.data - mean

    _, singular, right = scipy.linalg.svd(centered, full_matrices=False)
    eigvals = singular ** 2 / series.length
    eigvals = np.concatenate([eigvals, np.zeros(series.dim - eigvals.shape[0])])

    kept = select_dimension(eigvals, rule)

    if eigvals[kept - 1] <= _NULL_EIGENVALUE * eigvals[0]:
        raise ConditioningError(
            f'Direction {kept} has variance {eigvals[kept - 1]:.3e}, covariance is numerically rank deficient',
        )

    basis = right[:kept] / np.sqrt(eigvals[:kept])[:, None]
    stage = PcaStage(mean=mean, basis=basis, eigvals=eigvals)

    logger.info('PCA whitening, rule=%s, kept=%s of %s', rule.kind.value, kept, series.dim)
    return stage, TimeSeries(centered @ basis.T)
