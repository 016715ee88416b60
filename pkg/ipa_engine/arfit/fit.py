import typing as t
import warnings
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import scipy.linalg

from ipa_engine.arfit.errors import IllConditionedError
from ipa_engine.arfit.errors import InvalidOrderRuleError
from ipa_engine.arfit.errors import NearUnitRootWarning
from ipa_engine.arfit.rules import OrderRule
from ipa_engine.logs import logger_arfit as logger
from ipa_engine.parallelism import threads_pool_registry
from ipa_engine.tsmodel import BoundaryPolicy
from ipa_engine.tsmodel import InsufficientLengthError
from ipa_engine.tsmodel import MatrixPolynomial
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import apply_polynomial
from ipa_engine.tsmodel import ar_spectral_radius

__all__ = [
    'CONDITION_LIMIT',
    'NOISE_FLOOR',
    'RANK_TOLERANCE',
    'UNIT_ROOT_THRESHOLD',
    'ArFit',
    'fit_ar',
    'innovation',
]

CONDITION_LIMIT = 1e12
RANK_TOLERANCE = 1e-10
NOISE_FLOOR = 1e-12
UNIT_ROOT_THRESHOLD = 0.99


@dataclass(frozen=True, eq=False)
class ArFit:
    """
    Least squares AR model u(t) = sum A_i u(t - i) + eps(t) of a centered series
    """

    order: int
    coeffs: t.Tuple[np.ndarray, ...]
    noise_cov: np.ndarray
    mean: np.ndarray
    criterion_trace: t.Dict[int, float] = field(default_factory=dict)
    rule: OrderRule = field(default_factory=OrderRule)
    spectral_radius: float = 0.0
    n_obs: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, 'coeffs', tuple(np.asarray(coeff, dtype=np.float64) for coeff in self.coeffs))
        object.__setattr__(self, 'noise_cov', np.asarray(self.noise_cov, dtype=np.float64))
        object.__setattr__(self, 'mean', np.asarray(self.mean, dtype=np.float64).reshape(-1))

        if len(self.coeffs) != self.order:
            raise ShapeError(f'AR fit of order {self.order} carries {len(self.coeffs)} coefficient matrices')

    @property
    def dim(self) -> int:
        return self.mean.shape[0]

    def whitening_polynomial(self) -> MatrixPolynomial:
        """
        W_AR[z] = I - sum A_i z^i
        """

        return MatrixPolynomial.from_ar_coefficients(self.coeffs, dim=self.dim)


def _lagged_design(data: np.ndarray, max_order: int) -> t.Tuple[np.ndarray, np.ndarray]:
    """
    Targets u(t) and regressors [u(t-1), ..., u(t-L)] for t = L..T-1
    """

    length = data.shape[0]
    targets = data[max_order:]
    regressors = np.hstack([data[max_order - lag:length - lag] for lag in range(1, max_order + 1)])
    return targets, regressors


def _check_condition(upper: np.ndarray) -> None:
    """
    Reject a series whose own lag-one regressors are degenerate (constant or duplicated channels).

    Redundant higher lags are not an error: undercomplete moving-average systems produce them structurally.
    """

    diagonal = np.abs(np.diag(upper))

    if not diagonal.size:
        return

    if diagonal.min() == 0.0:
        raise IllConditionedError('Lagged regressor matrix is rank deficient', condition_number=float('inf'))

    condition = float(np.linalg.cond(upper))
    if condition > CONDITION_LIMIT:
        raise IllConditionedError(
            f'Lagged regressor matrix is ill-conditioned, condition number={condition:.3e}',
            condition_number=condition,
        )


def _column_space(upper: np.ndarray) -> np.ndarray:
    """
    Orthonormal basis of the numerical range of a triangular factor
    """

    left, singular, _ = scipy.linalg.svd(upper)

    if not singular.size or singular[0] <= 0.0:
        return left[:, :0]

    rank = int(np.sum(singular > singular[0] * RANK_TOLERANCE))
    return left[:, :rank]


def _ols(targets: np.ndarray, regressors: np.ndarray, dim: int) -> np.ndarray:
    basis, upper = scipy.linalg.qr(regressors, mode='economic')
    _check_condition(upper[:dim, :dim])

    stacked, _, rank, _ = scipy.linalg.lstsq(upper, basis.T @ targets, cond=RANK_TOLERANCE)

    if rank < upper.shape[1]:
        logger.info(
            'Lagged regressors have rank %s of %s, using the minimum norm coefficients', rank, upper.shape[1],
        )

    return stacked


def _select_order(data: np.ndarray, orders: t.List[int], rule: OrderRule) -> t.Dict[int, float]:
    """
    Score every candidate order on the common sample t = L..T-1 from one QR factorization of the full design.

    With Z = QR the first k lags are Z_k = Q_k R_kk, so their residual cross-product is Y'Y - C'UU'C with
    C = Q_k'Y and U spanning the range of R_kk. Eigenvalues of the residual covariance are floored at
    ``NOISE_FLOOR`` times the mean variance: an exact innovation of rank D_e < D still scores finitely.
    """

    dim = data.shape[1]
    largest = max(orders)
    targets = data[largest:]
    n_obs = targets.shape[0]

    gram = targets.T @ targets
    projected = np.zeros((0, dim))
    upper = np.zeros((0, 0))

    if largest > 0:
        targets, regressors = _lagged_design(data, largest)
        basis, upper = scipy.linalg.qr(regressors, mode='economic')
        _check_condition(upper[:dim, :dim])
        projected = basis.T @ targets

    penalty = rule.penalty(n_obs)
    scale = float(np.trace(gram)) / (n_obs * dim)
    floor = NOISE_FLOOR * scale if scale > 0.0 else np.finfo(np.float64).tiny

    def score(order: int) -> float:
        width = order * dim
        explained = projected[:width]

        if width:
            directions = _column_space(upper[:width, :width])
            if directions.shape[1] < width:
                logger.debug('AR order %s: lagged regressors have rank %s of %s', order, directions.shape[1], width)
            explained = directions.T @ explained

        residual = (gram - explained.T @ explained) / n_obs
        eigvals = scipy.linalg.eigvalsh((residual + residual.T) / 2.0)
        logdet = float(np.sum(np.log(np.maximum(eigvals, floor))))

        return logdet + penalty * order * dim * dim / n_obs

    return dict(zip(orders, threads_pool_registry.map_ordered(score, orders)))


def fit_ar(
    series: TimeSeries,
    max_order: int,
    selection: t.Optional[OrderRule] = None,
    min_order: int = 1,
) -> ArFit:
    """
    Fit a multivariate AR model by ordinary least squares (QR on the block-lagged design).

    The order is the minimizer of the selection criterion over ``min_order..max_order`` (ties go to the smaller
    order); ``OrderRule.fixed(p)`` bypasses the sweep. The chosen order is refitted on every available row.
    """

    selection = selection if selection is not None else OrderRule.bic()

    if selection.order is not None:
        orders = [selection.order]
    else:
        if max_order < 0 or min_order < 0 or min_order > max_order:
            raise InvalidOrderRuleError(f'Invalid order range {min_order}..{max_order}')
        orders = list(range(min_order, max_order + 1))

    dim = series.dim
    largest = max(orders)

    if largest > 0 and series.length <= largest * dim + dim:
        raise InsufficientLengthError(
            f'AR fit of order {largest} needs more than {largest * dim + dim} samples, got {series.length}',
        )

    if series.length <= largest:
        raise InsufficientLengthError(f'Series of length {series.length} is too short for AR order {largest}')

    mean = series.mean()
    data = series.data - mean

    trace = _select_order(data, orders, selection)
    order = min(orders, key=lambda candidate: (trace[candidate], candidate))

    if order > 0:
        targets, regressors = _lagged_design(data, order)
        stacked = _ols(targets, regressors, dim)
        coeffs = tuple(stacked[lag * dim:(lag + 1) * dim].T for lag in range(order))
        residuals = targets - regressors @ stacked
    else:
        coeffs = ()
        residuals = data

    noise_cov = residuals.T @ residuals / residuals.shape[0]
    noise_cov = (noise_cov + noise_cov.T) / 2.0
    radius = ar_spectral_radius(list(coeffs))

    logger.info(
        'AR fit, criterion=%s, order=%s, candidates=%s..%s, spectral radius=%.4f',
        selection.criterion.value, order, min(orders), largest, radius,
    )

    if radius > UNIT_ROOT_THRESHOLD:
        logger.warning(
            'Fitted AR dynamics are close to a unit root, radius=%.4f; check the difference order', radius,
        )
        warnings.warn(
            f'Largest companion eigenvalue of the fitted AR model is {radius:.4f} > {UNIT_ROOT_THRESHOLD}',
            NearUnitRootWarning,
            stacklevel=2,
        )

    return ArFit(
        order=order,
        coeffs=coeffs,
        noise_cov=noise_cov,
        mean=mean,
        criterion_trace=trace,
        rule=selection,
        spectral_radius=radius,
        n_obs=residuals.shape[0],
    )


def innovation(series: TimeSeries, fit: ArFit) -> TimeSeries:
    """
    Residual u(t) - sum A_i u(t - i) of the centered series, length T - order
    """

    if series.dim != fit.dim:
        raise ShapeError(f'AR fit is {fit.dim}-dimensional, series has dimension {series.dim}')

    centered = TimeSeries(series.data - fit.mean)
    return apply_polynomial(fit.whitening_polynomial(), centered, BoundaryPolicy.truncate)
