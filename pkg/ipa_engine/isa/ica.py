import typing as t
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import scipy.linalg

from ipa_engine.isa.errors import IcaConvergenceError
from ipa_engine.isa.errors import InvalidRuleError
from ipa_engine.isa.errors import NotWhiteError
from ipa_engine.logs import logger_isa as logger
from ipa_engine.seeding import Seed
from ipa_engine.seeding import make_rng
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import sample_covariance

__all__ = [
    'DEFAULT_MAX_SWEEPS',
    'DEFAULT_TOLERANCE',
    'WHITENESS_TOLERANCE',
    'IcaStage',
    'ica',
    'symmetric_decorrelation',
]

DEFAULT_MAX_SWEEPS = 500
DEFAULT_TOLERANCE = 1e-6
WHITENESS_TOLERANCE = 1e-3


@dataclass(frozen=True, eq=False)
class IcaStage:
    rotation: np.ndarray
    convergence: t.Tuple[float, ...] = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return self.rotation.shape[0]

    @property
    def sweeps(self) -> int:
        return len(self.convergence)

    def transform(self, series: TimeSeries) -> TimeSeries:
        if series.dim != self.dim:
            raise ShapeError(f'ICA stage expects dimension {self.dim}, got {series.dim}')

        return TimeSeries(series.data @ self.rotation.T)


def symmetric_decorrelation(matrix: np.ndarray) -> np.ndarray:
    """
    (W W')^(-1/2) W, the orthogonal matrix closest to W
    """

    eigvals, eigvecs = scipy.linalg.eigh(matrix @ matrix.T)
    return (eigvecs / np.sqrt(eigvals)) @ eigvecs.T @ matrix


def _check_white(data: np.ndarray) -> None:
    deviation = float(np.max(np.abs(sample_covariance(data) - np.eye(data.shape[1]))))

    if deviation > WHITENESS_TOLERANCE:
        raise NotWhiteError(
            f'ICA input must be white, covariance deviates from identity by {deviation:.3e} > {WHITENESS_TOLERANCE}',
        )


def ica(
    series: TimeSeries,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    tol: float = DEFAULT_TOLERANCE,
    seed: Seed = 0,
) -> t.Tuple[IcaStage, TimeSeries]:
    """
    Symmetric fixed-point ICA with the log-cosh negentropy contrast on white input.

    Every sweep updates all rows at once, W+ = E[g(Wx) x'] - diag(E[g'(Wx)]) W, then restores orthogonality by
    symmetric decorrelation. Converges when max |1 - |diag(W+ W')|| < tol.
    """

    if max_sweeps < 1:
        raise InvalidRuleError(f'ICA needs at least one sweep, got max_sweeps={max_sweeps}')

    data = series.data
    _check_white(data)

    dim = series.dim
    samples = (data - data.mean(axis=0)).T
    length = samples.shape[1]

    rng = make_rng(seed, 'ica')
    rotation = symmetric_decorrelation(np.linalg.qr(rng.standard_normal((dim, dim)))[0])
    sweep_log: t.List[float] = []

    for sweep in range(1, max_sweeps + 1):
        projected = np.tanh(rotation @ samples)
        derivative = 1.0 - projected ** 2

        updated = projected @ samples.T / length - derivative.mean(axis=1)[:, None] * rotation
        updated = symmetric_decorrelation(updated)

        change = float(np.max(np.abs(np.abs(np.einsum('ij,ij->i', updated, rotation)) - 1.0)))
        sweep_log.append(change)
        rotation = updated

        logger.debug('ICA sweep %s, change=%.3e', sweep, change)

        if change < tol:
            break
    else:
        raise IcaConvergenceError(
            f'ICA did not converge in {max_sweeps} sweeps, last change={sweep_log[-1]:.3e} > {tol}',
            sweep_log=sweep_log,
            rotation=symmetric_decorrelation(rotation),
        )

    rotation = symmetric_decorrelation(rotation)
    logger.info('ICA converged, dim=%s, sweeps=%s', dim, len(sweep_log))

    stage = IcaStage(rotation=rotation, convergence=tuple(sweep_log))
    return stage, stage.transform(series)
