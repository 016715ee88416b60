import typing as t

import numpy as np
from scipy.special import comb

from ipa_engine.tsmodel.errors import InsufficientLengthError
from ipa_engine.tsmodel.errors import ShapeError
from ipa_engine.tsmodel.polynomial import MatrixPolynomial
from ipa_engine.tsmodel.series import DifferenceOrder
from ipa_engine.tsmodel.series import TimeSeries

__all__ = [
    'cumulate',
    'difference',
    'difference_polynomial',
]

DifferenceOrderLike = t.Union[DifferenceOrder, int]


def difference_polynomial(r: DifferenceOrderLike, dim: int) -> MatrixPolynomial:
    """
    Binomial expansion of (I - Iz)^r
    """

    r = DifferenceOrder.of(r).r
    return MatrixPolynomial(tuple((-1) ** k * comb(r, k, exact=True) * np.eye(dim) for k in range(r + 1)))


def difference(series: TimeSeries, r: DifferenceOrderLike) -> TimeSeries:
    r = DifferenceOrder.of(r).r

    if series.length <= r:
        raise InsufficientLengthError(f'Differencing of order {r} needs more than {r} samples, got {series.length}')

    if r == 0:
        return series

    return TimeSeries(np.diff(series.data, n=r, axis=0))


def cumulate(series: TimeSeries, r: DifferenceOrderLike, heads: t.Union[np.ndarray, t.Sequence]) -> TimeSeries:
    """
    Inverse of ``difference``: integrate ``series`` r times starting from the first r samples of the original.

    ``cumulate(difference(u, r), r, u.head(r))`` reproduces ``u``.
    """

    r = DifferenceOrder.of(r).r
    heads = np.asarray(heads, dtype=np.float64)
    # a flat sequence holds one value per level and channel
    if heads.ndim < 2 and heads.size == r * series.dim:  # noqa: PLR2004
        heads = heads.reshape(r, series.dim)

    if heads.shape != (r, series.dim):
        raise ShapeError(f'Expected {r} head samples of dimension {series.dim}, got shape {heads.shape}')

    data = series.data
    # level k holds the (k-1)-th difference of the heads, its first sample seeds the running sum
    for level in range(r, 0, -1):
        start = np.diff(heads, n=level - 1, axis=0)[0]
        data = np.vstack([start, start + np.cumsum(data, axis=0)])

    return TimeSeries(data)
