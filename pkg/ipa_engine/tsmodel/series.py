import typing as t
from dataclasses import dataclass

import numpy as np

from ipa_engine.tsmodel.errors import NonFiniteError
from ipa_engine.tsmodel.errors import ShapeError

__all__ = [
    'ComponentLayout',
    'DifferenceOrder',
    'TimeSeries',
    'sample_covariance',
]


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """
    Length-T sequence of D-dimensional real samples stored time-major (rows are time steps).

    A one-dimensional input is read as a single coordinate. The underlying array is read-only.
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        array = np.array(self.data, dtype=np.float64, copy=True)

        if array.ndim == 1:
            array = array.reshape(-1, 1)

        if array.ndim != 2:  # noqa: PLR2004
            raise ShapeError(f'Time series data must be a T x D matrix, got ndim={array.ndim}')

        if array.shape[0] < 1 or array.shape[1] < 1:
            raise ShapeError(f'Time series needs at least one sample and one coordinate, got shape={array.shape}')

        if not np.isfinite(array).all():
            bad_rows = np.unique(np.nonzero(~np.isfinite(array))[0])
            raise NonFiniteError(f'Time series contains NaN/Inf values, first rows={bad_rows[:5].tolist()}')

        array.setflags(write=False)
        object.__setattr__(self, 'data', array)

    @property
    def length(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__} len={self.length} dim={self.dim}>'

    def head(self, count: int) -> np.ndarray:
        return self.data[:count]

    def tail(self, start: int) -> 'TimeSeries':
        return TimeSeries(self.data[start:])

    def mean(self) -> np.ndarray:
        return self.data.mean(axis=0)

    def centered(self) -> 'TimeSeries':
        return TimeSeries(self.data - self.mean())

    def map(self, matrix: np.ndarray) -> 'TimeSeries':
        """
        Apply a static matrix to every sample, v(t) = M u(t)
        """

        matrix = np.asarray(matrix, dtype=np.float64)

        if matrix.ndim != 2 or matrix.shape[1] != self.dim:  # noqa: PLR2004
            raise ShapeError(f'Matrix of shape {matrix.shape} cannot act on {self.dim}-dimensional samples')

        return TimeSeries(self.data @ matrix.T)

    def allclose(self, other: 'TimeSeries', atol: float = 1e-10) -> bool:
        return self.data.shape == other.data.shape and bool(np.allclose(self.data, other.data, rtol=0.0, atol=atol))


def sample_covariance(series: t.Union[TimeSeries, np.ndarray]) -> np.ndarray:
    """
    Biased (1/T) sample covariance of a time-major sample matrix
    """

    data = series.data if isinstance(series, TimeSeries) else np.asarray(series, dtype=np.float64)
    centered = data - data.mean(axis=0)
    return centered.T @ centered / data.shape[0]


@dataclass(frozen=True)
class ComponentLayout:
    """
    Ordered dimensions [d1, ..., dM] of independent subspaces
    """

    dims: t.Tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(dim) for dim in self.dims)

        if not dims:
            raise ShapeError('Component layout needs at least one component')

        if any(dim < 1 for dim in dims):
            raise ShapeError(f'Component dimensions must be positive, got {list(dims)}')

        object.__setattr__(self, 'dims', dims)

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def n_components(self) -> int:
        return len(self.dims)

    def offsets(self) -> t.List[int]:
        return [0, *np.cumsum(self.dims).tolist()]

    def blocks(self) -> t.List[slice]:
        offsets = self.offsets()
        return [slice(start, stop) for start, stop in zip(offsets[:-1], offsets[1:])]

    def assignment(self) -> t.List[int]:
        return [index for index, dim in enumerate(self.dims) for _ in range(dim)]

    def multiset(self) -> t.Tuple[int, ...]:
        return tuple(sorted(self.dims))

    def as_list(self) -> t.List[int]:
        return list(self.dims)


@dataclass(frozen=True)
class DifferenceOrder:
    r: int = 0

    def __post_init__(self) -> None:
        if int(self.r) != self.r or self.r < 0:
            raise ShapeError(f'Difference order must be a nonnegative integer, got {self.r}')

        object.__setattr__(self, 'r', int(self.r))

    @classmethod
    def of(cls, value: t.Union['DifferenceOrder', int]) -> 'DifferenceOrder':
        return value if isinstance(value, DifferenceOrder) else cls(value)

    def __int__(self) -> int:
        return self.r
