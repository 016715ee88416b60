import typing as t
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ipa_engine.tsmodel.enums import BoundaryPolicy
from ipa_engine.tsmodel.errors import InsufficientLengthError
from ipa_engine.tsmodel.errors import ShapeError
from ipa_engine.tsmodel.series import TimeSeries

__all__ = [
    'MatrixPolynomial',
    'apply_polynomial',
    'ar_spectral_radius',
    'companion_matrix',
]


@dataclass(frozen=True, eq=False)
class MatrixPolynomial:
    """
    Finite-degree polynomial F[z] = F_0 + F_1 z + ... + F_N z^N of real D1 x D2 matrices in the time-shift operator.

    AR dynamics are stored in monic form [I, -P_1, ..., -P_p], so the polynomial itself is the whitening filter.
    """

    coeffs: t.Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(np.atleast_2d(np.array(coeff, dtype=np.float64, copy=True)) for coeff in self.coeffs)

        if not coeffs:
            raise ShapeError('Matrix polynomial needs at least one coefficient')

        shape = coeffs[0].shape
        for index, coeff in enumerate(coeffs):
            if coeff.ndim != 2 or coeff.shape != shape:  # noqa: PLR2004
                raise ShapeError(f'Coefficient {index} has shape {coeff.shape}, expected {shape}')

            coeff.setflags(write=False)

        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def identity(cls, dim: int) -> 'MatrixPolynomial':
        return cls((np.eye(dim),))

    @classmethod
    def from_ar_coefficients(
        cls,
        coefficients: t.Sequence[np.ndarray],
        dim: t.Optional[int] = None,
    ) -> 'MatrixPolynomial':
        """
        Build I - sum P_i z^i from the prediction-form list [P_1, ..., P_p]
        """

        coefficients = [np.atleast_2d(np.asarray(coeff, dtype=np.float64)) for coeff in coefficients]

        if dim is None:
            if not coefficients:
                raise ShapeError('Dimension is required for an empty AR coefficient list')
            dim = coefficients[0].shape[0]

        return cls((np.eye(dim), *(-coeff for coeff in coefficients)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def out_dim(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def in_dim(self) -> int:
        return self.coeffs[0].shape[1]

    def ar_coefficients(self) -> t.List[np.ndarray]:
        """
        Inverse of from_ar_coefficients: [P_1, ..., P_p] of a monic polynomial
        """

        if self.out_dim != self.in_dim or not np.array_equal(self.coeffs[0], np.eye(self.out_dim)):
            raise ShapeError('AR coefficients are defined only for a monic square polynomial')

        return [-coeff for coeff in self.coeffs[1:]]

    def shifted(self, lags: int = 1) -> 'MatrixPolynomial':
        zero = np.zeros((self.out_dim, self.in_dim))
        return MatrixPolynomial((*(zero for _ in range(lags)), *self.coeffs))

    def stacked(self) -> np.ndarray:
        """
        Coefficients side by side, [F_0 F_1 ... F_N] of shape D1 x (N+1)*D2
        """

        return np.hstack(self.coeffs)

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__} degree={self.degree} shape={self.out_dim}x{self.in_dim}>'


def apply_polynomial(
    polynomial: MatrixPolynomial,
    series: TimeSeries,
    policy: BoundaryPolicy = BoundaryPolicy.truncate,
) -> TimeSeries:
    """
    Causal FIR filtering v(t) = sum_n F_n u(t - n).

    Under ``truncate`` the first N outputs (which would need samples before the start) are dropped. Under
    ``zero_pad`` the past is taken as zero and the output keeps length T.
    """

    policy = BoundaryPolicy(policy)

    if series.dim != polynomial.in_dim:
        raise ShapeError(f'Polynomial expects {polynomial.in_dim}-dimensional input, got {series.dim}')

    degree = polynomial.degree
    data = series.data

    if policy is BoundaryPolicy.truncate:
        if series.length <= degree:
            raise InsufficientLengthError(
                f'Series of length {series.length} is too short for a degree-{degree} filter',
            )

        output = np.zeros((series.length - degree, polynomial.out_dim))
        for lag, coeff in enumerate(polynomial.coeffs):
            output += data[degree - lag:series.length - lag] @ coeff.T

        return TimeSeries(output)

    padded = np.vstack([np.zeros((degree, series.dim)), data])
    output = np.zeros((series.length, polynomial.out_dim))
    for lag, coeff in enumerate(polynomial.coeffs):
        output += padded[degree - lag:degree - lag + series.length] @ coeff.T

    return TimeSeries(output)


def companion_matrix(coefficients: t.Sequence[np.ndarray]) -> np.ndarray:
    """
    Block companion matrix of x(t) = sum P_i x(t - i), shape pD x pD
    """

    coefficients = [np.atleast_2d(np.asarray(coeff, dtype=np.float64)) for coeff in coefficients]

    for index, coeff in enumerate(coefficients):
        if coeff.ndim != 2 or coeff.shape[0] != coeff.shape[1]:  # noqa: PLR2004
            raise ShapeError(f'AR coefficient {index + 1} must be square, got shape {coeff.shape}')

        if coeff.shape != coefficients[0].shape:
            raise ShapeError(f'AR coefficient {index + 1} has shape {coeff.shape}, expected {coefficients[0].shape}')

    order = len(coefficients)
    dim = coefficients[0].shape[0]

    companion = np.zeros((order * dim, order * dim))
    companion[:dim] = np.hstack(coefficients)
    companion[dim:, :-dim] = np.eye((order - 1) * dim)

    return companion


def ar_spectral_radius(coefficients: t.Union[MatrixPolynomial, t.Sequence[np.ndarray]]) -> float:
    """
    Spectral radius of the block companion matrix of [P_1, ..., P_p].

    Accepts either the prediction-form list or a monic MatrixPolynomial. A value below one certifies stability,
    the boundary value one is treated as unstable by callers.
    """

    if isinstance(coefficients, MatrixPolynomial):
        coefficients = coefficients.ar_coefficients()

    if not len(coefficients):
        return 0.0

    eigenvalues = scipy.linalg.eigvals(companion_matrix(coefficients))
    return float(np.max(np.abs(eigenvalues)))
