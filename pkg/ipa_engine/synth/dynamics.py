import numpy as np
import scipy.linalg

from ipa_engine.logs import logger_synth as logger
from ipa_engine.seeding import Seed
from ipa_engine.seeding import make_rng
from ipa_engine.synth.enums import MixingKind
from ipa_engine.synth.errors import InvalidSystemError
from ipa_engine.synth.errors import UndercompletenessError
from ipa_engine.tsmodel import MatrixPolynomial
from ipa_engine.tsmodel import ar_spectral_radius

__all__ = [
    'TARGET_RADIUS_RANGE',
    'random_mixing',
    'random_ma',
    'random_stable_ar',
]

TARGET_RADIUS_RANGE = (0.3, 0.95)

_RANK_TOLERANCE = 1e-8


def random_stable_ar(p: int, dim: int, seed: Seed) -> MatrixPolynomial:
    """
    Random stable AR polynomial I - sum P_i z^i.

    Raw coefficients with N(0, 1/D) entries are rescaled by c^i, c = target / radius, which multiplies every companion
    eigenvalue by c, so the result has exactly the target radius drawn from TARGET_RADIUS_RANGE.
    """

    if p < 0 or dim < 1:
        raise InvalidSystemError(f'Invalid AR shape p={p}, D={dim}')

    if p == 0:
        return MatrixPolynomial.identity(dim)

    rng = make_rng(seed, 'ar')
    raw = [rng.normal(0.0, 1.0 / np.sqrt(dim), size=(dim, dim)) for _ in range(p)]
    target = rng.uniform(*TARGET_RADIUS_RANGE)
    radius = ar_spectral_radius(raw)

    while radius == 0.0:
        raw = [rng.normal(0.0, 1.0 / np.sqrt(dim), size=(dim, dim)) for _ in range(p)]
        radius = ar_spectral_radius(raw)

    scale = target / radius
    coefficients = [coeff * scale ** (lag + 1) for lag, coeff in enumerate(raw)]

    logger.debug('Random AR polynomial p=%s, D=%s, radius=%.4f', p, dim, target)
    return MatrixPolynomial.from_ar_coefficients(coefficients, dim=dim)


def _full_column_rank(matrix: np.ndarray) -> bool:
    singular = scipy.linalg.svdvals(matrix)
    return bool(singular[-1] > _RANK_TOLERANCE * singular[0])


def random_ma(q: int, d_s: int, d_e: int, seed: Seed) -> MatrixPolynomial:
    """
    Random MA polynomial Q[z] of degree q with D_s x D_e standard normal coefficients; Q_0 has full column rank.
    """

    if d_s < d_e:
        raise UndercompletenessError(f'MA polynomial needs D_s >= D_e, got D_s={d_s}, D_e={d_e}')

    if q < 0:
        raise InvalidSystemError(f'MA order must be nonnegative, got {q}')

    rng = make_rng(seed, 'ma')

    while True:
        coeffs = tuple(rng.standard_normal((d_s, d_e)) for _ in range(q + 1))

        if _full_column_rank(coeffs[0]):
            return MatrixPolynomial(coeffs)

        logger.debug('Rank-deficient Q_0 drawn, regenerating')


def random_mixing(kind: MixingKind, d_x: int, d_s: int, seed: Seed) -> np.ndarray:
    """
    Observation matrix A of shape D_x x D_s with full column rank
    """

    kind = MixingKind(kind)

    if d_x < d_s:
        raise UndercompletenessError(f'Mixing of shape {d_x}x{d_s} cannot have full column rank')

    if kind is MixingKind.identity:
        if d_x != d_s:
            raise InvalidSystemError(f'Identity mixing needs a square shape, got {d_x}x{d_s}')
        return np.eye(d_x)

    rng = make_rng(seed, 'mixing')

    if kind is MixingKind.random_orthogonal:
        basis, upper = np.linalg.qr(rng.standard_normal((d_x, d_s)))
        return basis * np.sign(np.diag(upper))

    while True:
        matrix = rng.standard_normal((d_x, d_s))
        if _full_column_rank(matrix):
            return matrix
