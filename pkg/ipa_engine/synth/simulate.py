import typing as t
from dataclasses import dataclass

import numpy as np

from ipa_engine.logs import logger_synth as logger
from ipa_engine.seeding import derive_seed
from ipa_engine.synth.dynamics import random_ma
from ipa_engine.synth.dynamics import random_mixing
from ipa_engine.synth.dynamics import random_stable_ar
from ipa_engine.synth.errors import UnstableDynamicsError
from ipa_engine.synth.specs import SystemSpec
from ipa_engine.tsmodel import BoundaryPolicy
from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import InsufficientLengthError
from ipa_engine.tsmodel import MatrixPolynomial
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import apply_polynomial
from ipa_engine.tsmodel import ar_spectral_radius
from ipa_engine.tsmodel import cumulate

__all__ = [
    'GroundTruth',
    'draw_system',
    'simulate',
    'simulate_system',
]


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """
    Everything the generator knows: A, P[z], Q[z], the driving noise aligned with grad^r x, and its layout
    """

    mixing: np.ndarray
    ar: MatrixPolynomial
    ma: MatrixPolynomial
    sources: TimeSeries
    layout: ComponentLayout
    spec: SystemSpec
    burn_in: int

    @property
    def mixing_q0(self) -> np.ndarray:
        """
        A Q_0, the map from e(t) to the innovation of x
        """

        return self.mixing @ self.ma.coeffs[0]


def draw_system(spec: SystemSpec) -> t.Tuple[MatrixPolynomial, MatrixPolynomial, np.ndarray]:
    return (
        random_stable_ar(spec.p, spec.D_s, derive_seed(spec.seed, 'system')),
        random_ma(spec.q, spec.D_s, spec.D_e, derive_seed(spec.seed, 'system')),
        random_mixing(spec.mixing, spec.D_x, spec.D_s, derive_seed(spec.seed, 'system')),
    )


def _ar_recursion(ar: MatrixPolynomial, driving: np.ndarray) -> np.ndarray:
    coefficients = ar.ar_coefficients()
    order = len(coefficients)

    if not order:
        return driving

    state = np.zeros((driving.shape[0] + order, driving.shape[1]))
    transposed = [coeff.T for coeff in coefficients]

    for step in range(driving.shape[0]):
        row = step + order
        value = driving[step].copy()
        for lag, coeff in enumerate(transposed, start=1):
            value += state[row - lag] @ coeff
        state[row] = value

    return state[order:]


def simulate_system(
    spec: SystemSpec,
    sources: TimeSeries,
    ar: MatrixPolynomial,
    ma: MatrixPolynomial,
    mixing: np.ndarray,
    layout: t.Optional[ComponentLayout] = None,
) -> t.Tuple[TimeSeries, GroundTruth]:
    """
    Run P[z] grad^r s = Q[z] e from a zero state, drop the burn-in, integrate r times from zero heads and mix.

    The observation has ``len(sources) - burn_in + r`` rows and its r-th difference is aligned sample for sample
    with ``truth.sources``.
    """

    layout = layout if layout is not None else ComponentLayout((spec.D_e,))
    burn_in = spec.effective_burn_in
    r = spec.r.r

    if sources.dim != spec.D_e or layout.total != spec.D_e:
        raise ShapeError(f'Sources of dimension {sources.dim} and layout {layout.as_list()} need D_e={spec.D_e}')

    if ma.out_dim != spec.D_s or ma.in_dim != spec.D_e or ar.out_dim != spec.D_s:
        raise ShapeError('Dynamics shapes do not match the system dimensions')

    if mixing.shape != (spec.D_x, spec.D_s):
        raise ShapeError(f'Mixing has shape {mixing.shape}, expected {(spec.D_x, spec.D_s)}')

    if sources.length <= burn_in:
        raise InsufficientLengthError(f'{sources.length} source samples do not cover the burn-in of {burn_in}')

    radius = ar_spectral_radius(ar)
    if radius >= 1.0:
        raise UnstableDynamicsError(f'AR polynomial is not stable, companion spectral radius={radius:.6f}')

    driving = apply_polynomial(ma, sources, BoundaryPolicy.zero_pad).data
    hidden = TimeSeries(_ar_recursion(ar, driving)[burn_in:])
    integrated = cumulate(hidden, r, np.zeros((r, spec.D_s)))

    logger.info(
        'Simulated system p=%s q=%s r=%s D_x=%s D_s=%s D_e=%s, observations=%s',
        spec.p, spec.q, r, spec.D_x, spec.D_s, spec.D_e, integrated.length,
    )

    truth = GroundTruth(
        mixing=mixing,
        ar=ar,
        ma=ma,
        sources=sources.tail(burn_in),
        layout=layout,
        spec=spec,
        burn_in=burn_in,
    )
    return integrated.map(mixing), truth


def simulate(
    spec: SystemSpec,
    sources: TimeSeries,
    layout: t.Optional[ComponentLayout] = None,
) -> t.Tuple[TimeSeries, GroundTruth]:
    ar, ma, mixing = draw_system(spec)
    return simulate_system(spec, sources, ar, ma, mixing, layout=layout)
