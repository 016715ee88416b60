import typing as t

import numpy as np
import pytest

from ipa_engine.arfit import IllConditionedError
from ipa_engine.arfit import InvalidOrderRuleError
from ipa_engine.arfit import NearUnitRootWarning
from ipa_engine.arfit import OrderRule
from ipa_engine.arfit import SelectionCriterion
from ipa_engine.arfit import fit_ar
from ipa_engine.arfit import innovation
from ipa_engine.synth import SourceSpec
from ipa_engine.synth import SystemSpec
from ipa_engine.synth import draw_sources
from ipa_engine.synth import simulate
from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import InsufficientLengthError
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries

FIRST_LAG = np.array([[0.5, 0.1], [0.0, 0.3]])
SECOND_LAG = np.array([[-0.2, 0.0], [0.1, 0.1]])


def _ar2(rng: np.random.Generator, length: int = 20000) -> TimeSeries:
    noise = rng.standard_normal((length + 200, 2))
    data = np.zeros_like(noise)

    for step in range(2, data.shape[0]):
        data[step] = FIRST_LAG @ data[step - 1] + SECOND_LAG @ data[step - 2] + noise[step]

    return TimeSeries(data[200:] + np.array([3.0, -1.0]))


def test_bic_recovers_order_and_coefficients(rng: np.random.Generator) -> None:
    fit = fit_ar(_ar2(rng), max_order=6)

    assert fit.order == 2
    assert sorted(fit.criterion_trace) == [1, 2, 3, 4, 5, 6]
    assert fit.rule.criterion is SelectionCriterion.bic
    np.testing.assert_allclose(fit.coeffs[0], FIRST_LAG, atol=0.05)
    np.testing.assert_allclose(fit.coeffs[1], SECOND_LAG, atol=0.05)
    np.testing.assert_allclose(fit.noise_cov, np.eye(2), atol=0.05)
    np.testing.assert_allclose(fit.mean, [3.0, -1.0], atol=0.1)
    assert fit.spectral_radius < 1.0


def test_fixed_rule_bypasses_selection(rng: np.random.Generator) -> None:
    fit = fit_ar(_ar2(rng, 3000), max_order=6, selection=OrderRule.fixed(1))

    assert fit.order == 1
    assert list(fit.criterion_trace) == [1]


def test_white_noise_selects_order_zero(rng: np.random.Generator) -> None:
    fit = fit_ar(TimeSeries(rng.standard_normal((5000, 3))), max_order=3, min_order=0)

    assert fit.order == 0
    assert fit.coeffs == ()
    assert fit.spectral_radius == 0.0


def test_innovation_recovers_the_driving_noise(rng: np.random.Generator) -> None:
    series = _ar2(rng, 5000)
    fit = fit_ar(series, max_order=4)

    residual = innovation(series, fit)

    assert residual.length == series.length - fit.order
    np.testing.assert_allclose(residual.data.T @ residual.data / residual.length, fit.noise_cov, atol=1e-8)

    with pytest.raises(ShapeError):
        innovation(TimeSeries(np.zeros((10, 3))), fit)


def test_random_walk_warns_about_unit_root(rng: np.random.Generator) -> None:
    walk = TimeSeries(np.cumsum(rng.standard_normal((4000, 2)), axis=0))

    with pytest.warns(NearUnitRootWarning):
        fit = fit_ar(walk, max_order=1, selection=OrderRule.fixed(1))

    assert fit.spectral_radius > 0.99


def test_collinear_coordinates_are_ill_conditioned(rng: np.random.Generator) -> None:
    column = rng.standard_normal(500)

    with pytest.raises(IllConditionedError):
        fit_ar(TimeSeries(np.column_stack([column, column])), max_order=2)


def test_short_series_is_rejected() -> None:
    with pytest.raises(InsufficientLengthError):
        fit_ar(TimeSeries(np.zeros((6, 2))), max_order=2)


def test_order_rule_validation() -> None:
    with pytest.raises(InvalidOrderRuleError):
        OrderRule(SelectionCriterion.fixed)

    with pytest.raises(InvalidOrderRuleError):
        OrderRule(SelectionCriterion.bic, 3)

    with pytest.raises(InvalidOrderRuleError):
        fit_ar(TimeSeries(np.zeros((100, 1))), max_order=1, min_order=2)


def test_penalties() -> None:
    assert OrderRule.aic().penalty(1000) == 2.0
    assert OrderRule.bic().penalty(1000) == pytest.approx(np.log(1000))
    assert OrderRule.hqic().penalty(1000) == pytest.approx(2 * np.log(np.log(1000)))


def _diagonal_ar(coeffs: t.Sequence[float], dim: int, length: int, seed: int) -> TimeSeries:
    lags = [coeff * np.eye(dim) + 0.05 * np.eye(dim, k=1) for coeff in coeffs]
    noise = np.random.default_rng(seed).standard_normal((length + 200, dim))
    data = np.zeros_like(noise)

    for step in range(len(lags), data.shape[0]):
        data[step] = noise[step] + sum(lag @ data[step - i - 1] for i, lag in enumerate(lags))

    return TimeSeries(data[200:])


def test_scalar_ar1_coefficient(rng: np.random.Generator) -> None:
    noise = rng.standard_normal(20200)
    data = np.zeros_like(noise)

    for step in range(1, data.shape[0]):
        data[step] = 0.5 * data[step - 1] + noise[step]

    fit = fit_ar(TimeSeries(data[200:]), max_order=1, selection=OrderRule.fixed(1))

    assert abs(float(fit.coeffs[0][0, 0]) - 0.5) < 0.02


@pytest.mark.parametrize(
    'coeffs',
    [(0.5,), (0.5, -0.3), (0.4, -0.2, 0.25)],
    ids=['ar1', 'ar2', 'ar3'],
)
def test_bic_recovers_the_order_over_seeds(coeffs: t.Tuple[float, ...]) -> None:
    hits = sum(fit_ar(_diagonal_ar(coeffs, 3, 20000, seed), max_order=6).order == len(coeffs) for seed in range(20))

    assert hits >= 18


def test_residual_is_orthogonal_to_the_regressors(rng: np.random.Generator) -> None:
    series = _ar2(rng, 5000)
    fit = fit_ar(series, max_order=4)

    residual = innovation(series, fit).data
    centered = series.data - fit.mean
    length = series.length

    for lag in range(1, fit.order + 1):
        regressor = centered[fit.order - lag:length - lag]
        np.testing.assert_allclose(residual.T @ regressor / residual.shape[0], 0.0, atol=1e-8)


def _moving_average_observations() -> TimeSeries:
    layout = ComponentLayout((2, 2, 2))
    spec = SystemSpec(p=0, q=2, r=0, D_x=12, D_s=12, D_e=6, mixing='identity', seed=5, burn_in=10)
    sources = draw_sources(SourceSpec.default(layout, seed=5), 4010)

    observations, _ = simulate(spec, sources, layout)
    return observations


def test_undercomplete_moving_average_selects_the_exact_horizon() -> None:
    # two lags of 12 channels determine the six-dimensional noise, later lags are redundant
    observations = _moving_average_observations()

    fit = fit_ar(observations, max_order=6)

    assert fit.order == 2
    assert np.isfinite(list(fit.criterion_trace.values())).all()
    eigvals = np.sort(np.linalg.eigvalsh(fit.noise_cov))[::-1]
    assert eigvals[5] / max(eigvals[6], 1e-300) > 1e6


def test_redundant_lags_take_the_minimum_norm_fit(caplog_debug: pytest.LogCaptureFixture) -> None:
    observations = _moving_average_observations()

    fit = fit_ar(observations, max_order=4, selection=OrderRule.fixed(4))
    residual = innovation(observations, fit)

    assert fit.order == 4
    assert 'minimum norm' in caplog_debug.text
    eigvals = np.sort(np.linalg.eigvalsh(residual.data.T @ residual.data / residual.length))[::-1]
    assert eigvals[5] / max(eigvals[6], 1e-300) > 1e6
