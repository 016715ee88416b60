import numpy as np
import pytest

from ipa_engine.isa import AmbiguousEigenGapWarning
from ipa_engine.isa import DimRule
from ipa_engine.isa import InvalidRuleError
from ipa_engine.isa import pca_whiten
from ipa_engine.isa import select_dimension
from ipa_engine.tsmodel import InsufficientLengthError
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import sample_covariance


def _low_rank(rng: np.random.Generator, rank: int, dim: int, length: int = 4000) -> TimeSeries:
    latent = rng.standard_normal((length, rank))
    embedding = rng.standard_normal((rank, dim))
    return TimeSeries(latent @ embedding + 1e-4 * rng.standard_normal((length, dim)) + 5.0)


def test_eigen_gap_finds_latent_dimension(rng: np.random.Generator) -> None:
    stage, white = pca_whiten(_low_rank(rng, 3, 8), DimRule.eigen_gap())

    assert stage.kept == 3
    assert stage.input_dim == 8
    assert white.dim == 3
    np.testing.assert_allclose(sample_covariance(white), np.eye(3), atol=1e-8)


def test_transform_and_dewhitening(rng: np.random.Generator) -> None:
    series = _low_rank(rng, 2, 5)
    stage, white = pca_whiten(series, DimRule.fixed(2))

    assert stage.transform(series).allclose(white, atol=1e-8)
    np.testing.assert_allclose(stage.basis @ stage.dewhitening, np.eye(2), atol=1e-10)


def test_energy_rule(rng: np.random.Generator) -> None:
    series = TimeSeries(rng.standard_normal((3000, 4)) * np.array([10.0, 1.0, 0.1, 0.01]))

    stage, _ = pca_whiten(series, DimRule.energy(0.98))

    assert stage.kept == 1


def test_flat_spectrum_falls_back_to_energy(rng: np.random.Generator) -> None:
    with pytest.warns(AmbiguousEigenGapWarning):
        stage, _ = pca_whiten(TimeSeries(rng.standard_normal((5000, 4))), DimRule.eigen_gap())

    assert stage.kept == 4


def test_more_coordinates_than_samples(rng: np.random.Generator) -> None:
    # five centered samples span four directions
    stage, white = pca_whiten(TimeSeries(rng.standard_normal((5, 20))), DimRule.eigen_gap())

    assert stage.kept == 4
    assert white.dim == 4


def test_fixed_rule_larger_than_dimension(rng: np.random.Generator) -> None:
    with pytest.raises(InvalidRuleError):
        pca_whiten(TimeSeries(rng.standard_normal((100, 3))), DimRule.fixed(4))


def test_select_dimension_rules() -> None:
    eigvals = np.array([100.0, 90.0, 1.0, 0.5])

    assert select_dimension(eigvals, DimRule.eigen_gap()) == 2
    assert select_dimension(eigvals, DimRule.fixed(3)) == 3
    assert select_dimension(eigvals, DimRule.energy(1.0)) == 4


@pytest.mark.parametrize('kwargs', [dict(kind='fixed', value=0), dict(kind='energy', value=1.5), dict(value=2)])
def test_dim_rule_validation(kwargs: dict) -> None:
    with pytest.raises(InvalidRuleError):
        DimRule(**kwargs)


def test_single_sample_is_rejected() -> None:
    with pytest.raises(InsufficientLengthError):
        pca_whiten(TimeSeries(np.ones((1, 3))))
