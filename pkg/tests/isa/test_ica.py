import numpy as np
import pytest

from ipa_engine.isa import DimRule
from ipa_engine.isa import IcaConvergenceError
from ipa_engine.isa import InvalidRuleError
from ipa_engine.isa import NotWhiteError
from ipa_engine.isa import ica
from ipa_engine.isa import pca_whiten
from ipa_engine.isa import symmetric_decorrelation
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import sample_covariance
from tests.helpers import is_signed_permutation
from tests.helpers import random_orthogonal


def _whitened_uniform_mixture(rng: np.random.Generator, dim: int = 3, length: int = 20000):
    sources = rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), size=(length, dim))
    mixing = rng.standard_normal((dim, dim))
    pca, white = pca_whiten(TimeSeries(sources @ mixing.T), DimRule.fixed(dim))
    return mixing, pca, white


def test_ica_separates_uniform_sources(rng: np.random.Generator) -> None:
    mixing, pca, white = _whitened_uniform_mixture(rng)

    stage, unmixed = ica(white, seed=1)

    assert stage.sweeps >= 1
    assert stage.convergence[-1] < 1e-6
    np.testing.assert_allclose(stage.rotation @ stage.rotation.T, np.eye(3), atol=1e-10)
    np.testing.assert_allclose(sample_covariance(unmixed), np.eye(3), atol=1e-8)
    assert is_signed_permutation(stage.rotation @ pca.basis @ mixing, threshold=0.95)


def test_ica_is_reproducible_for_a_seed(rng: np.random.Generator) -> None:
    _, _, white = _whitened_uniform_mixture(rng, length=5000)

    first, _ = ica(white, seed=4)
    second, _ = ica(white, seed=4)

    np.testing.assert_array_equal(first.rotation, second.rotation)


def test_ica_needs_white_input(rng: np.random.Generator) -> None:
    with pytest.raises(NotWhiteError):
        ica(TimeSeries(rng.standard_normal((2000, 2)) * np.array([1.0, 3.0])))


def test_ica_reports_non_convergence(rng: np.random.Generator) -> None:
    _, _, white = _whitened_uniform_mixture(rng, length=5000)

    with pytest.raises(IcaConvergenceError) as exc_info:
        ica(white, max_sweeps=1, tol=1e-300)

    assert len(exc_info.value.sweep_log) == 1
    np.testing.assert_allclose(exc_info.value.rotation @ exc_info.value.rotation.T, np.eye(3), atol=1e-10)


def test_ica_needs_a_sweep(rng: np.random.Generator) -> None:
    with pytest.raises(InvalidRuleError):
        ica(TimeSeries(rng.standard_normal((10, 2))), max_sweeps=0)


def test_symmetric_decorrelation_keeps_orthogonal_matrices(rng: np.random.Generator) -> None:
    rotation = random_orthogonal(4, rng)

    np.testing.assert_allclose(symmetric_decorrelation(rotation), rotation, atol=1e-12)

    decorrelated = symmetric_decorrelation(rng.standard_normal((4, 4)))
    np.testing.assert_allclose(decorrelated @ decorrelated.T, np.eye(4), atol=1e-10)
