import numpy as np
import pytest

from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import DifferenceOrder
from ipa_engine.tsmodel import NonFiniteError
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries
from ipa_engine.tsmodel import sample_covariance


def test_one_dimensional_input_is_a_single_coordinate() -> None:
    series = TimeSeries(np.arange(5.0))

    assert series.length == 5
    assert series.dim == 1
    assert len(series) == 5


def test_series_data_is_read_only() -> None:
    series = TimeSeries(np.zeros((3, 2)))

    with pytest.raises(ValueError):
        series.data[0, 0] = 1.0


def test_series_rejects_nan() -> None:
    data = np.zeros((4, 2))
    data[2, 1] = np.nan

    with pytest.raises(NonFiniteError, match='first rows=\\[2\\]'):
        TimeSeries(data)


def test_series_rejects_empty_and_3d() -> None:
    with pytest.raises(ShapeError):
        TimeSeries(np.zeros((0, 3)))

    with pytest.raises(ShapeError):
        TimeSeries(np.zeros((2, 2, 2)))


def test_map_applies_matrix_to_every_sample(rng: np.random.Generator) -> None:
    data = rng.standard_normal((10, 3))
    matrix = rng.standard_normal((2, 3))

    mapped = TimeSeries(data).map(matrix)

    assert mapped.dim == 2
    np.testing.assert_allclose(mapped.data, (matrix @ data.T).T)

    with pytest.raises(ShapeError):
        TimeSeries(data).map(np.eye(2))


def test_sample_covariance_is_biased(rng: np.random.Generator) -> None:
    data = rng.standard_normal((50, 3))

    np.testing.assert_allclose(sample_covariance(TimeSeries(data)), np.cov(data.T, bias=True))


def test_centered_has_zero_mean(rng: np.random.Generator) -> None:
    series = TimeSeries(rng.standard_normal((30, 2)) + 4.0)

    np.testing.assert_allclose(series.centered().mean(), 0.0, atol=1e-12)


def test_component_layout() -> None:
    layout = ComponentLayout((2, 3, 1))

    assert layout.total == 6
    assert layout.n_components == 3
    assert layout.offsets() == [0, 2, 5, 6]
    assert layout.blocks() == [slice(0, 2), slice(2, 5), slice(5, 6)]
    assert layout.assignment() == [0, 0, 1, 1, 1, 2]
    assert layout.multiset() == (1, 2, 3)
    assert layout.as_list() == [2, 3, 1]


@pytest.mark.parametrize('dims', [(), (2, 0), (-1,)])
def test_component_layout_rejects_bad_dims(dims: tuple) -> None:
    with pytest.raises(ShapeError):
        ComponentLayout(dims)


def test_difference_order() -> None:
    assert DifferenceOrder.of(2) == DifferenceOrder(2)
    assert int(DifferenceOrder.of(DifferenceOrder(1))) == 1

    with pytest.raises(ShapeError):
        DifferenceOrder(-1)
