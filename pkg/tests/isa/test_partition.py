import numpy as np
import pytest

from ipa_engine.isa import AbsCorrEstimator
from ipa_engine.isa import Partition
from ipa_engine.isa import graph_objective
from ipa_engine.isa import ipa_objective
from ipa_engine.tsmodel import ComponentLayout
from ipa_engine.tsmodel import ShapeError
from ipa_engine.tsmodel import TimeSeries
from tests.helpers import block_graph


def test_from_labels_numbers_clusters_by_first_member() -> None:
    partition = Partition.from_labels([5, 5, 2, 7, 2])

    assert partition.assignment == (0, 0, 1, 2, 1)
    assert partition.clusters == [[0, 1], [2, 4], [3]]
    assert partition.layout == ComponentLayout((2, 2, 1))
    assert partition.order == [0, 1, 2, 4, 3]


def test_from_clusters() -> None:
    partition = Partition.from_clusters([[3, 1], [0, 2]])

    assert partition.assignment == (0, 1, 0, 1)
    assert partition.n_clusters == 2


def test_permutation_makes_clusters_contiguous() -> None:
    partition = Partition((1, 0, 1, 0))
    values = np.arange(4.0)

    np.testing.assert_array_equal(partition.permutation @ values, [1.0, 3.0, 0.0, 2.0])


def test_dict_round_trip() -> None:
    partition = Partition((0, 1, 1, 2))

    payload = partition.to_dict()

    assert payload['layout'] == [1, 2, 1]
    assert Partition.from_dict(payload) == partition


@pytest.mark.parametrize('assignment', [(), (0, 2), (1, 1)])
def test_cluster_ids_must_be_contiguous(assignment: tuple) -> None:
    with pytest.raises(ShapeError):
        Partition(assignment)


def test_graph_objective() -> None:
    graph = block_graph(ComponentLayout((2, 2)), within=1.0, between=0.1)
    truth = Partition((0, 0, 1, 1))

    assert graph_objective(graph, truth) == pytest.approx(0.4 - 2.0)
    assert graph_objective(graph, truth, normalized=True) == pytest.approx(0.1 - 1.0)
    assert graph_objective(graph, Partition((0, 0, 0, 0)), normalized=True) == pytest.approx(-0.4)
    assert graph_objective(graph, truth) < graph_objective(graph, Partition((0, 1, 0, 1)))

    with pytest.raises(ShapeError):
        graph_objective(graph, Partition((0, 1)))


def test_ipa_objective_prefers_the_true_grouping(rng: np.random.Generator) -> None:
    angle = rng.uniform(0.0, 2 * np.pi, 3000)
    data = np.column_stack([np.cos(angle), rng.uniform(-1, 1, 3000), np.sin(angle), rng.uniform(-1, 1, 3000)])
    series = TimeSeries(data)

    right = ipa_objective(series, Partition((0, 1, 0, 2)), AbsCorrEstimator())
    wrong = ipa_objective(series, Partition((0, 0, 1, 2)), AbsCorrEstimator())

    assert right < wrong
