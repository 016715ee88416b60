import typing as t

import numpy as np
import pytest
from pytest_mock import MockerFixture

from ipa_engine.isa import ClusterRule
from ipa_engine.isa import DisconnectedGraphError
from ipa_engine.isa import InvalidRuleError
from ipa_engine.isa import SimilarityGraph
from ipa_engine.isa import connected_components
from ipa_engine.isa import ncut as ncut_module
from ipa_engine.isa import ncut_cluster
from ipa_engine.isa import ncut_value
from ipa_engine.tsmodel import ComponentLayout
from tests.helpers import block_graph


def test_components_are_returned_when_the_graph_is_disconnected() -> None:
    graph = block_graph(ComponentLayout((2, 3, 1)))

    partition = ncut_cluster(graph, ClusterRule.eigengap(), seed=0)

    assert partition.as_sets() == frozenset({frozenset({0, 1}), frozenset({2, 3, 4}), frozenset({5})})
    assert ncut_value(graph, partition.assignment) == 0.0


@pytest.mark.parametrize('rule', [ClusterRule.eigengap(), ClusterRule.fixed(3)])
def test_weakly_coupled_blocks_are_found(rule: ClusterRule) -> None:
    graph = block_graph(ComponentLayout((2, 2, 2)), within=1.0, between=0.05)

    partition = ncut_cluster(graph, rule, seed=3, restarts=5)

    assert partition.layout.multiset() == (2, 2, 2)
    assert partition.as_sets() == frozenset({frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})})


def test_clusters_follow_a_scrambled_coordinate_order(rng: np.random.Generator) -> None:
    layout = ComponentLayout((3, 2, 2))
    graph = block_graph(layout, within=0.9, between=0.02)
    order = rng.permutation(layout.total)
    scrambled = SimilarityGraph(graph.weights[np.ix_(order, order)])

    partition = ncut_cluster(scrambled, ClusterRule.eigengap(), seed=1, restarts=5)

    labels = np.asarray(layout.assignment())[order]
    expected = frozenset(frozenset(np.flatnonzero(labels == label).tolist()) for label in range(3))
    assert partition.as_sets() == expected


def test_singletons_when_every_coordinate_is_a_cluster() -> None:
    graph = block_graph(ComponentLayout((2, 2)), within=1.0, between=0.5)

    partition = ncut_cluster(graph, ClusterRule.fixed(4))

    assert partition.assignment == (0, 1, 2, 3)


def test_too_many_components_for_the_limit() -> None:
    graph = block_graph(ComponentLayout((2, 2, 2)))

    with pytest.raises(DisconnectedGraphError) as exc_info:
        ncut_cluster(graph, ClusterRule.fixed(2))

    assert exc_info.value.components == [[0, 1], [2, 3], [4, 5]]
    assert exc_info.value.limit == 2


def test_invalid_cluster_requests() -> None:
    graph = block_graph(ComponentLayout((2, 2)), between=0.1)

    with pytest.raises(InvalidRuleError):
        ncut_cluster(graph, ClusterRule.fixed(5))

    with pytest.raises(InvalidRuleError):
        ncut_cluster(graph, restarts=0)

    with pytest.raises(InvalidRuleError):
        ClusterRule.fixed(0)


def test_eigengap_limit_is_capped_by_size() -> None:
    assert ClusterRule.eigengap(10).limit(4) == 4
    assert ClusterRule.eigengap().limit(6) == 6
    assert ClusterRule.fixed(3).limit(6) == 3


def test_connected_components() -> None:
    graph = block_graph(ComponentLayout((1, 2, 1)))

    assert connected_components(graph) == [[0], [1, 2], [3]]


def test_ncut_value_of_a_bad_split() -> None:
    graph = block_graph(ComponentLayout((2, 2)), within=1.0, between=0.0)

    # splitting each block in half cuts all within-block weight
    assert ncut_value(graph, [0, 1, 0, 1]) == pytest.approx(2.0)


def _layouts(total: int, max_parts: int, largest: int) -> t.Iterator[t.Tuple[int, ...]]:
    if total == 0:
        yield ()
        return

    if max_parts == 0:
        return

    for first in range(min(total, largest), 0, -1):
        for rest in _layouts(total - first, max_parts - 1, first):
            yield (first, *rest)


@pytest.mark.parametrize('total', range(2, 21))
def test_exact_block_graphs_are_recovered_for_every_layout(total: int) -> None:
    permute = np.random.default_rng(total).permutation

    for dims in _layouts(total, 6, total):
        layout = ComponentLayout(dims)
        order = permute(total)
        graph = block_graph(layout)
        scrambled = SimilarityGraph(graph.weights[np.ix_(order, order)])

        partition = ncut_cluster(scrambled, ClusterRule.eigengap(), seed=0, restarts=2)

        labels = np.asarray(layout.assignment())[order]
        expected = frozenset(frozenset(np.flatnonzero(labels == label).tolist()) for label in range(len(dims)))
        assert partition.as_sets() == expected, dims


def test_dominant_gap_is_taken_without_scoring(mocker: MockerFixture) -> None:
    objective = mocker.spy(ncut_module, 'graph_objective')
    graph = block_graph(ComponentLayout((2, 2, 2)), within=1.0, between=0.05)

    partition = ncut_cluster(graph, ClusterRule.eigengap(), seed=3, restarts=5)

    assert partition.layout.multiset() == (2, 2, 2)
    assert objective.call_count == 0


def test_tied_gap_candidates_are_decided_by_the_objective(mocker: MockerFixture) -> None:
    mocker.patch.object(ncut_module, 'GAP_TIE_TOLERANCE', 1.0)
    objective = mocker.spy(ncut_module, 'graph_objective')
    graph = block_graph(ComponentLayout((2, 2, 2)), within=1.0, between=0.05)

    partition = ncut_cluster(graph, ClusterRule.eigengap(), seed=3, restarts=5)

    assert objective.call_count == ncut_module.GAP_CANDIDATES
    assert partition.as_sets() == frozenset({frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})})
