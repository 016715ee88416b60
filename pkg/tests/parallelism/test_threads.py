import threading

import numpy as np
from pytest_mock import MockerFixture

from ipa_engine.isa import KccaEstimator
from ipa_engine.isa import pairwise_dependence
from ipa_engine.parallelism import threads
from ipa_engine.parallelism import threads_pool_registry
from ipa_engine.tsmodel import TimeSeries


def test_registry_is_a_singleton() -> None:
    assert threads.PoolExecutorRegistry() is threads_pool_registry
    assert threads_pool_registry.is_ready()


def test_second_registration_is_skipped() -> None:
    executor = threads_pool_registry.get_pool_executor()

    threads_pool_registry.auto_init(1)

    assert threads_pool_registry.get_pool_executor() is executor


def test_map_ordered_keeps_order() -> None:
    items = list(range(50))

    assert threads_pool_registry.map_ordered(lambda item: item * item, items) == [item * item for item in items]


def test_map_ordered_runs_on_pool_threads() -> None:
    names = threads_pool_registry.map_ordered(lambda _: threading.current_thread().name, range(8))

    assert all(name.startswith('ipa') for name in names)


def test_map_ordered_falls_back_to_sequential(mocker: MockerFixture) -> None:
    mocker.patch.object(threads_pool_registry, 'is_ready', return_value=False)
    get_pool_executor = mocker.spy(threads.PoolExecutorRegistry, 'get_pool_executor')

    names = threads_pool_registry.map_ordered(lambda _: threading.current_thread().name, range(4))

    assert names == [threading.current_thread().name] * 4
    assert threads_pool_registry.max_workers == 1
    assert get_pool_executor.call_count == 0


def test_dependence_does_not_depend_on_pool(rng: np.random.Generator, mocker: MockerFixture) -> None:
    series = TimeSeries(rng.standard_normal((400, 4)))
    estimator = KccaEstimator(seed=5, max_samples=200)

    pooled = pairwise_dependence(series, estimator).weights

    mocker.patch.object(threads_pool_registry, 'is_ready', return_value=False)
    sequential = pairwise_dependence(series, estimator).weights

    np.testing.assert_array_equal(pooled, sequential)
