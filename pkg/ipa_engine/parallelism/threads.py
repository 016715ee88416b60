import typing as t
from concurrent.futures import ThreadPoolExecutor

from ipa_engine.logs import logger_parallelism as logger
from ipa_engine.parallelism.basic import PoolExecutorRegistry as BasePoolExecutorRegistry

__all__ = ('threads_pool_registry',)

ItemT = t.TypeVar('ItemT')
ResultT = t.TypeVar('ResultT')


class PoolExecutorRegistry(BasePoolExecutorRegistry):

    def is_ready(self) -> bool:
        return self._pool_executor is not None and not self._pool_executor._shutdown

    def auto_init(self, max_workers: t.Optional[int] = None) -> None:
        self.register_pool_executor(ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix='ipa'))

    @property
    def max_workers(self) -> int:
        return self._pool_executor._max_workers if self.is_ready() else 1

    def map_ordered(self, func: t.Callable[[ItemT], ResultT], items: t.Iterable[ItemT]) -> t.List[ResultT]:
        """
        Map ``func`` over ``items`` keeping the input order.

        Runs on the registered pool, sequentially when none is registered; the result never depends on the
        number of workers.
        """

        items = list(items)

        if not self.is_ready() or len(items) < 2:  # noqa: PLR2004
            return [func(item) for item in items]

        logger.debug('Mapping %s items over %s workers', len(items), self.max_workers)
        return list(self._pool_executor.map(func, items))


threads_pool_registry = PoolExecutorRegistry()
