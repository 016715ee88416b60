import abc
import typing as t
from concurrent.futures import ThreadPoolExecutor

from ipa_engine.logs import logger_parallelism as logger

SingletonMetaT = t.TypeVar('SingletonMetaT', bound='SingletonMeta')


class SingletonMeta(type):
    _instances: t.ClassVar[t.Dict] = {}

    def __call__(cls, *args: t.Any, **kwargs: t.Any) -> SingletonMetaT:
        """
        Later constructor arguments do not affect the returned instance.
        """
        if cls not in cls._instances:
            instance = super().__call__(*args, **kwargs)
            cls._instances[cls] = instance
        return cls._instances[cls]


class PoolExecutorRegistry(metaclass=SingletonMeta):

    def __init__(self) -> None:
        self._pool_executor: t.Optional[ThreadPoolExecutor] = None

    @abc.abstractmethod
    def is_ready(self) -> bool:
        ...

    def register_pool_executor(self, pool_executor: ThreadPoolExecutor) -> None:
        if self._pool_executor:
            logger.info('Pool %s can be registered only once, re-initialization skipped', type(pool_executor))
            return

        logger.info('Pool %s registered', type(pool_executor))
        self._pool_executor = pool_executor

    def get_pool_executor(self) -> ThreadPoolExecutor:
        if not self.is_ready():
            raise RuntimeError('No pool executor registered')
        return self._pool_executor

    def shutdown(self) -> None:
        if self._pool_executor is not None:
            self._pool_executor.shutdown()
            self._pool_executor = None

    def __del__(self) -> None:
        self.shutdown()
