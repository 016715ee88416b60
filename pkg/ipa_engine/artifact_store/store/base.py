import typing as t
from abc import ABCMeta
from abc import abstractmethod

from ipa_engine.artifact_store.enums import DataFormat

__all__ = [
    'ArtifactName',
    'ArtifactStore',
]

ArtifactName = str


class ArtifactStore(metaclass=ABCMeta):
    @abstractmethod
    async def save(self, name: ArtifactName, data: t.Any, fmt: t.Optional[DataFormat] = None) -> None:
        ...

    @abstractmethod
    async def load(self, name: ArtifactName) -> t.Any:
        ...

    @abstractmethod
    async def exists(self, name: ArtifactName) -> bool:
        ...
