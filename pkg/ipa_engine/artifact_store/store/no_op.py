import typing as t

from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.store.base import ArtifactName
from ipa_engine.artifact_store.store.base import ArtifactStore

__all__ = ['NoOpArtifactStore']


class NoOpArtifactStore(ArtifactStore):
    async def save(self, name: ArtifactName, data: t.Any, fmt: t.Optional[DataFormat] = None) -> None:
        ...

    async def load(self, name: ArtifactName) -> t.Any:
        raise NotImplementedError('Method "load" is not available for this kind of store')

    async def exists(self, name: ArtifactName) -> bool:
        return False
