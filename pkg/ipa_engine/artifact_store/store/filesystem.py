import typing as t
from pathlib import Path

import anyio

from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.errors import ArtifactAlreadyExists
from ipa_engine.artifact_store.errors import ArtifactDoesNotExist
from ipa_engine.artifact_store.errors import ArtifactStoreError
from ipa_engine.artifact_store.serializers import serializer_factory
from ipa_engine.artifact_store.store.base import ArtifactName
from ipa_engine.artifact_store.store.base import ArtifactStore
from ipa_engine.logs import logger_artifact_store as logger

__all__ = [
    'ArtifactFileAlreadyExists',
    'ArtifactFileDoesNotExist',
    'FileSystemBundleStore',
]


class ArtifactFileAlreadyExists(ArtifactAlreadyExists):
    pass


class ArtifactFileDoesNotExist(ArtifactDoesNotExist):
    pass


class FileSystemBundleStore(ArtifactStore):
    """
    Directory of artifacts, one file ``<name>.<format>`` per artifact.

    Names may contain ``/`` to address files in subdirectories of the bundle.
    """

    def __init__(self, root: t.Union[Path, str], overwrite: bool = False) -> None:
        self.root = Path(root)
        self.overwrite = overwrite

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__} root="{self.root}">'

    def _ensure_dir(self, path: Path) -> Path:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as ex:
            raise ArtifactStoreError(f'Cannot create directory {path.parent}: {ex}') from ex

        return path

    def _get_glob(self, name: ArtifactName) -> t.List[Path]:
        path = self.root / name
        return sorted(path.parent.glob(f'{path.name}.*')) if path.parent.exists() else []

    def path_of(self, name: ArtifactName, fmt: DataFormat) -> Path:
        return self.root / f'{name}.{DataFormat(fmt).value}'

    async def save(self, name: ArtifactName, data: t.Any, fmt: t.Optional[DataFormat] = None) -> None:
        fmt = DataFormat(fmt) if fmt is not None else serializer_factory.guess_format(data)
        existing = self._get_glob(name)

        if existing and not self.overwrite:
            raise ArtifactFileAlreadyExists(f'Artifact file for {name} already exists: {existing[0]}')

        for path in existing:
            path.unlink()

        path = self._ensure_dir(self.path_of(name, fmt))

        try:
            async with await anyio.open_file(path, 'wb') as file:
                await serializer_factory.from_data_format(fmt).dump(data, file)
        except OSError as ex:
            raise ArtifactStoreError(f'Cannot write artifact {path}: {ex}') from ex

        logger.debug('Artifact saved, path=%s', path)

    async def load(self, name: ArtifactName) -> t.Any:
        glob = self._get_glob(name)

        if not glob:
            raise ArtifactFileDoesNotExist(f'Artifact file for {name} does not exist in {self.root}')

        try:
            async with await anyio.open_file(glob[0], 'rb') as file:
                return await serializer_factory.from_extension(glob[0].suffix[1:]).load(file)
        except OSError as ex:
            raise ArtifactStoreError(f'Cannot read artifact {glob[0]}: {ex}') from ex

    async def exists(self, name: ArtifactName) -> bool:
        return bool(self._get_glob(name))
