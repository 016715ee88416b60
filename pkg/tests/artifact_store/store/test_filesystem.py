import pathlib

import numpy as np
import pytest

from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.store import NoOpArtifactStore
from ipa_engine.artifact_store.store.filesystem import ArtifactFileAlreadyExists
from ipa_engine.artifact_store.store.filesystem import ArtifactFileDoesNotExist
from ipa_engine.artifact_store.store.filesystem import FileSystemBundleStore
from ipa_engine.tsmodel import TimeSeries


@pytest.fixture
def store(tmp_path: pathlib.Path) -> FileSystemBundleStore:
    return FileSystemBundleStore(tmp_path / 'bundle')


async def test_fs_bundle_store_success(store: FileSystemBundleStore) -> None:
    series = TimeSeries(np.arange(6.0).reshape(3, 2))

    await store.save('manifest', {'some-key1': 'some-value1'})
    await store.save('observations', series)
    await store.save('truth/mixing', np.eye(2))
    await store.save('table', series, DataFormat.CSV)

    assert await store.load('manifest') == {'some-key1': 'some-value1'}
    assert (await store.load('observations')).allclose(series, atol=0.0)
    np.testing.assert_array_equal(await store.load('truth/mixing'), np.eye(2))
    assert (await store.load('table')).allclose(series, atol=0.0)

    assert store.path_of('truth/mixing', DataFormat.MATRIX) == store.root / 'truth' / 'mixing.ipm'
    assert store.path_of('truth/mixing', DataFormat.MATRIX).exists()
    assert await store.exists('observations')
    assert not await store.exists('sources')


async def test_fs_bundle_store_error_already_exists(store: FileSystemBundleStore) -> None:
    await store.save('some-artifact', {'some-key': 'some-value'})

    with pytest.raises(ArtifactFileAlreadyExists):
        await store.save('some-artifact', {'some-key': 'some-value'})


async def test_fs_bundle_store_overwrite_replaces_format(tmp_path: pathlib.Path) -> None:
    store = FileSystemBundleStore(tmp_path, overwrite=True)

    await store.save('result', {'some-key': 'some-value'})
    await store.save('result', np.ones((1, 1)))

    assert not store.path_of('result', DataFormat.JSON).exists()
    np.testing.assert_array_equal(await store.load('result'), np.ones((1, 1)))


async def test_fs_bundle_store_error_does_not_exist(store: FileSystemBundleStore) -> None:
    with pytest.raises(ArtifactFileDoesNotExist):
        await store.load('some-bad-artifact')


async def test_no_op_store() -> None:
    store = NoOpArtifactStore()

    await store.save('anything', {'some-key': 'some-value'})

    assert not await store.exists('anything')
    with pytest.raises(NotImplementedError):
        await store.load('anything')
