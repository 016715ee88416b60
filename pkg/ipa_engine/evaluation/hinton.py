import typing as t
from pathlib import Path

import anyio
import numpy as np

from ipa_engine.artifact_store import ArtifactStoreError
from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.serializers import serializer_factory
from ipa_engine.artifact_store.serializers import table_to_csv
from ipa_engine.evaluation.transform import GlobalTransform
from ipa_engine.logs import logger_evaluation as logger

__all__ = [
    'hinton_export',
    'hinton_sidecar',
]


def hinton_sidecar(transform: GlobalTransform) -> t.Dict[str, t.Any]:
    return {
        'row_layout': transform.row_layout.as_list(),
        'col_layout': transform.col_layout.as_list(),
        'row_offsets': transform.row_layout.offsets(),
        'col_offsets': transform.col_layout.offsets(),
    }


async def hinton_export(transform: GlobalTransform, path: t.Union[str, Path]) -> t.Tuple[Path, Path]:
    """
    Write |G| as CSV to ``path`` and the block boundaries as a JSON sidecar next to it (same stem, ``.json``)
    """

    if not str(path):
        raise ArtifactStoreError('Hinton export needs a target path')

    path = Path(path)
    sidecar = path.with_suffix(f'.{DataFormat.JSON.value}')

    try:
        await anyio.Path(path.parent).mkdir(parents=True, exist_ok=True)

        async with await anyio.open_file(path, 'w') as file:
            await file.write(table_to_csv(np.abs(transform.matrix)))

        async with await anyio.open_file(sidecar, 'wb') as file:
            await serializer_factory.from_data_format(DataFormat.JSON).dump(hinton_sidecar(transform), file)

    except OSError as ex:
        raise ArtifactStoreError(f'Cannot write Hinton export to {path}: {ex}') from ex

    logger.info('Hinton export written, path=%s, size=%s', path, transform.size)
    return path, sidecar
