import platform
import time
import typing as t
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path

import numpy as np
import scipy

from ipa_engine import __version__
from ipa_engine.artifact_store import BundleFormatError
from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.store import FileSystemBundleStore
from ipa_engine.const import MANIFEST_FORMAT_TAG
from ipa_engine.pipeline.types import PipelineResult
from ipa_engine.pipeline.types import RunContextLike
from ipa_engine.pipeline.types import StageId

__all__ = [
    'RUN_MANIFEST',
    'RunManifest',
    'StageTimer',
    'load_run_manifest',
    'save_run_manifest',
]

RUN_MANIFEST = 'run'


class StageTimer:
    """
    Event manager recording the wall time of every stage and of the whole run, in seconds
    """

    def __init__(self) -> None:
        self.timings: t.Dict[str, float] = {}
        self._started: t.Dict[str, float] = {}

    def start(self, key: str) -> None:
        self._started[key] = time.perf_counter()

    def stop(self, key: str) -> None:
        if key in self._started:
            self.timings[key] = round(time.perf_counter() - self._started.pop(key), 6)

    async def on_pipeline_start(self, ctx: RunContextLike) -> None:
        self.start('pipeline')

    async def on_pipeline_complete(self, ctx: RunContextLike, result: PipelineResult) -> None:
        self.stop('pipeline')

    async def on_stage_start(self, ctx: RunContextLike, stage_id: StageId) -> None:
        self.start(stage_id)

    async def on_stage_complete(self, ctx: RunContextLike, stage_id: StageId, error: t.Optional[Exception]) -> None:
        self.stop(stage_id)


def _versions() -> t.Dict[str, str]:
    return {
        'ipa_engine': __version__,
        'python': platform.python_version(),
        'numpy': np.__version__,
        'scipy': scipy.__version__,
    }


@dataclass
class RunManifest:
    """
    Everything needed to reproduce a command: its arguments, the resolved config and the seed.

    ``outputs`` maps artifact roles to paths; timings are informational and never part of the reproduced output.
    """

    command: str
    arguments: t.Dict[str, t.Any]
    config: t.Dict[str, t.Any]
    seed: int
    threads: int
    outputs: t.Dict[str, str] = field(default_factory=dict)
    timings: t.Dict[str, float] = field(default_factory=dict)
    summary: t.Dict[str, t.Any] = field(default_factory=dict)
    versions: t.Dict[str, str] = field(default_factory=_versions)
    format: str = MANIFEST_FORMAT_TAG

    def to_dict(self) -> t.Dict[str, t.Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: t.Dict[str, t.Any]) -> 'RunManifest':
        if not isinstance(payload, dict) or payload.get('format') != MANIFEST_FORMAT_TAG:
            raise BundleFormatError(f'Not a run manifest in format {MANIFEST_FORMAT_TAG}')

        try:
            return cls(**payload)
        except TypeError as ex:
            raise BundleFormatError(f'Run manifest is incomplete or invalid: {ex}') from ex


async def save_run_manifest(out: Path, manifest: RunManifest) -> Path:
    store = FileSystemBundleStore(out, overwrite=True)
    await store.save(RUN_MANIFEST, manifest.to_dict(), DataFormat.JSON)
    return store.path_of(RUN_MANIFEST, DataFormat.JSON)


async def load_run_manifest(path: Path) -> RunManifest:
    """
    ``path`` is either the manifest file or the output directory holding it
    """

    path = Path(path)
    root, name = (path, RUN_MANIFEST) if path.is_dir() else (path.parent, path.stem)
    return RunManifest.from_dict(await FileSystemBundleStore(root).load(name))
