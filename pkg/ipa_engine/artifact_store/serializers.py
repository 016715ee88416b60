import io
import json
import struct
import typing as t
from abc import ABC
from abc import abstractmethod
from pathlib import Path

import numpy as np
from anyio import AsyncFile

from ipa_engine.artifact_store.enums import DataFormat
from ipa_engine.artifact_store.errors import CorruptArtifactError
from ipa_engine.artifact_store.errors import SerializerInitializationError
from ipa_engine.const import MATRIX_MAGIC
from ipa_engine.const import SERIES_MAGIC
from ipa_engine.tsmodel import TimeSeries

__all__ = [
    'CsvSerializer',
    'JSONSerializer',
    'MatrixSerializer',
    'SerializerFactory',
    'SeriesSerializer',
    'decode_matrix',
    'decode_series',
    'encode_matrix',
    'encode_series',
    'read_matrix_file',
    'read_series_file',
    'serializer_factory',
    'table_from_csv',
    'table_to_csv',
]

SerializableObjectT = t.Any

_HEADER = struct.Struct('<4sQQ')


def _encode_table(magic: bytes, table: np.ndarray) -> bytes:
    table = np.ascontiguousarray(table, dtype='<f8')
    return _HEADER.pack(magic, table.shape[0], table.shape[1]) + table.tobytes(order='C')


def _decode_table(magic: bytes, payload: bytes) -> np.ndarray:
    if len(payload) < _HEADER.size:
        raise CorruptArtifactError(f'Payload of {len(payload)} bytes is shorter than the header')

    found, rows, cols = _HEADER.unpack_from(payload)
    if found != magic:
        raise CorruptArtifactError(f'Unexpected magic {found!r}, expected {magic!r}')

    body = payload[_HEADER.size:]
    if len(body) != rows * cols * 8:
        raise CorruptArtifactError(f'Body holds {len(body)} bytes, header announces {rows}x{cols} float64 values')

    return np.frombuffer(body, dtype='<f8').reshape(rows, cols).astype(np.float64)


def encode_series(series: TimeSeries) -> bytes:
    return _encode_table(SERIES_MAGIC, series.data)


def decode_series(payload: bytes) -> TimeSeries:
    return TimeSeries(_decode_table(SERIES_MAGIC, payload))


def encode_matrix(matrix: np.ndarray) -> bytes:
    return _encode_table(MATRIX_MAGIC, np.atleast_2d(matrix))


def decode_matrix(payload: bytes) -> np.ndarray:
    return _decode_table(MATRIX_MAGIC, payload)


def table_to_csv(table: t.Union[TimeSeries, np.ndarray]) -> str:
    data = table.data if isinstance(table, TimeSeries) else np.atleast_2d(table)
    buffer = io.StringIO()
    header = ','.join(f'c{index}' for index in range(data.shape[1]))
    np.savetxt(buffer, data, delimiter=',', fmt='%.17g', header=header, comments='')
    return buffer.getvalue()


def table_from_csv(text: str) -> np.ndarray:
    lines = text.strip().splitlines()
    if not lines:
        raise CorruptArtifactError('CSV table is empty')

    columns = lines[0].split(',')
    if any(column.strip() != f'c{index}' for index, column in enumerate(columns)):
        raise CorruptArtifactError(f'CSV header must be c0,...,c{{D-1}}, got {lines[0]!r}')

    try:
        data = np.loadtxt(io.StringIO(text), delimiter=',', skiprows=1, ndmin=2, dtype=np.float64)
    except ValueError as ex:
        raise CorruptArtifactError(f'CSV table is malformed: {ex}') from ex

    if data.size == 0:
        raise CorruptArtifactError('CSV table has a header but no rows')

    return data


def read_series_file(path: t.Union[str, Path]) -> TimeSeries:
    """
    Load a TimeSeries from a ``.ipa`` binary or ``.csv`` file
    """

    path = Path(path)

    try:
        if path.suffix == '.csv':
            return TimeSeries(table_from_csv(path.read_text()))
        return decode_series(path.read_bytes())
    except OSError as ex:
        raise CorruptArtifactError(f'Cannot read series file {path}: {ex}') from ex


def read_matrix_file(path: t.Union[str, Path]) -> np.ndarray:
    path = Path(path)

    try:
        if path.suffix == '.csv':
            return table_from_csv(path.read_text())
        return decode_matrix(path.read_bytes())
    except OSError as ex:
        raise CorruptArtifactError(f'Cannot read matrix file {path}: {ex}') from ex


class Serializer(ABC):
    @abstractmethod
    async def dump(self, obj: SerializableObjectT, fp: t.Union[t.IO, AsyncFile]) -> None: ...

    @abstractmethod
    async def load(self, fp: t.Union[t.IO, AsyncFile]) -> SerializableObjectT: ...

    @abstractmethod
    def get_default_io(self) -> t.IO: ...


class _PayloadSerializer(Serializer, ABC):
    """
    Serializers that turn the object into one payload and write it at once
    """

    binary: t.ClassVar[bool] = True

    @abstractmethod
    def encode(self, obj: SerializableObjectT) -> t.Union[bytes, str]: ...

    @abstractmethod
    def decode(self, payload: t.Union[bytes, str]) -> SerializableObjectT: ...

    async def dump(self, obj: SerializableObjectT, fp: t.Union[t.IO, AsyncFile]) -> None:
        payload = self.encode(obj)

        if isinstance(fp, AsyncFile):
            await fp.write(payload.encode() if isinstance(payload, str) else payload)
            return

        fp.write(payload)
        fp.seek(0)

    async def load(self, fp: t.Union[t.IO, AsyncFile]) -> SerializableObjectT:
        if isinstance(fp, AsyncFile):
            content = await fp.read()
        else:
            fp.seek(0)
            content = fp.read()

        if not self.binary and isinstance(content, bytes):
            content = content.decode()

        return self.decode(content)

    def get_default_io(self) -> t.IO:
        return io.BytesIO() if self.binary else io.StringIO()


class JSONSerializer(_PayloadSerializer):
    binary = False

    def encode(self, obj: SerializableObjectT) -> str:
        return json.dumps(obj, indent=4, ensure_ascii=False, sort_keys=True)

    def decode(self, payload: str) -> SerializableObjectT:
        try:
            return json.loads(payload)
        except json.JSONDecodeError as ex:
            raise CorruptArtifactError(f'Invalid JSON document: {ex}') from ex


class SeriesSerializer(_PayloadSerializer):
    def encode(self, obj: TimeSeries) -> bytes:
        return encode_series(obj)

    def decode(self, payload: bytes) -> TimeSeries:
        return decode_series(payload)


class MatrixSerializer(_PayloadSerializer):
    def encode(self, obj: np.ndarray) -> bytes:
        return encode_matrix(obj)

    def decode(self, payload: bytes) -> np.ndarray:
        return decode_matrix(payload)


class CsvSerializer(_PayloadSerializer):
    binary = False

    def encode(self, obj: t.Union[TimeSeries, np.ndarray]) -> str:
        return table_to_csv(obj)

    def decode(self, payload: str) -> TimeSeries:
        return TimeSeries(table_from_csv(payload))


class SerializerFactory:
    _serializers: t.ClassVar[t.Dict[DataFormat, t.Type[Serializer]]] = {
        DataFormat.JSON: JSONSerializer,
        DataFormat.SERIES: SeriesSerializer,
        DataFormat.MATRIX: MatrixSerializer,
        DataFormat.CSV: CsvSerializer,
    }

    def from_data_format(self, fmt: DataFormat) -> Serializer:
        return self._serializers[DataFormat(fmt)]()

    def from_extension(self, extension: str) -> Serializer:
        try:
            fmt = DataFormat(extension)
        except ValueError:
            raise SerializerInitializationError(f'No suitable serializer for {extension} extension') from None

        return self.from_data_format(fmt)

    @staticmethod
    def guess_format(obj: SerializableObjectT) -> DataFormat:
        if isinstance(obj, TimeSeries):
            return DataFormat.SERIES

        if isinstance(obj, np.ndarray):
            return DataFormat.MATRIX

        return DataFormat.JSON


serializer_factory = SerializerFactory()
