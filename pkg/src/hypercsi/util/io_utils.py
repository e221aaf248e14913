"""
IO utils read and write the on-disk formats: datasets (HSD1 binary or CSV),
headerless matrix CSVs, JSON reports and JSON-lines diagnostics.

Dataset formats are dispatched on the file extension through a handler
registry, so callers only deal with paths:

    data.hsd  magic 'HSD1', little-endian uint32 M, L, N_truth (0 if unknown),
              then M*L little-endian float64, pixel-major (pixel n contiguous)
    data.csv  L rows x M columns, no header
"""

import json
import os
from typing import Callable, Iterable

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel

from hypercsi.cache import config_value
from hypercsi.structures.dataset import SpectralDataset
from hypercsi.structures.enums import DataFormat
from hypercsi.structures.errors import DataFormatError

HSD_MAGIC = b"HSD1"
HSD_HEADER = np.dtype("<u4")
HSD_VALUE = np.dtype("<f8")

dataset_readers: dict[str, Callable] = {}
dataset_writers: dict[str, Callable] = {}


def dataset_handler(file_type: str, registry: dict[str, Callable]):
    if file_type in registry:
        raise ValueError(f"Handler for dataset file type {file_type} already registered!")

    def decorate(fn):
        if not callable(fn):
            raise TypeError(f"Cannot register type {type(fn)} as handler! Expected callable!")

        registry[file_type] = fn

        return fn

    return decorate


def resolve_format(path: str, fmt: str | DataFormat | None = None) -> str:
    """
    The dataset format for 'path': 'fmt' when given, otherwise the file extension.
    """

    if fmt is not None:
        return DataFormat(fmt).value

    extension = os.path.splitext(path)[1].lstrip(".").lower()
    if extension not in DataFormat.list():
        raise DataFormatError(f"Cannot infer dataset format of {path}! Known extensions: {DataFormat.list()}")

    return extension


def read_dataset(path: str, fmt: str | DataFormat | None = None) -> SpectralDataset:
    """
    Read a dataset file.

    Raises:
        FileNotFoundError: No file at 'path'
        DataFormatError: The file is malformed
    """

    if not os.path.exists(path):
        raise FileNotFoundError(f"Cannot locate dataset {path}! Working dir: {os.getcwd()}")

    data = dataset_readers[resolve_format(path, fmt)](path)
    logger.debug(f"[IO] Read {data.n_bands} x {data.n_pixels} dataset from {path}")
    return data


def write_dataset(path: str, data: SpectralDataset, fmt: str | DataFormat | None = None) -> None:
    _ensure_parent(path)
    dataset_writers[resolve_format(path, fmt)](path, data)
    logger.debug(f"[IO] Wrote {data.n_bands} x {data.n_pixels} dataset to {path}")


@dataset_handler(DataFormat.BINARY.value, dataset_readers)
def read_hsd(path: str) -> SpectralDataset:
    with open(path, "rb") as f:
        raw = f.read()

    header_size = len(HSD_MAGIC) + 3 * HSD_HEADER.itemsize
    if len(raw) < header_size or raw[: len(HSD_MAGIC)] != HSD_MAGIC:
        raise DataFormatError(f"{path} is not an HSD1 file!")

    M, L, n_truth = (int(v) for v in np.frombuffer(raw, dtype=HSD_HEADER, count=3, offset=len(HSD_MAGIC)))

    expected = header_size + M * L * HSD_VALUE.itemsize
    if len(raw) != expected:
        raise DataFormatError(f"{path} holds {len(raw)} bytes, header M={M}, L={L} requires {expected}!")

    values = np.frombuffer(raw, dtype=HSD_VALUE, count=M * L, offset=header_size)
    name = os.path.splitext(os.path.basename(path))[0]
    return SpectralDataset(values.reshape(L, M).T, n_truth=n_truth or None, name=name)


@dataset_handler(DataFormat.BINARY.value, dataset_writers)
def write_hsd(path: str, data: SpectralDataset) -> None:
    header = np.array([data.n_bands, data.n_pixels, data.n_truth or 0], dtype=HSD_HEADER)
    values = np.ascontiguousarray(data.pixels.T, dtype=HSD_VALUE)

    with open(path, "wb") as f:
        f.write(HSD_MAGIC)
        f.write(header.tobytes())
        f.write(values.tobytes())


@dataset_handler(DataFormat.CSV.value, dataset_readers)
def read_dataset_csv(path: str) -> SpectralDataset:
    name = os.path.splitext(os.path.basename(path))[0]
    return SpectralDataset.from_pixel_rows(read_matrix_csv(path), name=name)


@dataset_handler(DataFormat.CSV.value, dataset_writers)
def write_dataset_csv(path: str, data: SpectralDataset) -> None:
    write_matrix_csv(path, data.pixels.T)


def read_matrix_csv(path: str) -> np.ndarray:
    """
    Read a headerless numeric CSV into a 2-D float array. Values written by
    write_matrix_csv round-trip exactly.
    """

    if not os.path.exists(path):
        raise FileNotFoundError(f"Cannot locate matrix file {path}! Working dir: {os.getcwd()}")

    try:
        frame = pd.read_csv(path, header=None, dtype=float, float_precision="round_trip")
    except (pd.errors.EmptyDataError, pd.errors.ParserError, ValueError) as e:
        raise DataFormatError(f"Cannot parse {path} as a numeric matrix: {e}") from e

    matrix = frame.to_numpy()
    if not np.all(np.isfinite(matrix)):
        raise DataFormatError(f"{path} contains missing or non-finite values!")

    return matrix


def write_matrix_csv(path: str, matrix: np.ndarray, float_format: str | None = None) -> None:
    """
    Write a 2-D array as a headerless CSV with a fixed float format, so identical
    arrays produce identical bytes.
    """

    _ensure_parent(path)
    pd.DataFrame(np.atleast_2d(matrix)).to_csv(
        path,
        header=False,
        index=False,
        float_format=config_value("io.float_format", float_format),
        lineterminator="\n",
    )


def write_json(path: str, record: BaseModel | dict) -> None:
    _ensure_parent(path)
    payload = record.model_dump(mode="json") if isinstance(record, BaseModel) else record

    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def read_json(path: str) -> dict:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Cannot locate {path}! Working dir: {os.getcwd()}")

    with open(path, "r") as f:
        try:
            return json.load(f)
        except json.decoder.JSONDecodeError as e:
            logger.error(f"JSON formatting error in {path}!")
            raise DataFormatError(f"{path} is not valid JSON: {e}") from e


def write_jsonl(path: str, records: Iterable[BaseModel]) -> None:
    """
    Write records one JSON object per line, replacing any existing file.
    """

    _ensure_parent(path)
    with open(path, "w") as f:
        for record in records:
            f.write(record.model_dump_json())
            f.write("\n")


def _ensure_parent(path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
