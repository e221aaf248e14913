import json

import numpy as np
import pytest

from hypercsi.structures.dataset import SpectralDataset
from hypercsi.structures.errors import DataFormatError
from hypercsi.structures.records import StageTiming
from hypercsi.util import io_utils


def sample_dataset() -> SpectralDataset:
    rng = np.random.default_rng(5)
    return SpectralDataset(rng.uniform(size=(7, 11)) / 3, n_truth=3, name="data")


@pytest.mark.parametrize("extension", ["hsd", "csv"])
def test_dataset_files_are_exact(tmp_path, extension):
    data = sample_dataset()
    path = str(tmp_path / f"data.{extension}")

    io_utils.write_dataset(path, data)
    loaded = io_utils.read_dataset(path)

    assert np.array_equal(loaded.pixels, data.pixels)


def test_hsd_layout(tmp_path):
    data = SpectralDataset(np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]), n_truth=2)
    path = tmp_path / "data.hsd"

    io_utils.write_dataset(str(path), data)
    raw = path.read_bytes()

    assert raw[:4] == b"HSD1"
    assert np.frombuffer(raw, dtype="<u4", count=3, offset=4).tolist() == [2, 3, 2]
    # Pixel-major: pixel 0 is (1, 4)
    assert np.frombuffer(raw, dtype="<f8", offset=16).tolist() == [1.0, 4.0, 2.0, 5.0, 3.0, 6.0]
    assert io_utils.read_dataset(str(path)).n_truth == 2


def test_hsd_unknown_truth(tmp_path):
    path = str(tmp_path / "data.hsd")
    io_utils.write_dataset(path, SpectralDataset(np.ones((2, 2))))

    assert io_utils.read_dataset(path).n_truth is None


def test_hsd_truncated(tmp_path):
    path = tmp_path / "data.hsd"
    io_utils.write_dataset(str(path), sample_dataset())
    path.write_bytes(path.read_bytes()[:-8])

    with pytest.raises(DataFormatError):
        io_utils.read_dataset(str(path))


def test_hsd_bad_magic(tmp_path):
    path = tmp_path / "data.hsd"
    path.write_bytes(b"NOPE" + bytes(12))

    with pytest.raises(DataFormatError):
        io_utils.read_dataset(str(path))


def test_explicit_format_overrides_extension(tmp_path):
    path = str(tmp_path / "cube.bin")
    io_utils.write_dataset(path, sample_dataset(), "hsd")

    assert io_utils.read_dataset(path, "hsd").n_pixels == 11

    with pytest.raises(DataFormatError):
        io_utils.read_dataset(path)


def test_missing_dataset(tmp_path):
    with pytest.raises(FileNotFoundError):
        io_utils.read_dataset(str(tmp_path / "absent.hsd"))


def test_matrix_csv_is_deterministic(tmp_path):
    matrix = np.array([[0.1, 1 / 3], [2.0, 1e-20]])
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")

    io_utils.write_matrix_csv(a, matrix)
    io_utils.write_matrix_csv(b, matrix.copy())

    assert open(a, "rb").read() == open(b, "rb").read()
    assert np.array_equal(io_utils.read_matrix_csv(a), matrix)


bad_csv_cases = ["", "1,2\n3,x\n", "1,2\n3\n"]


@pytest.mark.parametrize("content", bad_csv_cases)
def test_bad_matrix_csv(tmp_path, content):
    path = tmp_path / "bad.csv"
    path.write_text(content)

    with pytest.raises(DataFormatError):
        io_utils.read_matrix_csv(str(path))


def test_duplicate_handler_rejected():
    with pytest.raises(ValueError):
        io_utils.dataset_handler("hsd", io_utils.dataset_readers)


def test_json_and_jsonl(tmp_path):
    record = StageTiming(stage="affine_set_fit", seconds=0.5)

    io_utils.write_json(str(tmp_path / "out" / "timing.json"), record)
    assert io_utils.read_json(str(tmp_path / "out" / "timing.json")) == {"seconds": 0.5, "stage": "affine_set_fit"}

    path = str(tmp_path / "log.jsonl")
    io_utils.write_jsonl(path, [record, record])

    lines = open(path).read().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["stage"] == "affine_set_fit"

    io_utils.write_jsonl(path, [record])
    assert len(open(path).read().splitlines()) == 1


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")

    with pytest.raises(DataFormatError):
        io_utils.read_json(str(path))
