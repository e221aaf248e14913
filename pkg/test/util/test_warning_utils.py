import threading
import warnings

import pytest

from hypercsi.structures.errors import RankDeficientData, SpectraClamped
from hypercsi.util.warning_utils import recording_warnings, warn


def test_warn_is_recorded_and_emitted():
    with recording_warnings() as recorded:
        with pytest.warns(SpectraClamped, match="clamped"):
            warn("3 entries clamped", SpectraClamped)

    assert recorded == ["SpectraClamped: 3 entries clamped"]


def test_warn_without_recorder():
    with pytest.warns(RankDeficientData):
        warn("rank 1 of 2", RankDeficientData)


def test_recorders_nest():
    with recording_warnings() as outer:
        with pytest.warns(UserWarning):
            warn("first", UserWarning)
            with recording_warnings() as inner:
                warn("second", UserWarning)
            warn("third", UserWarning)

    assert outer == ["UserWarning: first", "UserWarning: third"]
    assert inner == ["UserWarning: second"]


def test_recorders_are_per_thread():
    barrier = threading.Barrier(2)
    results = {}

    def record(name):
        with recording_warnings() as recorded:
            barrier.wait()
            warn(f"from {name}", UserWarning)
            barrier.wait()
        results[name] = recorded

    filters = list(warnings.filters)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        workers = [threading.Thread(target=record, args=(name,)) for name in ("a", "b")]
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()

    assert results == {"a": ["UserWarning: from a"], "b": ["UserWarning: from b"]}
    assert list(warnings.filters) == filters
