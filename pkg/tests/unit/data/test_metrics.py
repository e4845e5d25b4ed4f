"""
Unit tests for the scan recorder
"""

import csv
import math
import os

import pytest

from src.data.metrics import ScanRecorder


@pytest.fixture
def recorder():
    recorder = ScanRecorder("r", ("norm", "defect"))
    for r in (1e-1, 1e-2, 1e-3):
        recorder.collect(r, {"norm": r ** 2, "defect": 3 * r})
    return recorder


@pytest.mark.unit
class TestScanRecorder:
    def test_collect_and_series(self, recorder):
        assert len(recorder) == 3
        assert recorder.get_series("r") == [1e-1, 1e-2, 1e-3]
        assert recorder.get_latest("defect") == pytest.approx(3e-3)
        assert recorder.get_series("defect", limit=2) == pytest.approx([3e-2, 3e-3])
        assert recorder.get_series("unknown") == []
        assert recorder.get_latest("unknown") is None

    def test_missing_metric_is_nan(self):
        recorder = ScanRecorder("r", ("norm",))
        recorder.collect(0.1, {})
        assert math.isnan(recorder.get_latest("norm"))
        assert recorder.loglog_slope("norm") is None

    def test_empty_recorder_is_falsy_but_usable(self):
        recorder = ScanRecorder("r", ("norm",))
        assert len(recorder) == 0
        assert recorder.rows() == []

    def test_loglog_slope(self, recorder):
        assert recorder.loglog_slope("norm") == pytest.approx(2.0)
        assert recorder.loglog_slope("defect") == pytest.approx(1.0)

    def test_monotone(self, recorder):
        assert recorder.is_monotone("norm")
        assert not recorder.is_monotone("norm", decreasing_with_axis=True)
        recorder.collect(1.0, {"norm": 1e-9, "defect": 3.0})
        assert not recorder.is_monotone("norm")

    def test_rows(self, recorder):
        assert recorder.rows()[0] == {"r": 1e-1, "norm": pytest.approx(1e-2), "defect": pytest.approx(0.3)}

    def test_export_csv(self, recorder, temp_dir):
        path = recorder.export_csv(os.path.join(temp_dir, "scan", "limit.csv"))
        with open(path, newline='') as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["r", "norm", "defect"]
        assert len(rows) == 4
        assert float(rows[2][1]) == pytest.approx(1e-4)
