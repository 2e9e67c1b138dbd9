import json
from fractions import Fraction
from unittest.mock import MagicMock

import numpy as np
import pandas as pd
import pytest

from src.cremona.birmap.birational_map import EvalKind, EvalResult
from src.cremona.cli.exporting.exporter import Exporter
from src.cremona.cli.exporting.strategies.csv_export_strategy import CsvExportStrategy, points_frame
from src.cremona.cli.exporting.strategies.json_export_strategy import (
    SCHEMA_VERSION,
    JsonExportStrategy,
    render,
    to_jsonable,
)
from src.cremona.padic.padic_num import PadicNum
from src.cremona.spacefill.oscillating import CloudReport


class TestToJsonable:
    """Test suite for report conversion to plain JSON values."""

    def test_scalars(self):
        assert to_jsonable(Fraction(1, 3)) == "1/3"
        assert to_jsonable(complex(1, -2)) == [1.0, -2.0]
        assert to_jsonable(float("nan")) == "nan"
        assert to_jsonable(float("-inf")) == "-inf"
        assert to_jsonable(np.int64(4)) == 4
        assert to_jsonable(np.bool_(True)) is True

    def test_floats_round_trip(self):
        for value in (0.1, 1 / 3, 2.0**-40, 123456.789):
            assert to_jsonable(value) == value

    def test_enums_and_dataclasses(self):
        result = EvalResult(EvalKind.POINT, (Fraction(1), Fraction(1, 2), Fraction(0)))
        assert to_jsonable(result) == {"kind": "Point", "point": ["1", "1/2", "0"]}

    def test_hidden_fields_are_omitted(self):
        report = CloudReport(0.1, 6, False, np.zeros(3), np.zeros((3, 3)), 0.25, 100)
        out = to_jsonable(report)
        assert "params" not in out and "points" not in out
        assert out["covering_radius"] == 0.25

    def test_padic_text(self):
        assert to_jsonable(PadicNum.from_rational(Fraction(1, 9), 3, 3)) == "3^-2 * (1 + 0*3 + 0*3^2)"

    def test_sets_are_sorted(self):
        assert to_jsonable({3, 1, 2}) == [1, 2, 3]


class TestRender:
    """Test suite for schema-versioned JSON text."""

    def test_schema_key(self):
        payload = json.loads(render({"a": 1}))
        assert payload == {"schema": SCHEMA_VERSION, "a": 1}
        assert json.loads(render([1, 2]))["result"] == [1, 2]

    def test_deterministic(self):
        data = {"b": [0.1, Fraction(2, 3)], "a": {"z": 1, "y": complex(0, 1)}}
        assert render(data) == render(dict(reversed(list(data.items()))))


class TestExporters:
    """Test suite for export strategies."""

    def test_json_export(self, logger_mock, tmp_path):
        target = tmp_path / "out" / "report.json"
        Exporter(JsonExportStrategy(logger_mock)).export_data({"value": 0.5}, target)
        assert json.loads(target.read_text()) == {"schema": SCHEMA_VERSION, "value": 0.5}
        logger_mock.info.assert_called_once()

    def test_csv_export_complex(self, logger_mock, tmp_path):
        target = tmp_path / "cloud.csv"
        points = np.array([[1 + 1j, 0, 0], [0, 1, 0.5j]])
        Exporter(CsvExportStrategy(logger_mock)).export_data(points, target)
        frame = pd.read_csv(target)
        assert list(frame.columns) == ["x0_re", "x0_im", "x1_re", "x1_im", "x2_re", "x2_im"]
        assert frame["x2_im"].tolist() == [0.0, 0.5]

    def test_points_frame_real(self):
        frame = points_frame(np.array([[1.0, 2.0]]))
        assert list(frame.columns) == ["x0", "x1"]

    def test_strategy_swap(self, logger_mock, tmp_path):
        exporter = Exporter(JsonExportStrategy(logger_mock))
        exporter.set_strategy(CsvExportStrategy(logger_mock))
        exporter.export_data(pd.DataFrame({"a": [1]}), tmp_path / "t.csv")
        assert (tmp_path / "t.csv").exists()

    def test_export_failure_logged(self, logger_mock, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        with pytest.raises(Exception):
            JsonExportStrategy(logger_mock).export({"a": 1}, blocker / "report.json")
        logger_mock.error.assert_called_once()
