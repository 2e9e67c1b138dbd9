import pytest

from src.cremona.cli.literal import NonHomogeneous
from src.cremona.cli.loading.loader import Loader
from src.cremona.cli.loading.strategies.map_file_load_strategy import MapFileLoadStrategy
from src.cremona.cli.loading.strategies.yaml_params_load_strategy import YamlParamsLoadStrategy


class TestMapFileLoadStrategy:
    """Test suite for map files."""

    def test_load(self, logger_mock, temp_maps_file):
        literals = Loader(MapFileLoadStrategy(logger_mock)).load_data(file_path=temp_maps_file)
        assert len(literals) == 6
        assert all(lit.field == "QQ" and lit.map_tuple.degree == 2 for lit in literals)

    def test_field(self, logger_mock, temp_maps_file):
        literals = MapFileLoadStrategy(logger_mock).load(file_path=temp_maps_file, field="RR")
        assert literals[0].field == "RR"

    def test_bad_line_reports_location(self, logger_mock, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("[x0 : x1 : x2]\n[x0^2 + x1 : x1^2 : x2^2]\n")
        with pytest.raises(NonHomogeneous):
            MapFileLoadStrategy(logger_mock).load(file_path=str(path))
        assert ":2:" in logger_mock.error.call_args[0][0]

    def test_missing_file(self, logger_mock, tmp_path):
        with pytest.raises(FileNotFoundError):
            MapFileLoadStrategy(logger_mock).load(file_path=str(tmp_path / "none.txt"))

    def test_missing_path(self, logger_mock):
        with pytest.raises(ValueError):
            MapFileLoadStrategy(logger_mock).load()


class TestYamlParamsLoadStrategy:
    """Test suite for scenario parameter files."""

    def test_load(self, logger_mock, temp_params_file):
        assert YamlParamsLoadStrategy(logger_mock).load(file_path=temp_params_file) == {
            "m_from": 3,
            "m_to": 5,
        }

    def test_empty_file(self, logger_mock, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert YamlParamsLoadStrategy(logger_mock).load(file_path=str(path)) == {}

    def test_not_a_mapping(self, logger_mock, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError):
            YamlParamsLoadStrategy(logger_mock).load(file_path=str(path))
