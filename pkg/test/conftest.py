"""Pytest configuration and shared fixtures."""

from unittest.mock import MagicMock

import pytest

from src.utils.Config import Config
from test.fixtures.sample_maps import SampleLiterals, SampleMaps


@pytest.fixture
def logger_mock():
    """Mock logger for testing."""
    logger = MagicMock()
    logger.debug = MagicMock()
    logger.debugg = MagicMock()
    logger.debuggg = MagicMock()
    logger.info = MagicMock()
    logger.warning = MagicMock()
    logger.error = MagicMock()
    return logger


@pytest.fixture
def config(logger_mock):
    """Configuration read from conf/defaults.ini."""
    return Config(logger_mock, Config.DEFAULTS_PATH)


@pytest.fixture
def sigma():
    return SampleMaps.sigma()


@pytest.fixture
def jonquieres():
    return SampleMaps.jonquieres()


@pytest.fixture
def certified_pairs():
    return SampleMaps.certified_pairs()


@pytest.fixture
def literal_corpus():
    return SampleLiterals.corpus()


@pytest.fixture
def temp_maps_file(tmp_path):
    """A map file holding the first members of the pointwise-failure family."""
    lines = ["# pointwise failure, m = 1..6", ""]
    lines += [f"[x0^2 : x0*x1 + 1/{m}*x2^2 : x0*x2]" for m in range(1, 7)]
    maps_file = tmp_path / "maps.txt"
    maps_file.write_text("\n".join(lines) + "\n")
    return str(maps_file)


@pytest.fixture
def temp_params_file(tmp_path):
    params_file = tmp_path / "params.yaml"
    params_file.write_text("m_from: 3\nm_to: 5\n")
    return str(params_file)
