"""
Tests for the Settings module.
"""
import os
from unittest.mock import patch

from core.settings import OutputFormat, Settings


def test_settings_default_values():
    """Test default tolerances, scan sizes and output settings."""
    settings = Settings(_env_file=None)
    assert settings.RTOL == 1e-10
    assert settings.ATOL == 1e-12
    assert settings.COLLOCATION_EPSILON == 0.1
    assert settings.SCAN_POINTS == 4000
    assert settings.SCAN_STABLE_ROUNDS == 2
    assert settings.TANGENCY_TOL == 1e-6
    assert settings.FD_DELTA == 1e-6
    assert settings.SEED == 0
    assert settings.OUTPUT_FORMAT == OutputFormat.JSON


def test_settings_worker_count(mock_env):
    """WORKER_COUNT falls back to the CPU count when WORKERS is unset."""
    settings = Settings(_env_file=None)
    assert settings.WORKERS is None
    assert settings.WORKER_COUNT >= 1

    settings = Settings(WORKERS=3, _env_file=None)
    assert settings.WORKER_COUNT == 3


def test_settings_from_environment():
    """Test settings read from environment variables."""
    with patch.dict(
        os.environ,
        {
            "OUTPUT_DIR": "/tmp/duffing-runs",
            "OUTPUT_FORMAT": "csv",
            "SCAN_POINTS": "1000",
            "CHART_SPAN": "0.005",
        },
        clear=True,
    ):
        settings = Settings(_env_file=None)
        assert settings.OUTPUT_DIR == "/tmp/duffing-runs"
        assert settings.OUTPUT_FORMAT == OutputFormat.CSV
        assert settings.SCAN_POINTS == 1000
        assert settings.CHART_SPAN == 0.005


def test_settings_ignore_empty_values():
    """Empty environment values keep the defaults."""
    with patch.dict(os.environ, {"RTOL": "", "LOG_LEVEL": ""}, clear=True):
        settings = Settings(_env_file=None)
        assert settings.RTOL == 1e-10
        assert settings.LOG_LEVEL == "INFO"
