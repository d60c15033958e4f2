import os
from pathlib import Path

import pytest

from fixpoint_sat.config import AppConfig

VARIABLES = (
    "LOGIC", "AGENTS", "ENGINE", "SCHEDULE", "TIMEOUT", "MAX_NODES", "JOBS", "OUTPUT_FORMAT",
    "LOGS_PATH", "LOG_FILENAME", "LOG_LEVEL", "LOG_MSG_FORMAT", "LOG_DATETIME_FORMAT",
)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """No configuration variables and no .env file in the working directory."""
    monkeypatch.setattr(os, "environ", {key: value for key, value in os.environ.items() if key not in VARIABLES})
    monkeypatch.chdir(tmp_path)
    return monkeypatch


class TestAppConfig:
    def test_defaults(self, clean_env):
        config = AppConfig.from_env()
        assert config == AppConfig()
        assert config.LOG_LEVEL == "WARNING"
        assert config.AGENTS is None
        assert config.LOGS_PATH == Path("logs")

    def test_environment_overrides(self, clean_env):
        clean_env.setenv("LOGIC", "graded")
        clean_env.setenv("AGENTS", "3")
        clean_env.setenv("TIMEOUT", "2.5")
        clean_env.setenv("MAX_NODES", "1000")
        clean_env.setenv("LOG_FILENAME", "solver.log")
        config = AppConfig.from_env()
        assert config.LOGIC == "graded"
        assert config.AGENTS == 3
        assert config.TIMEOUT == 2.5
        assert config.MAX_NODES == 1000
        assert config.LOG_FILENAME == "solver.log"

    def test_empty_values_fall_back(self, clean_env):
        clean_env.setenv("AGENTS", " ")
        clean_env.setenv("LOG_FILENAME", "")
        config = AppConfig.from_env()
        assert config.AGENTS is None
        assert config.LOG_FILENAME is None

    def test_dotenv_file(self, clean_env, tmp_path):
        (tmp_path / ".env").write_text("ENGINE=tableau\nJOBS=4\n", encoding="utf-8")
        config = AppConfig.from_env()
        assert config.ENGINE == "tableau"
        assert config.JOBS == 4

    def test_invalid_number(self, clean_env):
        clean_env.setenv("JOBS", "many")
        with pytest.raises(ValueError):
            AppConfig.from_env()

    def test_frozen(self):
        config = AppConfig()
        with pytest.raises(AttributeError):
            config.LOGIC = "kd"  # type: ignore[misc]
