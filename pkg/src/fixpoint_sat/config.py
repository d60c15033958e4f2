import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv


def _optional_int(value: str | None) -> int | None:
    if value is None or not value.strip():
        return None
    return int(value)


@dataclass(frozen=True)
class AppConfig:
    LOGIC: str = "k"
    AGENTS: int | None = None
    ENGINE: str = "onestep"
    SCHEDULE: str = "adaptive"
    TIMEOUT: float = 60.0
    MAX_NODES: int = 0
    JOBS: int = 1
    OUTPUT_FORMAT: str = "human"
    LOGS_PATH: Path = Path("logs")
    LOG_FILENAME: str | None = None
    LOG_LEVEL: str = "WARNING"
    LOG_MSG_FORMAT: str | None = None
    LOG_DATETIME_FORMAT: str | None = None

    @classmethod
    def from_env(cls) -> 'AppConfig':
        load_dotenv('.env')
        return cls(
            LOGIC=os.getenv("LOGIC", cls.LOGIC),
            AGENTS=_optional_int(os.getenv("AGENTS")),
            ENGINE=os.getenv("ENGINE", cls.ENGINE),
            SCHEDULE=os.getenv("SCHEDULE", cls.SCHEDULE),
            TIMEOUT=float(os.getenv("TIMEOUT", cls.TIMEOUT)),
            MAX_NODES=int(os.getenv("MAX_NODES", cls.MAX_NODES)),
            JOBS=int(os.getenv("JOBS", cls.JOBS)),
            OUTPUT_FORMAT=os.getenv("OUTPUT_FORMAT", cls.OUTPUT_FORMAT),
            LOGS_PATH=Path(os.getenv("LOGS_PATH", str(cls.LOGS_PATH))),
            LOG_FILENAME=os.getenv("LOG_FILENAME") or None,
            LOG_LEVEL=os.getenv("LOG_LEVEL", cls.LOG_LEVEL),
            LOG_MSG_FORMAT=os.getenv("LOG_MSG_FORMAT") or None,
            LOG_DATETIME_FORMAT=os.getenv("LOG_DATETIME_FORMAT") or None,
        )
