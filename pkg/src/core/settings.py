import os
from enum import StrEnum

from dotenv import find_dotenv
from pydantic import Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=find_dotenv(),
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        extra="ignore",
        validate_default=False,
    )
    LOG_LEVEL: str = "INFO"

    # Run persistence
    OUTPUT_DIR: str = Field(
        "runs",
        description="Default output directory for cli runs. Override with the OUTPUT_DIR variable.",
    )
    OUTPUT_FORMAT: OutputFormat = OutputFormat.JSON  # Options: OutputFormat.CSV or JSON

    # Integrator tolerances
    RTOL: float = 1e-10
    ATOL: float = 1e-12
    RESCALE_EPSILON: float = 0.05
    TANGENCY_TOL: float = 1e-6

    # Collocation is used instead of initial-value shooting below this epsilon
    COLLOCATION_EPSILON: float = 0.1
    COLLOCATION_TOL: float = 1e-8
    COLLOCATION_MAX_NODES: int = 200_000

    # Alpha scans
    SCAN_POINTS: int = 4000
    SCAN_STABLE_ROUNDS: int = 2
    SCAN_MAX_POINTS: int = 64_000
    SCAN_CHUNK: int = 256
    SWEEP_POINTS: int = 600
    FD_DELTA: float = 1e-6

    # Parallelism and reproducibility
    WORKERS: int | None = None
    SEED: int = 0

    # Chart chain of the itinerary construction
    CHART_SPAN: float = 1e-2
    CHART_MIN_WIDTH: float = 1e-6
    CHART_MAX_DEPTH: int = 96

    @computed_field  # type: ignore[prop-decorator]
    @property
    def WORKER_COUNT(self) -> int:
        return self.WORKERS or os.cpu_count() or 1


settings = Settings()
