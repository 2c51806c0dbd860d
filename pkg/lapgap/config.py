import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables from .env file
load_dotenv()

# Graphs are stored as one machine word per adjacency row.
MAX_VERTICES = 64
# Largest n swept exhaustively without --long-run.
EXHAUSTIVE_MAX_N = 7

ACCEPT_TOL = 1e-9  # an inequality holds
TIGHT_TOL = 1e-12  # an inequality is an equality
EIGENPAIR_TOL = 1e-10
MULTIPLICITY_TOL = 1e-8
TRACE_TOL = 1e-8

DEFAULT_EIGEN_TOL = 1e-12
DEFAULT_MAX_SWEEPS = 100

ENV_PREFIX = "LAPGAP_"


def _env(name: str) -> Optional[str]:
    value = os.environ.get(ENV_PREFIX + name)
    return value if value not in (None, "") else None


def _env_bool(name: str, default: bool) -> bool:
    value = _env(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseModel):
    """Runtime settings for sweeps and eigensolves."""

    workers: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    chunk_size: int = Field(default=16384, ge=1, description="Edge bitmasks per worker task")
    batch_size: int = Field(default=2048, ge=1, description="Graphs per batched eigensolve")
    eigen_tol: float = Field(default=DEFAULT_EIGEN_TOL, gt=0)
    max_sweeps: int = Field(default=DEFAULT_MAX_SWEEPS, ge=1)
    log_level: str = "INFO"
    progress: bool = True

    @classmethod
    def from_env(cls, **overrides) -> "Settings":
        """
        Build settings from ``LAPGAP_*`` environment variables.

        Args:
            overrides: Explicit values (e.g. from CLI flags); ``None`` entries are ignored.

        Returns:
            The validated settings.
        """
        values = {}
        for field, name in (
            ("workers", "WORKERS"),
            ("chunk_size", "CHUNK_SIZE"),
            ("batch_size", "BATCH_SIZE"),
            ("max_sweeps", "MAX_SWEEPS"),
        ):
            raw = _env(name)
            if raw is not None:
                values[field] = int(raw)
        raw_tol = _env("EIGEN_TOL")
        if raw_tol is not None:
            values["eigen_tol"] = float(raw_tol)
        raw_level = _env("LOG_LEVEL")
        if raw_level is not None:
            values["log_level"] = raw_level.upper()
        values["progress"] = _env_bool("PROGRESS", True)
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)
