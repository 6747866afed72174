"""
Configuration management for the permstat toolkit.

Settings are a Pydantic model whose defaults come from environment variables
(optionally loaded from a .env file), validated on construction.
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

# Load environment variables from .env file if it exists
env_path = Path(".") / ".env"
load_dotenv(dotenv_path=env_path)

# Hard ceiling for the enumeration cap: 12! permutations is already ~479M.
MAX_ENUM_CAP = 12


class Settings(BaseModel):
    """Application settings loaded from environment variables."""

    # Environment values arrive as field defaults.
    model_config = ConfigDict(validate_default=True)

    ENUM_CAP: int = Field(
        int(os.environ.get("PERMSTAT_ENUM_CAP", "10")),
        description="Largest n for which S_n may be enumerated",
    )
    WORKERS: int = Field(
        int(os.environ.get("PERMSTAT_WORKERS", "1")),
        description="Worker processes used to build joint distributions (1 = serial)",
    )
    PARALLEL_MIN_N: int = Field(
        int(os.environ.get("PERMSTAT_PARALLEL_MIN_N", "7")),
        description="Smallest n for which the worker pool is used",
    )
    LOG_LEVEL: str = Field(
        os.environ.get("PERMSTAT_LOG_LEVEL", "WARNING"),
        description="Default log level for the command-line interface",
    )

    @field_validator("ENUM_CAP")
    @classmethod
    def validate_enum_cap(cls, v):
        if not 0 <= v <= MAX_ENUM_CAP:
            raise ValueError(f"ENUM_CAP must be between 0 and {MAX_ENUM_CAP}")
        return v

    @field_validator("WORKERS")
    @classmethod
    def validate_workers(cls, v):
        if v < 1:
            raise ValueError("WORKERS must be at least 1")
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v):
        level = v.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"LOG_LEVEL must be a standard level name, got {v!r}")
        return level


# Create a global instance of settings
settings = Settings()
