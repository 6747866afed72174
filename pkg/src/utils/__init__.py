"""Utilities for the permstat project."""

from src.utils.logging_utils import (
    InvalidDescriptorError,
    InvalidInputError,
    PermstatError,
    RangeError,
    ResourceLimitError,
    log_exceptions,
    setup_logging,
)

__all__ = [
    "setup_logging",
    "log_exceptions",
    "PermstatError",
    "InvalidInputError",
    "InvalidDescriptorError",
    "RangeError",
    "ResourceLimitError",
]
