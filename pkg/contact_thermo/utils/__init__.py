"""Utility helpers: logging and file handling."""

from .file import ensure_directory_exists, read_file_with_fallback, write_text_file
from .logging_config import get_logger, setup_logging

__all__ = [
    "ensure_directory_exists",
    "read_file_with_fallback",
    "write_text_file",
    "get_logger",
    "setup_logging",
]
