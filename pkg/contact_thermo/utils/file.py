"""
File utilities for contact-thermo.

Reading configuration text with encoding detection and writing run
artifacts with proper error mapping.
"""

from pathlib import Path
from typing import Optional, Union

import chardet

from ..core.exceptions import FilePermissionError, FileReadError, FileWriteError
from .logging_config import get_logger

logger = get_logger(__name__)


def read_file_with_fallback(
    file_path: Union[Path, str], encoding: Optional[str] = None
) -> str:
    """
    Read a text file, detecting the encoding when UTF-8 fails.

    Args:
        file_path: Path to file to read
        encoding: Preferred encoding (will attempt this first)

    Returns:
        File contents as string

    Raises:
        FileReadError: If file cannot be read
        FilePermissionError: If file access is denied
    """
    path = Path(file_path)

    if not path.exists():
        raise FileReadError(f"File does not exist: {path}", path=path)
    if not path.is_file():
        raise FileReadError(f"Path is not a file: {path}", path=path)

    try:
        raw_data = path.read_bytes()
    except PermissionError:
        raise FilePermissionError(path, "read")
    except OSError as e:
        raise FileReadError(f"Failed to read file {path}: {e}", path=path)

    for enc in [encoding] if encoding else ["utf-8"]:
        try:
            return raw_data.decode(enc)
        except (UnicodeDecodeError, LookupError):
            continue

    detected = chardet.detect(raw_data)
    detected_encoding = detected.get("encoding")
    if detected_encoding:
        try:
            text = raw_data.decode(detected_encoding)
            logger.debug("Decoded %s as %s", path, detected_encoding)
            return text
        except (UnicodeDecodeError, LookupError):
            pass

    logger.warning("Could not detect encoding of %s, replacing bad bytes", path)
    return raw_data.decode("utf-8", errors="replace")


def write_text_file(file_path: Union[Path, str], content: str) -> Path:
    """
    Write text to a file, creating parent directories.

    Output is written with newline="\\n" so artifacts are byte-identical
    across platforms.

    Args:
        file_path: Destination path
        content: Text to write

    Returns:
        The written path

    Raises:
        FileWriteError: If the file cannot be written
        FilePermissionError: If file access is denied
    """
    path = Path(file_path)
    if not ensure_directory_exists(path.parent):
        raise FileWriteError(path, "cannot create parent directory")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
    except PermissionError:
        raise FilePermissionError(path, "write")
    except OSError as e:
        raise FileWriteError(path, str(e))
    return path


def ensure_directory_exists(dir_path: Union[Path, str]) -> bool:
    """
    Ensure a directory exists, creating it if necessary.

    Args:
        dir_path: Path to directory

    Returns:
        True if directory exists or was created successfully
    """
    try:
        Path(dir_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError:
        return False
