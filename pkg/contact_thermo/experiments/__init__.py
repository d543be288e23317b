"""Bundled experiment configurations."""

from pathlib import Path
from typing import Dict, List

from ..core.exceptions import ConfigurationError

EXPERIMENTS_DIR = Path(__file__).resolve().parent


def bundled_experiments() -> Dict[str, Path]:
    """Map experiment names (file stems) to their YAML files."""
    return {path.stem: path for path in sorted(EXPERIMENTS_DIR.glob("*.yaml"))}


def bundled_names() -> List[str]:
    return list(bundled_experiments())


def resolve_experiment(name_or_path: str) -> Path:
    """
    Resolve a bundled experiment name or a filesystem path.

    Raises:
        ConfigurationError: If neither a file nor a bundled name matches
    """
    path = Path(name_or_path)
    if path.is_file():
        return path
    bundled = bundled_experiments()
    stem = path.name[:-5] if path.name.endswith(".yaml") else path.name
    if stem in bundled:
        return bundled[stem]
    raise ConfigurationError(
        f"No experiment file or bundled experiment named '{name_or_path}' "
        f"(bundled: {', '.join(bundled)})",
        path=path,
    )
