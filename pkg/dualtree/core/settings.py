"""Lab settings management."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict

from . import utils


def settings_file() -> Path:
    return utils.app_data_dir() / "settings.json"


@dataclass
class LabSettings:
    """Search bounds and run preferences."""

    restriction_budget: int = 4096
    depth_cap: int = 12
    bfs_limit: int = 200_000
    power_cap: int = 100_000
    lambda_scan_cap: int = 100_000
    check_levels: int = 8
    search_bound: int = 64
    workers: int = 1
    journal: bool = False

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


DEFAULTS = LabSettings()


def load_settings(path: Path | None = None) -> LabSettings:
    """Load settings from disk."""
    target = path or settings_file()
    data = utils.read_json(target, {})
    settings = LabSettings()
    if not isinstance(data, dict):
        return settings
    for field in fields(LabSettings):
        if field.name not in data:
            continue
        default = getattr(settings, field.name)
        value = data[field.name]
        try:
            setattr(settings, field.name, bool(value) if isinstance(default, bool) else int(value))
        except (TypeError, ValueError):
            continue
    return settings


def save_settings(settings: LabSettings, path: Path | None = None) -> None:
    """Persist settings."""
    target = path or settings_file()
    utils.write_json(target, settings.as_dict())
