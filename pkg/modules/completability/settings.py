"""
Load completability settings from YAML: bundled defaults, then an optional user file on top.

"""

import dataclasses
import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from completability.paths import get_default_settings_path, get_user_settings_path

_LOGGER = logging.getLogger(__name__)

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    trials: int = 3
    enumeration_cap: int = 8
    prefilter: bool = True
    parallel: bool = False
    workers: int = 4
    timings: bool = False
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        for settings_field in fields(self):
            value = getattr(self, settings_field.name)
            expected = settings_field.type if isinstance(settings_field.type, type) else type(settings_field.default)
            if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
                raise ValueError(f"Setting '{settings_field.name}' must be {expected.__name__}, got {value!r}")
        if self.seed < 0:
            raise ValueError(f"Setting 'seed' must be nonnegative, got {self.seed}")
        if self.trials < 1:
            raise ValueError(f"Setting 'trials' must be at least 1, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"Setting 'workers' must be at least 1, got {self.workers}")
        if self.enumeration_cap < 3:
            raise ValueError(f"Setting 'enumeration_cap' must be at least 3, got {self.enumeration_cap}")
        if self.log_level.upper() not in _LOG_LEVELS:
            raise ValueError(f"Setting 'log_level' must be one of {_LOG_LEVELS}, got {self.log_level!r}")

    def replace(self, **changes: Any) -> "Settings":
        """Copy with the given fields changed; None values are ignored so unset CLI flags keep the file value.

        Args:
            changes: Field values to change

        Returns:
            Updated settings

        """
        return dataclasses.replace(self, **{key: value for key, value in changes.items() if value is not None})


def _read_yaml(yaml_path: Path) -> Dict[str, Any]:
    """Read a mapping of setting names to values.

    Args:
        yaml_path: Path to the YAML file

    Raises:
        ValueError: If the file is missing, unreadable or not valid YAML, or holds something other than a mapping
            of known settings

    Returns:
        The mapping (empty for an empty file)

    """
    if not yaml_path.exists():
        raise ValueError(f"Settings file {yaml_path} not found")
    try:
        content = yaml.safe_load(yaml_path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as ex:
        raise ValueError(f"Failed to read settings from {yaml_path}: {ex}") from ex
    except yaml.YAMLError as ex:
        raise ValueError(f"Failed to load settings from {yaml_path}: {ex}") from ex
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise ValueError(f"Settings file {yaml_path} must contain a mapping")
    known = {settings_field.name for settings_field in fields(Settings)}
    unknown = sorted(set(content) - known)
    if unknown:
        raise ValueError(f"Unknown settings in {yaml_path}: {', '.join(unknown)}")
    return content


def load_settings(yaml_path: Optional[Path] = None) -> Settings:
    """Bundled defaults, overlaid with the user file (argument, else COMPLETABILITY_CONFIG).

    Args:
        yaml_path: Optional user settings file

    Returns:
        Settings

    """
    values = _read_yaml(get_default_settings_path())
    user_path = yaml_path if yaml_path is not None else get_user_settings_path()
    if user_path is not None:
        _LOGGER.info("Loading settings from %s", user_path)
        values.update(_read_yaml(user_path))
    return Settings(**values)


def save_settings(settings: Settings, yaml_path: Path) -> None:
    yaml_path.write_text(yaml.safe_dump(dataclasses.asdict(settings), sort_keys=False), encoding="utf-8")
