"""
Get relevant paths for completability: bundled defaults and sample inputs.

"""

import os
from importlib import resources
from pathlib import Path
from typing import Optional


def get_data_file(file_name: str) -> Path:
    """Locate a file shipped in the completability.data package.

    Args:
        file_name: Name of the bundled file

    Raises:
        RuntimeError: If no such file is bundled

    Returns:
        Path: Path to the file

    """
    with resources.as_file(resources.files("completability.data") / file_name) as data_file:
        path = Path(data_file)
    if not path.exists():
        raise RuntimeError(f"Bundled data file {file_name} not found!")
    return path


def get_default_settings_path() -> Path:
    return get_data_file("defaults.yml")


def get_user_settings_path() -> Optional[Path]:
    """Settings file named by the COMPLETABILITY_CONFIG environment variable, if set.

    Returns:
        Path: User settings path, or None

    """
    configured = os.environ.get("COMPLETABILITY_CONFIG")
    if not configured:
        return None
    return Path(configured)
