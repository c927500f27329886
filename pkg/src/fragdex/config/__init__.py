"""Configuration module for settings management."""

from .paths import (
    PACKAGE_DATA_DIR,
    bundled_matrices,
    find_matrix,
    find_mixture,
    get_config_dir,
    get_local_settings_path,
    get_user_settings_path,
)
from .settings import DEFAULTS, Settings

__all__ = [
    "Settings",
    "DEFAULTS",
    "PACKAGE_DATA_DIR",
    "bundled_matrices",
    "find_matrix",
    "find_mixture",
    "get_config_dir",
    "get_user_settings_path",
    "get_local_settings_path",
]
