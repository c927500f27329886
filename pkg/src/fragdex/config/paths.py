"""Path constants and utilities for fragdex."""

from pathlib import Path
from typing import List, Optional, Union

# Files shipped with the package (score matrices, Dirichlet mixtures)
PACKAGE_DATA_DIR = Path(__file__).resolve().parent.parent / "data"

DEFAULT_MIXTURE = "uniform.1comp"


def get_config_dir() -> Path:
    """Get ~/.fragdex/ config directory.

    Returns:
        Path to config directory
    """
    return Path.home() / ".fragdex"


def get_user_settings_path() -> Path:
    """Get path to user settings file.

    Returns:
        Path to ~/.fragdex/settings.json
    """
    return get_config_dir() / "settings.json"


def get_local_config_dir(project_path: Optional[Path] = None) -> Path:
    """Get .fragdex/ directory in a project.

    Args:
        project_path: Project path (defaults to cwd)

    Returns:
        Path to .fragdex/ in project
    """
    if project_path is None:
        project_path = Path.cwd()
    return project_path / ".fragdex"


def get_local_settings_path(project_path: Optional[Path] = None) -> Path:
    """Get path to project settings.

    Args:
        project_path: Project path (defaults to cwd)

    Returns:
        Path to .fragdex/settings.json
    """
    return get_local_config_dir(project_path) / "settings.json"


def bundled_matrices() -> List[str]:
    """Names of the score matrices shipped with the package."""
    return sorted(p.name for p in PACKAGE_DATA_DIR.glob("BLOSUM*"))


def _find_data_file(name_or_path: Union[str, Path], kind: str) -> Path:
    candidate = Path(name_or_path).expanduser()
    if candidate.is_file():
        return candidate
    bundled = PACKAGE_DATA_DIR / str(name_or_path)
    if bundled.is_file():
        return bundled
    upper = PACKAGE_DATA_DIR / str(name_or_path).upper()
    if upper.is_file():
        return upper
    raise FileNotFoundError(
        f"{kind} '{name_or_path}' not found (not a file, not bundled in {PACKAGE_DATA_DIR})"
    )


def find_matrix(name_or_path: Union[str, Path]) -> Path:
    """Resolve a score matrix given a path or a bundled name like 'blosum62'.

    Returns:
        Path to the matrix file

    Raises:
        FileNotFoundError: Neither a file nor a bundled name
    """
    return _find_data_file(name_or_path, "Score matrix")


def find_mixture(name_or_path: Union[str, Path, None] = None) -> Path:
    """Resolve a Dirichlet mixture file; None gives the bundled uniform prior."""
    return _find_data_file(name_or_path or DEFAULT_MIXTURE, "Dirichlet mixture")
