"""Settings file management for fragdex."""

import json
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from .paths import get_local_settings_path, get_user_settings_path

# Default settings
DEFAULTS: Dict[str, Any] = {
    "fragLength": 9,
    "partitions": "TSAN,ILVM,KR,DEQ,WFYH,GPC",
    "matrix": "BLOSUM62",
    "mixture": None,  # bundled uniform prior
    "evalueSchedule": [1.0, 1.0, 0.1, 0.1, 0.01],
    "minHits": 30,
    "maxIterations": 5,
    "seed": 0,
    "benchQueries": 5000,
    "benchK": [1, 10, 50],
    "pairBudget": 200000,
    "percentileCap": 0.05,
    "minPairCount": 5,
    "windowLevels": [0.002, 0.005, 0.01, 0.02, 0.05],
    "candidateExponents": list(range(1, 21)),
    "outputFormat": "tsv",  # "tsv" or "json"
    "workers": 1,
    "logFile": None,
}


def _positive_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def _positive_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0


def _schedule(value: Any) -> bool:
    if not isinstance(value, list) or not value or not all(_positive_number(v) for v in value):
        return False
    # thresholds may only tighten
    return all(a >= b for a, b in zip(value, value[1:]))


VALIDATORS: Dict[str, Callable[[Any], bool]] = {
    "fragLength": _positive_int,
    "minHits": _positive_int,
    "maxIterations": _positive_int,
    "benchQueries": _positive_int,
    "pairBudget": _positive_int,
    "minPairCount": _positive_int,
    "workers": _positive_int,
    "seed": lambda v: isinstance(v, int) and not isinstance(v, bool) and 0 <= v < 2**64,
    "partitions": lambda v: isinstance(v, str) and bool(v.strip()),
    "matrix": lambda v: isinstance(v, str) and bool(v.strip()),
    "mixture": lambda v: v is None or (isinstance(v, str) and bool(v.strip())),
    "evalueSchedule": _schedule,
    "benchK": lambda v: isinstance(v, list) and bool(v) and all(_positive_int(k) for k in v),
    "percentileCap": lambda v: _positive_number(v) and v < 1,
    "windowLevels": lambda v: isinstance(v, list) and bool(v) and all(_positive_number(x) and x < 1 for x in v),
    "candidateExponents": lambda v: isinstance(v, list) and bool(v) and all(_positive_number(x) for x in v),
    "outputFormat": lambda v: v in ("tsv", "json"),
    "logFile": lambda v: v is None or isinstance(v, str),
}


LAYERS = ("user", "project", "file", "cli")


def read_settings_file(path: Path) -> Dict[str, Any]:
    """Valid entries of one JSON settings file.

    A missing or empty file gives {}. Unreadable files, bad JSON and values
    that fail their validator are reported with a warning and skipped.
    """
    if not path.exists():
        return {}
    try:
        text = path.read_text(encoding="utf-8").strip()
        raw = json.loads(text) if text else {}
    except json.JSONDecodeError as e:
        print(f"Warning: Invalid JSON in {path}: {e}")
        return {}
    except OSError as e:
        print(f"Warning: Could not read {path}: {e}")
        return {}
    if not isinstance(raw, dict):
        print(f"Warning: {path} does not hold a JSON object, skipped.")
        return {}

    accepted = {}
    for key, value in raw.items():
        check = VALIDATORS.get(key)
        if check is None or check(value):
            accepted[key] = value
        else:
            print(f"Warning: invalid value for {key} in {path}: {value!r}, keeping the default.")
    return accepted


class Settings:
    """Run settings merged from several layers.

    Later layers win:
    1. DEFAULTS
    2. ~/.fragdex/settings.json
    3. .fragdex/settings.json under the project directory
    4. The --config file
    5. Command line flags (scope "cli")
    """

    def __init__(self, project_path: Optional[Path] = None, config_file: Optional[Path] = None) -> None:
        self.project_path = project_path or Path.cwd()
        self.config_file = config_file
        self._layers: Dict[str, Dict[str, Any]] = {name: {} for name in LAYERS}
        self._merged: Optional[Dict[str, Any]] = None

    def load(self) -> None:
        """Read the user, project and --config files.

        Raises:
            FileNotFoundError: The --config file does not exist
        """
        self._layers["user"] = read_settings_file(get_user_settings_path())
        self._layers["project"] = read_settings_file(get_local_settings_path(self.project_path))
        if self.config_file is not None:
            path = Path(self.config_file)
            if not path.exists():
                raise FileNotFoundError(f"Config file {path} does not exist")
            self._layers["file"] = read_settings_file(path)
        self._merged = None

    def all(self) -> Dict[str, Any]:
        """All merged settings."""
        if self._merged is None:
            merged = json.loads(json.dumps(DEFAULTS))
            for name in LAYERS:
                merged.update(self._layers[name])
            self._merged = merged
        return dict(self._merged)

    def get(self, key: str, default: Any = None) -> Any:
        """Merged value of a key, or default when it is unset or None."""
        value = self.all().get(key)
        return default if value is None else value

    def set(self, key: str, value: Any, scope: str = "cli") -> None:
        """Set a key in one layer. None leaves the current value in place.

        Raises:
            ValueError: The value fails validation
        """
        if value is None:
            return
        check = VALIDATORS.get(key)
        if check is not None and not check(value):
            raise ValueError(f"Invalid value for {key}: {value!r}")
        self._layers.get(scope, self._layers["cli"])[key] = value
        self._merged = None
