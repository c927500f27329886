"""JSON-lines run log.

Events go to the ``fragdex.run`` logger; nothing is written until
``configure_run_log`` attaches a file. Entries carry no timestamps so that
identical runs produce identical logs.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

run_logger = logging.getLogger("fragdex.run")
run_logger.setLevel(logging.INFO)
run_logger.propagate = False
run_logger.addHandler(logging.NullHandler())


def configure_run_log(path: Union[str, Path, None]) -> Optional[logging.Handler]:
    """Send run events to a JSON-lines file, replacing any earlier file.

    Returns:
        The attached handler, or None when path is None
    """
    close_run_log()
    if path is None:
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(path, mode="w", encoding="utf-8")
    handler.setFormatter(logging.Formatter("%(message)s"))  # JSON lines format
    run_logger.addHandler(handler)
    return handler


def close_run_log() -> None:
    for handler in list(run_logger.handlers):
        if isinstance(handler, logging.FileHandler):
            run_logger.removeHandler(handler)
            handler.close()


def log_event(event_type: str, **data: Any) -> Dict[str, Any]:
    """Log one event and return the entry that was written."""
    entry = {"event": event_type, **data}
    run_logger.info(json.dumps(entry, sort_keys=True, default=str))
    return entry


def read_run_log(path: Union[str, Path]) -> List[Dict[str, Any]]:
    """Parse a JSON-lines run log."""
    with open(path, "r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]
