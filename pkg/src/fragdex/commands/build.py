"""fragdex build: index a FASTA file."""

import json
from typing import Any, Dict

from ..errors import QueryError
from ..index.fsindex import build_index
from ..index.partitions import parse_partitions
from ..index.storage import save_index
from ..runlog import log_event
from .common import load_store
from .config import RunConfig


def cmd_build(config: RunConfig) -> Dict[str, Any]:
    """Build and save an index; returns the build report.

    Raises:
        QueryError: No index path given
        PartitionError: Invalid partition spec
    """
    if config.index is None:
        raise QueryError("An output index path is required (--index)")
    store = load_store(config)
    scheme = parse_partitions(config.partitions, config.frag_length, store.alphabet)
    ix = build_index(store, scheme, verbose=config.verbose)
    save_index(ix, config.index)

    report = ix.build_report().to_dict()
    report["partitions"] = scheme.to_spec()
    report["index"] = str(config.index)
    log_event("build", **report)
    if config.report is not None:
        config.report.parent.mkdir(parents=True, exist_ok=True)
        config.report.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return report
