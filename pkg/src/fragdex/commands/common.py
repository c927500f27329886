"""Loading helpers shared by the subcommands."""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional, TextIO

from ..config.paths import find_matrix
from ..errors import QueryError
from ..index.fsindex import FSIndex, build_index
from ..index.partitions import parse_partitions
from ..index.storage import load_index, read_header
from ..ingest.fasta import read_fasta
from ..ingest.store import FragmentStore, extract_fragments
from ..profile.dirichlet import DirichletMixture, load_mixture
from ..scoring.alphabet import STANDARD
from ..scoring.matrix import ScoreMatrix, load_score_matrix
from .config import RunConfig


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[fragdex] {msg}", file=sys.stderr)


def load_matrix(config: RunConfig) -> ScoreMatrix:
    return load_score_matrix(find_matrix(config.matrix))


def load_config_mixture(config: RunConfig) -> DirichletMixture:
    return load_mixture(config.mixture, STANDARD)


def load_store(config: RunConfig, m: Optional[int] = None) -> FragmentStore:
    """Fragments of the configured FASTA at length m (the configured length by default)."""
    if config.fasta is None:
        raise QueryError("A FASTA dataset is required (--fasta)")
    records = read_fasta(config.fasta)
    store = extract_fragments(records, m or config.frag_length, STANDARD)
    _log(config.verbose, f"{len(store)} fragments of length {store.frag_length} from {len(records)} records")
    return store


def open_index(config: RunConfig) -> FSIndex:
    """Load the index file, or build one in memory when no file is given."""
    if config.index is None:
        store = load_store(config)
        return build_index(store, parse_partitions(config.partitions, store.frag_length), config.verbose)
    header = read_header(config.index)
    store = load_store(config, header.m)
    _log(config.verbose, f"Loading index {config.index} ({header.num_bins} bins)")
    return load_index(config.index, store)


@contextmanager
def output_stream(path: Optional[Path], default: Optional[TextIO] = None) -> Iterator[TextIO]:
    """Open path for writing, or yield the default stream (stdout)."""
    if path is None:
        yield default or sys.stdout
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        yield f
