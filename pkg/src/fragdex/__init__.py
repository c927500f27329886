"""fragdex - similarity search over fixed-length protein fragments.

Fragments of a FASTA collection are indexed by their reduced sequences
under per-position alphabet partitions, then searched by range, k nearest
neighbours or PSSM valuation under quasi-metrics derived from score
matrices. Score statistics, iterative profile search and distance-exponent
estimation build on the same index.
"""

__version__ = "0.3.0"

from .errors import FragdexError
from .index import FSIndex, build_index, load_index, parse_partitions, save_index
from .ingest import FragmentStore, extract_fragments, read_fasta
from .scoring import PSSM, QuasiMetric, ScoreMatrix, load_score_matrix, to_quasi_metric
from .search import knn_search, pssm_search, range_search, sequential_scan

__all__ = [
    "__version__",
    "FragdexError",
    "FragmentStore",
    "read_fasta",
    "extract_fragments",
    "ScoreMatrix",
    "QuasiMetric",
    "PSSM",
    "load_score_matrix",
    "to_quasi_metric",
    "FSIndex",
    "parse_partitions",
    "build_index",
    "save_index",
    "load_index",
    "range_search",
    "knn_search",
    "pssm_search",
    "sequential_scan",
]
