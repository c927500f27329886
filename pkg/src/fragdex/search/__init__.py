"""
search - indexed range, kNN and PSSM queries plus the sequential-scan oracle
"""

from .engine import (
    KnnCollector,
    RangeCollector,
    batch_search,
    knn_search,
    process_bin,
    pssm_search,
    range_search,
    search_tables,
)
from .hits import Hit, HitList, SearchStats
from .scan import check_equivalent, query_costs, scan_distances, sequential_scan
from .tables import DistanceTables, matrix_tables, pssm_tables, symmetric_tables

__all__ = [
    "Hit",
    "HitList",
    "SearchStats",
    "DistanceTables",
    "matrix_tables",
    "pssm_tables",
    "symmetric_tables",
    "RangeCollector",
    "KnnCollector",
    "process_bin",
    "search_tables",
    "range_search",
    "knn_search",
    "pssm_search",
    "batch_search",
    "sequential_scan",
    "scan_distances",
    "query_costs",
    "check_equivalent",
]
