"""
index - alphabet partitions, FSIndex construction and persistence
"""

from .fsindex import BuildReport, FSIndex, build_index
from .partitions import PartitionScheme, parse_partitions, rank, unrank
from .storage import (
    FORMAT_VERSION,
    IndexHeader,
    index_from_bytes,
    index_to_bytes,
    load_index,
    read_header,
    save_index,
)

__all__ = [
    "PartitionScheme",
    "parse_partitions",
    "rank",
    "unrank",
    "FSIndex",
    "BuildReport",
    "build_index",
    "FORMAT_VERSION",
    "IndexHeader",
    "index_to_bytes",
    "index_from_bytes",
    "save_index",
    "load_index",
    "read_header",
]
