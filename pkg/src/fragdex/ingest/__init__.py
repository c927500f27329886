"""
ingest - FASTA input, fragment extraction and synthetic corpora
"""

from .fasta import SequenceRecord, parse_fasta, read_fasta, write_fasta
from .store import FragmentStore, background_frequencies, extract_fragments
from .synthetic import mixture_fragments, mutate, random_codes, random_fragments

__all__ = [
    "SequenceRecord",
    "parse_fasta",
    "read_fasta",
    "write_fasta",
    "FragmentStore",
    "extract_fragments",
    "background_frequencies",
    "random_codes",
    "random_fragments",
    "mixture_fragments",
    "mutate",
]
