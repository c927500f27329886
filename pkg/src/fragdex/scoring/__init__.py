"""
scoring - alphabets, score matrices, quasi-metrics and PSSMs
"""

from .alphabet import DNA, STANDARD, STANDARD_LETTERS, Alphabet, encode_many
from .matrix import (
    QuasiMetric,
    ScoreMatrix,
    TriangleFailure,
    associated_metric,
    audit_triangle,
    fragment_distance,
    independent_triples,
    load_score_matrix,
    symmetric_distance,
    to_quasi_metric,
)
from .pssm import PSSM, pssm_score, pssm_valuation

__all__ = [
    "Alphabet",
    "STANDARD",
    "STANDARD_LETTERS",
    "DNA",
    "encode_many",
    "ScoreMatrix",
    "QuasiMetric",
    "TriangleFailure",
    "load_score_matrix",
    "to_quasi_metric",
    "associated_metric",
    "audit_triangle",
    "independent_triples",
    "fragment_distance",
    "symmetric_distance",
    "PSSM",
    "pssm_score",
    "pssm_valuation",
]
