"""
distexp - distance distribution sampling and distance-exponent estimation
"""

from .estimators import (
    LogLogEstimate,
    MonomialEstimate,
    WindowFit,
    estimate_both,
    estimate_log_log_slope,
    estimate_monomial_fit,
    monomial_coefficient,
)
from .generators import GENERATORS, generate
from .sampling import (
    EmpiricalDistanceCdf,
    fragment_pairwise_distances,
    pairwise_distances,
    sample_distance_cdf,
    subset_size,
)

__all__ = [
    "EmpiricalDistanceCdf",
    "sample_distance_cdf",
    "pairwise_distances",
    "fragment_pairwise_distances",
    "subset_size",
    "LogLogEstimate",
    "MonomialEstimate",
    "WindowFit",
    "estimate_log_log_slope",
    "estimate_monomial_fit",
    "monomial_coefficient",
    "estimate_both",
    "GENERATORS",
    "generate",
]
