"""
stats - exact score distributions, E-values and score thresholds
"""

from .distribution import (
    ScoreDistribution,
    brute_force_distribution,
    convolve_densities,
    evalue,
    matrix_score_distribution,
    positional_density,
    pssm_score_distribution,
    radius_for_evalue,
    score_threshold_for_evalue,
    score_to_radius,
)

__all__ = [
    "ScoreDistribution",
    "positional_density",
    "convolve_densities",
    "matrix_score_distribution",
    "pssm_score_distribution",
    "evalue",
    "score_threshold_for_evalue",
    "score_to_radius",
    "radius_for_evalue",
    "brute_force_distribution",
]
