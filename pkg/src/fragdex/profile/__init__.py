"""
profile - sequence weights, Dirichlet mixture priors, PSSM construction and iteration
"""

from .builder import build_pssm, half_bit_scores, round_half_away
from .dirichlet import (
    DirichletMixture,
    dirichlet_posterior,
    load_mixture,
    parse_mixture,
    responsibilities,
    uniform_mixture,
)
from .iteration import (
    ACTIVE,
    CONVERGED,
    DEACTIVATED,
    FINISHED,
    IterationConfig,
    IterationRecord,
    IterationState,
    initial_state,
    iterate,
    no_filter,
    query_windows,
    run_iterations,
    run_window,
)
from .weights import WeightedHitSet, henikoff_weights

__all__ = [
    "WeightedHitSet",
    "henikoff_weights",
    "DirichletMixture",
    "parse_mixture",
    "load_mixture",
    "uniform_mixture",
    "responsibilities",
    "dirichlet_posterior",
    "round_half_away",
    "half_bit_scores",
    "build_pssm",
    "IterationConfig",
    "IterationRecord",
    "IterationState",
    "initial_state",
    "iterate",
    "no_filter",
    "query_windows",
    "run_window",
    "run_iterations",
    "ACTIVE",
    "DEACTIVATED",
    "CONVERGED",
    "FINISHED",
]
