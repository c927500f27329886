"""Half-bit log-odds PSSMs from weighted hit sets."""

import numpy as np

from ..errors import EmptyDataError, StatisticsError
from ..scoring.pssm import PSSM
from .dirichlet import DirichletMixture, dirichlet_posterior
from .weights import WeightedHitSet


def round_half_away(values: np.ndarray) -> np.ndarray:
    """Round to the nearest integer, halves away from zero."""
    values = np.asarray(values, dtype=np.float64)
    return (np.sign(values) * np.floor(np.abs(values) + 0.5)).astype(np.int64)


def half_bit_scores(posterior: np.ndarray, background: np.ndarray) -> np.ndarray:
    """round(2 * log2(q / p)) letter by letter.

    Raises:
        StatisticsError: A letter has zero background frequency but positive posterior
    """
    posterior = np.asarray(posterior, dtype=np.float64)
    background = np.asarray(background, dtype=np.float64)
    bad = (background <= 0) & (posterior > 0)
    if bad.any():
        raise StatisticsError(
            f"Letter {int(np.flatnonzero(bad)[0])} has zero background frequency but positive posterior"
        )
    with np.errstate(divide="ignore"):
        return round_half_away(2.0 * np.log2(posterior / background))


def build_pssm(
    weighted: WeightedHitSet,
    background: np.ndarray,
    mixture: DirichletMixture,
    name: str = "",
) -> PSSM:
    """PSSM whose row i scores letters by posterior vs background in half bits.

    Raises:
        EmptyDataError: Empty hit set
        StatisticsError: Zero background frequency for a letter
    """
    if not weighted.fragments:
        raise EmptyDataError("Cannot build a PSSM from an empty hit set")
    counts = weighted.column_counts()
    rows = [half_bit_scores(dirichlet_posterior(col, mixture), background) for col in counts]
    return PSSM(scores=np.stack(rows), alphabet=weighted.alphabet, name=name)
