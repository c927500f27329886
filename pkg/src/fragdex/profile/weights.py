"""Position-based sequence weights for hit sets."""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..errors import EmptyDataError, QueryError
from ..scoring.alphabet import STANDARD, Alphabet, encode_many


@dataclass
class WeightedHitSet:
    """Equal-length fragments with positive weights summing to the hit count."""
    fragments: List[str]
    weights: np.ndarray
    alphabet: Alphabet = STANDARD

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    @property
    def frag_length(self) -> int:
        return len(self.fragments[0]) if self.fragments else 0

    def column_counts(self) -> np.ndarray:
        """(m, |alphabet|) weighted letter counts per position."""
        codes = encode_many(self.alphabet, self.fragments)
        k = len(self.alphabet)
        return np.stack(
            [np.bincount(codes[:, j], weights=self.weights, minlength=k) for j in range(codes.shape[1])]
        )


def henikoff_weights(fragments: Sequence[str], alphabet: Alphabet = STANDARD) -> WeightedHitSet:
    """Henikoff position-based weights, rescaled so they sum to the hit count.

    At each position a fragment gets 1/(r*c), r being the number of distinct
    letters in the column and c the number of fragments sharing its letter.

    Raises:
        EmptyDataError: No fragments
        QueryError: Fragments of different lengths
    """
    if not fragments:
        raise EmptyDataError("Cannot weight an empty hit set")
    m = len(fragments[0])
    if any(len(f) != m for f in fragments):
        raise QueryError("Hit fragments must all have the same length")
    codes = encode_many(alphabet, list(fragments))
    n = len(fragments)
    raw = np.zeros(n, dtype=np.float64)
    for j in range(m):
        column = codes[:, j]
        counts = np.bincount(column, minlength=len(alphabet))
        distinct = np.count_nonzero(counts)
        raw += 1.0 / (distinct * counts[column])
    weights = raw * (n / raw.sum())
    return WeightedHitSet(fragments=list(fragments), weights=weights, alphabet=alphabet)
