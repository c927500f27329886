"""Random fragment generators for benchmarks and tests.

Both generators take a numpy Generator so a single seed reproduces a run.
"""

from typing import List, Optional

import numpy as np

from ..errors import EmptyDataError
from ..scoring.alphabet import STANDARD, Alphabet


def _check_freq(freq: np.ndarray) -> np.ndarray:
    freq = np.asarray(freq, dtype=np.float64)
    if (freq < 0).any() or freq.sum() <= 0:
        raise EmptyDataError("Letter frequencies must be non-negative with a positive sum")
    return freq / freq.sum()


def random_codes(rng: np.random.Generator, count: int, m: int, freq: np.ndarray) -> np.ndarray:
    """(count, m) letter codes drawn i.i.d. from freq."""
    freq = _check_freq(freq)
    return rng.choice(len(freq), size=(count, m), p=freq).astype(np.uint8)


def random_fragments(
    rng: np.random.Generator,
    count: int,
    m: int,
    freq: Optional[np.ndarray] = None,
    alphabet: Alphabet = STANDARD,
) -> List[str]:
    """Fragments with letters drawn i.i.d. from freq (uniform when omitted)."""
    if freq is None:
        freq = np.full(len(alphabet), 1.0 / len(alphabet))
    return [alphabet.decode(row) for row in random_codes(rng, count, m, freq)]


def mixture_fragments(
    rng: np.random.Generator,
    count: int,
    m: int,
    mixture,
    alphabet: Alphabet = STANDARD,
) -> List[str]:
    """Fragments drawn from a Dirichlet mixture.

    For every position of every fragment: pick a component by its mixture
    coefficient, draw letter probabilities from Dirichlet(alpha), then draw
    the letter. ``mixture`` needs ``coefficients`` and ``alphas`` arrays.
    """
    coefficients = np.asarray(mixture.coefficients, dtype=np.float64)
    alphas = np.asarray(mixture.alphas, dtype=np.float64)
    if alphas.shape[1] != len(alphabet):
        raise EmptyDataError(
            f"Mixture is over {alphas.shape[1]} letters, alphabet has {len(alphabet)}"
        )
    components = rng.choice(len(coefficients), size=(count, m), p=coefficients / coefficients.sum())
    # Dirichlet draws as normalised gammas, one per (fragment, position)
    gammas = rng.gamma(alphas[components])
    probs = gammas / gammas.sum(axis=-1, keepdims=True)
    u = rng.random((count, m, 1))
    codes = (probs.cumsum(axis=-1) < u).sum(axis=-1)
    codes = np.minimum(codes, len(alphabet) - 1).astype(np.uint8)
    return [alphabet.decode(row) for row in codes]


def mutate(rng: np.random.Generator, fragment: str, substitutions: int, alphabet: Alphabet = STANDARD) -> str:
    """Copy of fragment with up to ``substitutions`` random positions replaced."""
    letters = list(fragment)
    positions = rng.choice(len(letters), size=min(substitutions, len(letters)), replace=False)
    for pos in positions:
        letters[pos] = alphabet.letters[rng.integers(len(alphabet))]
    return "".join(letters)
