"""Dirichlet mixture priors and posterior letter probabilities.

Mixture files use the UCSC plain-text layout:

    Order = A C D E F G H I K L M N P Q R S T V W Y
    Mixture= 0.178091
    Alpha= 1.19534 0.270671 0.039848 ...

One Mixture=/Alpha= pair per component. The first Alpha value is the sum of
the remaining ones.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from scipy.special import gammaln, logsumexp

from ..config.paths import find_mixture
from ..errors import MixtureError
from ..scoring.alphabet import STANDARD, Alphabet

UCSC_ORDER = "ACDEFGHIKLMNPQRSTVWY"


@dataclass(frozen=True, eq=False)
class DirichletMixture:
    """Mixture coefficients q_k and parameter vectors alpha_k (alphabet order)."""
    coefficients: np.ndarray
    alphas: np.ndarray
    alphabet: Alphabet = STANDARD
    name: str = ""

    def __post_init__(self) -> None:
        q = np.asarray(self.coefficients, dtype=np.float64)
        alphas = np.atleast_2d(np.asarray(self.alphas, dtype=np.float64))
        if q.ndim != 1 or len(q) == 0:
            raise MixtureError("Mixture needs at least one component")
        if alphas.shape != (len(q), len(self.alphabet)):
            raise MixtureError(
                f"Alpha table has shape {alphas.shape}, expected {(len(q), len(self.alphabet))}"
            )
        if (q < 0).any() or abs(q.sum() - 1.0) > 1e-9:
            raise MixtureError(f"Mixture coefficients must be non-negative and sum to 1, got {q.sum()}")
        if not (alphas > 0).all():
            raise MixtureError("All Dirichlet parameters must be strictly positive")
        q.setflags(write=False)
        alphas.setflags(write=False)
        object.__setattr__(self, "coefficients", q)
        object.__setattr__(self, "alphas", alphas)

    @property
    def num_components(self) -> int:
        return len(self.coefficients)


def parse_mixture(text: str, name: str = "", alphabet: Alphabet = STANDARD) -> DirichletMixture:
    """Parse UCSC mixture text.

    Coefficients that sum to 1 within 1e-4 are renormalised, since published
    files round them.

    Raises:
        MixtureError: Missing or malformed Mixture=/Alpha= lines, unknown letters
    """
    order = UCSC_ORDER
    coefficients: List[float] = []
    alphas: List[List[float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        key, sep, value = raw.partition("=")
        if not sep:
            continue
        key = key.strip()
        try:
            if key == "Order":
                order = "".join(value.split())
            elif key == "Name" and not name:
                name = value.strip()
            elif key == "Mixture":
                coefficients.append(float(value))
            elif key == "Alpha":
                alphas.append([float(v) for v in value.split()])
        except ValueError:
            raise MixtureError(f"Line {lineno}: non-numeric value for {key}") from None

    if not coefficients or len(coefficients) != len(alphas):
        raise MixtureError(
            f"Found {len(coefficients)} Mixture= lines and {len(alphas)} Alpha= lines"
        )
    if sorted(order) != sorted(alphabet.letters):
        raise MixtureError(f"Mixture letter order {order!r} does not cover alphabet {alphabet.letters}")

    k = len(order)
    table = np.empty((len(alphas), k))
    for i, row in enumerate(alphas):
        if len(row) == k + 1:
            total, row = row[0], row[1:]
            if not np.isclose(total, sum(row), rtol=1e-3):
                raise MixtureError(f"Component {i}: leading Alpha {total} is not the sum of the rest")
        if len(row) != k:
            raise MixtureError(f"Component {i} has {len(row)} Alpha values, expected {k}")
        table[i] = row

    # reorder columns to alphabet order
    perm = [order.index(a) for a in alphabet.letters]
    q = np.array(coefficients)
    if abs(q.sum() - 1.0) > 1e-4:
        raise MixtureError(f"Mixture coefficients sum to {q.sum()}, expected 1")
    return DirichletMixture(coefficients=q / q.sum(), alphas=table[:, perm], alphabet=alphabet, name=name)


def load_mixture(name_or_path: Union[str, Path, None] = None, alphabet: Alphabet = STANDARD) -> DirichletMixture:
    """Load a mixture file; None or a bundled name resolves to package data."""
    path = find_mixture(name_or_path)
    return parse_mixture(path.read_text(encoding="utf-8"), name=path.name, alphabet=alphabet)


def component_log_likelihood(counts: np.ndarray, alphas: np.ndarray) -> np.ndarray:
    """log P(counts | alpha_k) for each component, up to a term shared by all k."""
    counts = np.asarray(counts, dtype=np.float64)
    a0 = alphas.sum(axis=1)
    n = counts.sum()
    return (
        gammaln(a0) - gammaln(n + a0)
        + (gammaln(counts[None, :] + alphas) - gammaln(alphas)).sum(axis=1)
    )


def responsibilities(counts: np.ndarray, mixture: DirichletMixture) -> np.ndarray:
    """Posterior probability of each component given the counts."""
    with np.errstate(divide="ignore"):
        log_q = np.log(mixture.coefficients)
    log_post = log_q + component_log_likelihood(counts, mixture.alphas)
    return np.exp(log_post - logsumexp(log_post))


def dirichlet_posterior(counts: np.ndarray, mixture: DirichletMixture) -> np.ndarray:
    """Posterior mean letter probabilities for one column of (weighted) counts.

    Each component contributes (counts + alpha_k) / (|counts| + |alpha_k|),
    weighted by its responsibility.

    Raises:
        MixtureError: Negative counts or counts over a different alphabet
    """
    counts = np.asarray(counts, dtype=np.float64)
    if counts.shape != (len(mixture.alphabet),):
        raise MixtureError(f"Counts have shape {counts.shape}, mixture expects {len(mixture.alphabet)}")
    if (counts < 0).any():
        raise MixtureError("Counts must be non-negative")
    resp = responsibilities(counts, mixture)
    means = (counts[None, :] + mixture.alphas) / (counts.sum() + mixture.alphas.sum(axis=1))[:, None]
    probs = resp @ means
    return probs / probs.sum()


def uniform_mixture(alphabet: Alphabet = STANDARD, pseudocount: float = 1.0, name: Optional[str] = None) -> DirichletMixture:
    """Single-component flat prior."""
    k = len(alphabet)
    return DirichletMixture(
        coefficients=np.ones(1),
        alphas=np.full((1, k), pseudocount),
        alphabet=alphabet,
        name=name or f"uniform({pseudocount:g})",
    )
