"""Exact score distributions under the i.i.d. background model.

The score of a random fragment is a sum of independent per-position scores,
so its distribution is the convolution of the per-position densities. All
scores are integers, so a distribution is a dense pmf array over [lo, hi].
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy import signal

from ..errors import EmptyDataError, StatisticsError
from ..scoring.matrix import ScoreMatrix
from ..scoring.pssm import PSSM

# float slack when comparing expected counts against a target
_REL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ScoreDistribution:
    """Probability of each integer score lo..hi for fragments of length m.

    ``dataset_size`` is the n used for E-values.
    """
    lo: int
    pmf: np.ndarray
    frag_length: int = 1
    dataset_size: int = 1
    tail: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        pmf = np.asarray(self.pmf, dtype=np.float64)
        if pmf.ndim != 1 or len(pmf) == 0:
            raise EmptyDataError("Score distribution needs at least one score")
        tail = pmf[::-1].cumsum()[::-1]
        for name, value in (("pmf", pmf), ("tail", tail)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def hi(self) -> int:
        return self.lo + len(self.pmf) - 1

    @property
    def scores(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def prob(self, t: int) -> float:
        if t < self.lo or t > self.hi:
            return 0.0
        return float(self.pmf[t - self.lo])

    def survival(self, t: int) -> float:
        """P(S >= t)."""
        if t <= self.lo:
            return 1.0
        if t > self.hi:
            return 0.0
        return float(min(self.tail[t - self.lo], 1.0))

    @property
    def mean(self) -> float:
        return float((self.scores * self.pmf).sum())

    @property
    def variance(self) -> float:
        centred = self.scores - self.mean
        return float((centred * centred * self.pmf).sum())

    def with_dataset_size(self, n: int) -> "ScoreDistribution":
        return ScoreDistribution(self.lo, self.pmf, self.frag_length, n)

    def to_text(self) -> str:
        """Two columns: score and P(S >= score)."""
        lines = ["# score\tsurvival"]
        lines.extend(f"{t}\t{self.survival(t):.12g}" for t in range(self.lo, self.hi + 1))
        return "\n".join(lines) + "\n"

    def dump(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(), encoding="utf-8")


def positional_density(score_row: Sequence[int], freq: Sequence[float]) -> ScoreDistribution:
    """pmf(t) = total frequency of the letters scoring t at one position.

    Raises:
        StatisticsError: Negative frequency or row/frequency length mismatch
    """
    scores = np.asarray(score_row, dtype=np.int64)
    freq = np.asarray(freq, dtype=np.float64)
    if scores.shape != freq.shape:
        raise StatisticsError(f"{len(scores)} scores but {len(freq)} frequencies")
    if (freq < 0).any():
        raise StatisticsError("Background frequencies must be non-negative")
    lo = int(scores.min())
    pmf = np.bincount(scores - lo, weights=freq)
    return ScoreDistribution(lo=lo, pmf=pmf, frag_length=1)


def convolve_densities(
    densities: Sequence[ScoreDistribution],
    dataset_size: int = 1,
    method: str = "auto",
) -> ScoreDistribution:
    """Distribution of the sum of independent per-position scores.

    Args:
        densities: One density per position
        dataset_size: n for E-values
        method: "direct", "fft", or "auto" (scipy picks the faster)

    Raises:
        EmptyDataError: No densities
    """
    if not densities:
        raise EmptyDataError("Cannot convolve an empty list of densities")
    pmf = np.asarray(densities[0].pmf)
    lo = densities[0].lo
    m = densities[0].frag_length
    for d in densities[1:]:
        pmf = signal.convolve(pmf, d.pmf, method=method)
        lo += d.lo
        m += d.frag_length
    if method != "direct":
        # transform round-off can leave tiny negatives
        pmf = np.clip(pmf, 0.0, None)
    return ScoreDistribution(lo=lo, pmf=pmf, frag_length=m, dataset_size=dataset_size)


def matrix_score_distribution(
    matrix: ScoreMatrix,
    center: str,
    freq: Sequence[float],
    dataset_size: int = 1,
) -> ScoreDistribution:
    """Distribution of s(center, X) for X drawn letter by letter from freq."""
    codes = matrix.alphabet.encode(center)
    return convolve_densities(
        [positional_density(matrix.scores[c], freq) for c in codes], dataset_size
    )


def pssm_score_distribution(p: PSSM, freq: Sequence[float], dataset_size: int = 1) -> ScoreDistribution:
    """Distribution of the PSSM score of a random fragment."""
    return convolve_densities([positional_density(row, freq) for row in p.scores], dataset_size)


def evalue(dist: ScoreDistribution, t: int) -> float:
    """Expected number of dataset fragments scoring at least t."""
    return dist.dataset_size * dist.survival(t)


def score_threshold_for_evalue(dist: ScoreDistribution, target: float) -> Optional[int]:
    """Least score t with evalue(t) <= target, or None if even hi misses the target.

    Raises:
        StatisticsError: target <= 0
    """
    if target <= 0:
        raise StatisticsError(f"E-value target must be positive, got {target}")
    expected = dist.dataset_size * np.minimum(dist.tail, 1.0)
    ok = np.flatnonzero(expected <= target * (1 + _REL_TOL))
    if len(ok) == 0:
        return None
    return dist.lo + int(ok[0])


def score_to_radius(score_offset: int, t: int) -> Optional[int]:
    """Distance radius equivalent to a score threshold.

    For a matrix query the offset is sum_i s(w_i, w_i); for a PSSM it is the
    sum of per-position maxima. None means no fragment can reach t.
    """
    radius = int(score_offset) - int(t)
    return radius if radius >= 0 else None


def radius_for_evalue(dist: ScoreDistribution, score_offset: int, target: float) -> Optional[int]:
    """Range-search radius whose hits are the fragments with E-value <= target."""
    t = score_threshold_for_evalue(dist, target)
    if t is None:
        return None
    return score_to_radius(score_offset, t)


def brute_force_distribution(rows: List[Sequence[int]], freq: Sequence[float]) -> ScoreDistribution:
    """Enumerate every fragment; for cross-checking small cases only."""
    freq = np.asarray(freq, dtype=np.float64)
    k = len(freq)
    rows = [np.asarray(r, dtype=np.int64) for r in rows]
    m = len(rows)
    grids = np.indices((k,) * m).reshape(m, -1)
    scores = sum(rows[i][grids[i]] for i in range(m))
    probs = np.prod([freq[grids[i]] for i in range(m)], axis=0)
    lo = int(scores.min())
    return ScoreDistribution(lo=lo, pmf=np.bincount(scores - lo, weights=probs), frag_length=m)
