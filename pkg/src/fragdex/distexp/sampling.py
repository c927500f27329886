"""Empirical distribution of pairwise distances."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ..errors import EstimationError
from ..ingest.store import FragmentStore
from ..scoring.matrix import QuasiMetric

PairwiseFn = Callable[[np.ndarray], np.ndarray]

_PDIST_NAMES = {"linf": "chebyshev", "l2": "euclidean", "l1": "cityblock"}


def _geodesic(points: np.ndarray) -> np.ndarray:
    # points on a unit sphere; angle between them
    cos = 1.0 - pdist(points, "cosine")
    return np.arccos(np.clip(cos, -1.0, 1.0))


def pairwise_distances(points: np.ndarray, metric: Union[str, PairwiseFn]) -> np.ndarray:
    """Condensed pairwise distances of row vectors.

    Args:
        points: (n, d) array
        metric: "linf", "l2", "l1", "geodesic" or a function returning condensed distances
    """
    if callable(metric):
        return np.asarray(metric(points), dtype=np.float64)
    if metric == "geodesic":
        return _geodesic(points)
    try:
        return pdist(points, _PDIST_NAMES[metric])
    except KeyError:
        raise EstimationError(f"Unknown metric {metric!r}") from None


def fragment_pairwise_distances(codes: np.ndarray, dist: np.ndarray) -> np.ndarray:
    """Condensed max(d(x,y), d(y,x)) between encoded fragments.

    d is the sum of letter distances; ``dist`` may be asymmetric.
    """
    n = codes.shape[0]
    forward = np.stack([dist[codes[i][None, :], codes].sum(axis=1) for i in range(n)])
    return squareform(np.maximum(forward, forward.T), checks=False).astype(np.float64)


@dataclass(frozen=True, eq=False)
class EmpiricalDistanceCdf:
    """Step function F(r) = fraction of pairs at distance <= r.

    ``radii`` is strictly increasing; ``counts`` holds the cumulative number
    of pairs at each radius and is None for CDFs built from exact values.
    """
    radii: np.ndarray
    values: np.ndarray
    counts: Optional[np.ndarray] = None
    points_sampled: int = 0
    pairs_evaluated: int = 0
    source: str = field(default="")

    def __post_init__(self) -> None:
        radii = np.asarray(self.radii, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if radii.shape != values.shape or radii.ndim != 1:
            raise EstimationError("CDF radii and values must be 1-D arrays of equal length")
        if len(radii) > 1 and (np.diff(radii) <= 0).any():
            raise EstimationError("CDF radii must be strictly increasing")
        if (np.diff(values) < 0).any() or (values < 0).any() or (values > 1 + 1e-12).any():
            raise EstimationError("CDF values must be non-decreasing within [0, 1]")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)
        if self.counts is not None:
            object.__setattr__(self, "counts", np.asarray(self.counts, dtype=np.int64))

    def __len__(self) -> int:
        return len(self.radii)

    def __call__(self, r: float) -> float:
        i = int(np.searchsorted(self.radii, r, side="right"))
        return float(self.values[i - 1]) if i else 0.0

    def quantile_radius(self, level: float) -> Optional[float]:
        """Smallest sampled radius whose F value reaches level."""
        i = int(np.searchsorted(self.values, level, side="left"))
        return float(self.radii[i]) if i < len(self.radii) else None

    def scaled(self, factor: float) -> "EmpiricalDistanceCdf":
        return EmpiricalDistanceCdf(
            radii=self.radii * factor,
            values=self.values,
            counts=self.counts,
            points_sampled=self.points_sampled,
            pairs_evaluated=self.pairs_evaluated,
            source=self.source,
        )

    def to_text(self) -> str:
        lines = ["# r\tF"]
        lines.extend(f"{r:.10g}\t{v:.10g}" for r, v in zip(self.radii, self.values))
        return "\n".join(lines) + "\n"

    def dump(self, path: Union[str, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def from_distances(cls, distances: np.ndarray, points_sampled: int = 0, source: str = "") -> "EmpiricalDistanceCdf":
        distances = np.asarray(distances, dtype=np.float64)
        if len(distances) == 0:
            raise EstimationError("No distances to build a CDF from")
        radii, counts = np.unique(distances, return_counts=True)
        cumulative = np.cumsum(counts)
        return cls(
            radii=radii,
            values=cumulative / len(distances),
            counts=cumulative,
            points_sampled=points_sampled,
            pairs_evaluated=len(distances),
            source=source,
        )

    @classmethod
    def from_function(cls, radii: np.ndarray, fn: Callable[[np.ndarray], np.ndarray], source: str = "") -> "EmpiricalDistanceCdf":
        """Exact CDF values on a grid; used for analytic checks."""
        radii = np.asarray(radii, dtype=np.float64)
        return cls(radii=radii, values=np.clip(fn(radii), 0.0, 1.0), source=source)


def subset_size(n: int, pair_budget: int) -> int:
    """Points whose all-pairs count is closest to pair_budget without exceeding n."""
    s = int(np.floor((1 + np.sqrt(1 + 8 * pair_budget)) / 2))
    return max(2, min(n, s))


def sample_distance_cdf(
    points: Union[np.ndarray, FragmentStore],
    metric: Union[str, PairwiseFn, QuasiMetric] = "linf",
    pair_budget: int = 200000,
    rng: Optional[np.random.Generator] = None,
) -> EmpiricalDistanceCdf:
    """Empirical CDF of all pairwise distances within a random subset.

    Fragment stores are measured with the associated metric max(d(x,y), d(y,x))
    of the fragment quasi-metric, taken over whole fragments.

    Raises:
        EstimationError: Fewer than two points or an unusable metric
    """
    rng = rng or np.random.default_rng(0)
    n = len(points)
    if n < 2:
        raise EstimationError(f"Need at least two points, got {n}")
    s = subset_size(n, pair_budget)
    chosen = np.sort(rng.choice(n, size=s, replace=False))

    if isinstance(points, FragmentStore):
        if not isinstance(metric, QuasiMetric):
            raise EstimationError("Fragment datasets need a QuasiMetric")
        distances = fragment_pairwise_distances(points.codes[chosen], metric.dist)
        source = f"{metric.name}-sym" if metric.name else "fragments"
    else:
        if isinstance(metric, QuasiMetric):
            raise EstimationError("A QuasiMetric only applies to fragment datasets")
        distances = pairwise_distances(np.asarray(points, dtype=np.float64)[chosen], metric)
        source = metric if isinstance(metric, str) else getattr(metric, "__name__", "custom")
    return EmpiricalDistanceCdf.from_distances(distances, points_sampled=s, source=source)
