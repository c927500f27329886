"""Per-query lookup tables shared by the indexed search and the scan.

Every supported query reduces to a cost table C of shape (m, |alphabet|):
the distance of a fragment x is sum_j C[j, x_j]. A matrix query centred at
w uses C[j, a] = d(w_j, a); a PSSM query uses C[j, a] = max_b S_j(b) - S_j(a).
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import QueryError
from ..index.partitions import PartitionScheme
from ..scoring.matrix import QuasiMetric
from ..scoring.pssm import PSSM

# bound for reduced letters a position does not have (position-varying schemes)
UNREACHABLE = np.iinfo(np.int64).max // 4


@dataclass(frozen=True, eq=False)
class DistanceTables:
    """Cost table for one query plus its projections onto a partition scheme.

    ``bin_letter[j, r]`` is the least cost of any letter in reduced letter r at
    position j; ``min_other[j]`` is the least of those over r != home_reduced[j].
    Adding a fragment's costs to ``score_offset`` gives its raw similarity score.
    With ``reverse_cost`` set the distance is max(sum C, sum C_rev); the forward
    costs alone still bound it from below, so pruning uses only them.
    """
    cost: np.ndarray
    home: np.ndarray
    scheme: PartitionScheme
    score_offset: Optional[int] = None
    label: str = ""
    reverse_cost: Optional[np.ndarray] = None
    home_reduced: np.ndarray = field(init=False, repr=False)
    home_rank: int = field(init=False, repr=False)
    bin_letter: np.ndarray = field(init=False, repr=False)
    min_other: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        scheme = self.scheme
        cost = np.asarray(self.cost, dtype=np.int64)
        if cost.shape != scheme.tables.shape:
            raise QueryError(
                f"Query has shape {cost.shape}, index expects {scheme.tables.shape}"
            )
        if (cost < 0).any():
            raise QueryError("Query costs must be non-negative")
        m = scheme.m
        width = int(scheme.sizes.max())
        bin_letter = np.full((m, width), UNREACHABLE, dtype=np.int64)
        for j in range(m):
            np.minimum.at(bin_letter[j], scheme.tables[j], cost[j])
        home = np.asarray(self.home, dtype=np.int64)
        home_reduced = scheme.reduce(home).astype(np.int64)
        others = bin_letter.copy()
        others[np.arange(m), home_reduced] = UNREACHABLE
        for name, value in (
            ("cost", cost),
            ("home", home),
            ("home_reduced", home_reduced),
            ("bin_letter", bin_letter),
            ("min_other", others.min(axis=1)),
        ):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        if self.reverse_cost is not None:
            reverse = np.asarray(self.reverse_cost, dtype=np.int64)
            if reverse.shape != cost.shape:
                raise QueryError(f"Reverse costs have shape {reverse.shape}, expected {cost.shape}")
            reverse.setflags(write=False)
            object.__setattr__(self, "reverse_cost", reverse)
        object.__setattr__(self, "home_rank", int((home_reduced * scheme.weights).sum()))

    @property
    def m(self) -> int:
        return self.scheme.m

    def distance(self, codes: np.ndarray) -> np.ndarray:
        """Distances of encoded fragments, vectorised over the leading axis."""
        cols = np.arange(self.m)
        dist = self.cost[cols, codes].sum(axis=-1)
        if self.reverse_cost is not None:
            dist = np.maximum(dist, self.reverse_cost[cols, codes].sum(axis=-1))
        return dist

    def score(self, distance: int) -> Optional[int]:
        if self.score_offset is None:
            return None
        return self.score_offset - int(distance)


def matrix_tables(q: QuasiMetric, center: str, scheme: PartitionScheme) -> DistanceTables:
    """Tables for sum_j d(center_j, x_j).

    Raises:
        QueryError: Center length differs from the scheme length
        AlphabetError: Non-standard letter in the center
    """
    if len(center) != scheme.m:
        raise QueryError(f"Query length {len(center)} does not match index fragment length {scheme.m}")
    codes = q.alphabet.encode(center)
    offset = int(q.co_weight[codes].sum()) if q.co_weight is not None else None
    return DistanceTables(
        cost=q.dist[codes],
        home=codes,
        scheme=scheme,
        score_offset=offset,
        label=center,
    )


def pssm_tables(p: PSSM, scheme: PartitionScheme) -> DistanceTables:
    """Tables for the PSSM valuation; the home bin holds the argmax fragment.

    Raises:
        QueryError: PSSM length differs from the scheme length
    """
    if p.length != scheme.m:
        raise QueryError(f"PSSM length {p.length} does not match index fragment length {scheme.m}")
    return DistanceTables(
        cost=p.cost_table(),
        home=p.scores.argmax(axis=1),
        scheme=scheme,
        score_offset=p.max_total,
        label=p.name or p.argmax_fragment(),
    )


def symmetric_tables(q: QuasiMetric, center: str, scheme: PartitionScheme) -> DistanceTables:
    """Tables for max(d(center, x), d(x, center)) with fragment-level d.

    Raises:
        QueryError: Center length differs from the scheme length
        AlphabetError: Non-standard letter in the center
    """
    if len(center) != scheme.m:
        raise QueryError(f"Query length {len(center)} does not match index fragment length {scheme.m}")
    codes = q.alphabet.encode(center)
    return DistanceTables(
        cost=q.dist[codes],
        home=codes,
        scheme=scheme,
        label=center,
        reverse_cost=q.dist[:, codes].T,
    )
