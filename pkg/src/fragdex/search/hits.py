"""Search results and per-query statistics."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass(frozen=True)
class Hit:
    """One dataset fragment returned by a search."""
    index: int  # fragment number in the store
    record_id: str
    offset: int
    fragment: str
    distance: int
    score: Optional[int] = None

    def sort_key(self):
        return (self.distance, self.record_id, self.offset)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "recordId": self.record_id,
            "offset": self.offset,
            "fragment": self.fragment,
            "distance": self.distance,
            "score": self.score,
        }


@dataclass
class SearchStats:
    """Work done by one search."""
    frag_length: int = 0
    bins_scanned: int = 0
    fragments_scanned: int = 0
    residues_scanned: int = 0
    distance_evaluations: int = 0
    nodes_visited: int = 0

    def access_overhead(self, hits: int) -> float:
        """Fragments scanned per hit returned; at least 1 whenever hits were found."""
        return self.fragments_scanned / max(hits, 1)

    @property
    def residue_percentage(self) -> float:
        """Residues actually read as a percentage of m per scanned fragment."""
        total = self.frag_length * self.fragments_scanned
        return 100.0 * self.residues_scanned / total if total else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "binsScanned": self.bins_scanned,
            "fragmentsScanned": self.fragments_scanned,
            "residuesScanned": self.residues_scanned,
            "distanceEvaluations": self.distance_evaluations,
            "nodesVisited": self.nodes_visited,
        }


@dataclass
class HitList:
    """Hits of one query, sorted by (distance, record id, offset).

    ``radius`` is the closed-ball radius the hit set answers: epsilon for a
    range search, the final k-th distance r_k for a kNN search (None when
    the dataset is empty).
    """
    mode: str
    hits: List[Hit] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    radius: Optional[int] = None
    query_id: str = ""
    center: str = ""

    def __post_init__(self) -> None:
        self.hits.sort(key=Hit.sort_key)

    def __len__(self) -> int:
        return len(self.hits)

    def __iter__(self):
        return iter(self.hits)

    @property
    def access_overhead(self) -> float:
        return self.stats.access_overhead(len(self.hits))

    def indices(self) -> set:
        """Store fragment numbers of all hits."""
        return {h.index for h in self.hits}

    def distances(self) -> List[int]:
        return [h.distance for h in self.hits]
