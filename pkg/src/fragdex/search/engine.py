"""Indexed range, kNN and PSSM search over an FSIndex.

The bins form an implicit tree rooted at the query's home bin. A child
differs from its parent in one reduced letter at a position at or after the
parent's start position, and its lower bound is the parent's bound plus the
cheapest letter of the new reduced letter. Subtrees whose bound exceeds the
current radius are skipped. kNN search runs the same traversal with a
radius that shrinks to the current k-th distance.
"""

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from ..errors import QueryError
from ..index.fsindex import FSIndex
from ..scoring.matrix import QuasiMetric
from ..scoring.pssm import PSSM
from .hits import Hit, HitList, SearchStats
from .tables import DistanceTables, matrix_tables, pssm_tables, symmetric_tables

T = TypeVar("T")
R = TypeVar("R")


class RangeCollector:
    """Keeps every fragment within a fixed radius."""

    fixed = True

    def __init__(self, radius: int) -> None:
        self.radius = radius
        self.found: List[Tuple[int, int]] = []

    def offer(self, pos: int, dist: int) -> None:
        self.found.append((pos, dist))

    def results(self) -> List[Tuple[int, int]]:
        return self.found

    def final_radius(self) -> Optional[int]:
        return self.radius


class KnnCollector:
    """Max-heap of the k best fragments plus the fragments tied with the k-th.

    ``radius`` is infinite until k fragments were seen, then the distance of
    the current k-th best.
    """

    fixed = False

    def __init__(self, k: int) -> None:
        self.k = k
        self.radius: Union[int, float] = math.inf
        self._heap: List[Tuple[int, int]] = []  # (-distance, frag position)
        self._ties: List[Tuple[int, int]] = []  # (frag position, distance == radius)

    def offer(self, pos: int, dist: int) -> None:
        heap = self._heap
        if len(heap) < self.k:
            heapq.heappush(heap, (-dist, pos))
            if len(heap) == self.k:
                self.radius = -heap[0][0]
        elif dist < self.radius:
            old_dist, old_pos = heapq.heapreplace(heap, (-dist, pos))
            new_radius = -heap[0][0]
            if -old_dist == new_radius:
                self._ties.append((old_pos, -old_dist))
            else:
                self._ties.clear()
            self.radius = new_radius
        else:
            self._ties.append((pos, dist))

    def results(self) -> List[Tuple[int, int]]:
        return [(pos, -neg) for neg, pos in self._heap] + self._ties

    def final_radius(self) -> Optional[int]:
        if not self._heap:
            return None
        return -self._heap[0][0]


def process_bin(
    ix: FSIndex,
    u: int,
    tables: DistanceTables,
    collector,
    stats: SearchStats,
) -> None:
    """Scan bin u, reusing the cumulative distance of the shared prefix.

    For entry i the prefix distances up to lcp[i] are still valid. Positions
    are filled up to the checkpoint c = lcp[i+1] (0 at the last entry); if
    the prefix distance at c is already above the radius the entry is
    dropped, otherwise the remaining positions are filled and the fragment
    is offered to the collector.
    """
    start, end = int(ix.bin[u]), int(ix.bin[u + 1])
    stats.nodes_visited += 1
    if start == end:
        return
    stats.bins_scanned += 1
    stats.fragments_scanned += end - start
    if collector.fixed:
        _scan_block(ix, start, end, tables, collector, stats)
        return

    m = ix.m
    cost = tables.cost.tolist()
    reverse = tables.reverse_cost.tolist() if tables.reverse_cost is not None else None
    rows = ix.sorted_codes[start:end].tolist()
    lcps = ix.lcp[start:end].tolist() + [0]
    cd = [0] * (m + 1)
    residues = 0
    evaluations = 0
    for i, row in enumerate(rows):
        lo, c = lcps[i], lcps[i + 1]
        if c > lo:
            for j in range(lo, c):
                cd[j + 1] = cd[j] + cost[j][row[j]]
            residues += c - lo
        if cd[c] > collector.radius:
            continue
        begin = max(lo, c)
        for j in range(begin, m):
            cd[j + 1] = cd[j] + cost[j][row[j]]
        residues += m - begin
        evaluations += 1
        dist = cd[m]
        if reverse is not None and dist <= collector.radius:
            dist = max(dist, sum(reverse[j][row[j]] for j in range(m)))
        if dist <= collector.radius:
            collector.offer(start + i, dist)
    stats.residues_scanned += residues
    stats.distance_evaluations += evaluations


def _scan_block(ix: FSIndex, start: int, end: int, tables: DistanceTables, collector, stats: SearchStats) -> None:
    """Vectorised scan of one bin for a fixed radius.

    All positions are summed at once, but ``residues_scanned`` and
    ``distance_evaluations`` report what the early-exit loop of process_bin
    reads for the same radius, so both paths give identical statistics.
    """
    m = ix.m
    block = ix.sorted_codes[start:end]
    cum = np.zeros((end - start, m + 1), dtype=np.int64)
    np.cumsum(tables.cost[np.arange(m), block], axis=1, out=cum[:, 1:])
    lo = ix.lcp[start:end].astype(np.int64)
    c = np.append(lo[1:], 0)
    passed = cum[np.arange(end - start), c] <= collector.radius
    begin = np.maximum(lo, c)
    stats.residues_scanned += int(np.clip(c - lo, 0, None).sum() + ((m - begin) * passed).sum())
    stats.distance_evaluations += int(passed.sum())
    dist = cum[:, m]
    if tables.reverse_cost is not None:
        dist = np.maximum(dist, tables.reverse_cost[np.arange(m), block].sum(axis=1))
    for i in np.flatnonzero(dist <= collector.radius):
        collector.offer(start + int(i), int(dist[i]))


def _traverse(ix: FSIndex, tables: DistanceTables, collector, stats: SearchStats) -> None:
    scheme = ix.scheme
    m = scheme.m
    weights = [int(w) for w in scheme.weights]
    sizes = [int(s) for s in scheme.sizes]
    bin_letter = tables.bin_letter.tolist()
    min_other = tables.min_other.tolist()
    home = tables.home_reduced.tolist()

    def check_node(u: int, bound: int, first: int) -> None:
        for j in range(m - 1, first - 1, -1):
            if bound + min_other[j] > collector.radius:
                continue
            base = u - home[j] * weights[j]
            for sigma in range(sizes[j]):
                if sigma == home[j]:
                    continue
                child_bound = bound + bin_letter[j][sigma]
                if child_bound <= collector.radius:
                    v = base + sigma * weights[j]
                    process_bin(ix, v, tables, collector, stats)
                    check_node(v, child_bound, j + 1)

    process_bin(ix, tables.home_rank, tables, collector, stats)
    check_node(tables.home_rank, 0, 0)


def _hit_list(ix: FSIndex, tables: DistanceTables, collector, stats: SearchStats, mode: str, query_id: str) -> HitList:
    store = ix.store
    hits = []
    for pos, dist in collector.results():
        idx = int(ix.frag[pos])
        record_id, offset = store.provenance(idx)
        hits.append(Hit(
            index=idx,
            record_id=record_id,
            offset=offset,
            fragment=store.fragment(idx),
            distance=int(dist),
            score=tables.score(dist),
        ))
    return HitList(
        mode=mode,
        hits=hits,
        stats=stats,
        radius=collector.final_radius(),
        query_id=query_id,
        center=tables.label,
    )


def search_tables(
    ix: FSIndex,
    tables: DistanceTables,
    radius: Optional[int] = None,
    k: Optional[int] = None,
    query_id: str = "",
) -> HitList:
    """Run a range (radius) or kNN (k) search for prepared tables.

    Raises:
        QueryError: Neither or both of radius and k given, radius < 0 or k < 1
    """
    if (radius is None) == (k is None):
        raise QueryError("Give exactly one of a radius or k")
    if tables.scheme != ix.scheme:
        raise QueryError("Query tables were prepared for a different partition scheme")
    if radius is not None:
        if radius < 0:
            raise QueryError(f"Radius must be non-negative, got {radius}")
        collector = RangeCollector(int(radius))
        mode = "range"
    else:
        if k < 1:
            raise QueryError(f"k must be at least 1, got {k}")
        collector = KnnCollector(int(k))
        mode = "knn"
    stats = SearchStats(frag_length=ix.m)
    if ix.n:
        _traverse(ix, tables, collector, stats)
    return _hit_list(ix, tables, collector, stats, mode, query_id)


def _center_tables(ix: FSIndex, center: str, q: QuasiMetric, symmetric: bool) -> DistanceTables:
    if symmetric:
        return symmetric_tables(q, center, ix.scheme)
    return matrix_tables(q, center, ix.scheme)


def range_search(
    ix: FSIndex,
    center: str,
    q: QuasiMetric,
    radius: int,
    query_id: str = "",
    symmetric: bool = False,
) -> HitList:
    """All fragments x with d(center, x) <= radius.

    d is sum_j d(center_j, x_j), or max(d(center, x), d(x, center)) when
    symmetric is set.
    """
    return search_tables(ix, _center_tables(ix, center, q, symmetric), radius=radius, query_id=query_id)


def knn_search(
    ix: FSIndex,
    center: str,
    q: QuasiMetric,
    k: int,
    query_id: str = "",
    symmetric: bool = False,
) -> HitList:
    """The k nearest fragments plus every fragment tied with the k-th."""
    return search_tables(ix, _center_tables(ix, center, q, symmetric), k=k, query_id=query_id)


def pssm_search(
    ix: FSIndex,
    p: PSSM,
    radius: Optional[int] = None,
    k: Optional[int] = None,
    query_id: str = "",
) -> HitList:
    """Search by PSSM valuation; hits carry the valuation and the raw PSSM score."""
    return search_tables(ix, pssm_tables(p, ix.scheme), radius=radius, k=k, query_id=query_id)


def batch_search(fn: Callable[[T], R], queries: Sequence[T], workers: int = 1) -> List[R]:
    """Apply a search to every query; results come back in input order."""
    if workers <= 1 or len(queries) <= 1:
        return [fn(q) for q in queries]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, queries))
