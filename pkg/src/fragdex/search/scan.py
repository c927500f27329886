"""Sequential scan: brute-force answers used as the oracle for indexed search."""

from typing import Optional, Tuple, Union

import numpy as np

from ..errors import QueryError, VerificationError
from ..ingest.store import FragmentStore
from ..scoring.matrix import QuasiMetric
from ..scoring.pssm import PSSM
from .hits import Hit, HitList, SearchStats


def query_costs(
    center: Union[str, PSSM],
    measure: Optional[QuasiMetric] = None,
) -> Tuple[np.ndarray, Optional[int], str]:
    """Cost table, score offset and label for a matrix or PSSM query."""
    if isinstance(center, PSSM):
        return center.cost_table(), center.max_total, center.name or center.argmax_fragment()
    if measure is None:
        raise QueryError("A fragment query needs a quasi-metric")
    codes = measure.alphabet.encode(center)
    offset = int(measure.co_weight[codes].sum()) if measure.co_weight is not None else None
    return measure.dist[codes], offset, center


def scan_distances(store: FragmentStore, cost: np.ndarray) -> np.ndarray:
    """Distance of every stored fragment under a cost table."""
    if cost.shape[0] != store.frag_length:
        raise QueryError(
            f"Query length {cost.shape[0]} does not match fragment length {store.frag_length}"
        )
    if len(store) == 0:
        return np.zeros(0, dtype=np.int64)
    return cost[np.arange(store.frag_length), store.codes].sum(axis=1)


def sequential_scan(
    store: FragmentStore,
    center: Union[str, PSSM],
    measure: Optional[QuasiMetric] = None,
    radius: Optional[int] = None,
    k: Optional[int] = None,
    query_id: str = "",
    symmetric: bool = False,
) -> HitList:
    """Exact range (radius) or kNN (k) answer by computing every distance.

    kNN follows the same tie rule as the index: every fragment at the k-th
    smallest distance is returned. With symmetric set, a fragment query is
    measured by max(d(center, x), d(x, center)).

    Raises:
        QueryError: Bad radius or k, or symmetric with a PSSM query
    """
    if (radius is None) == (k is None):
        raise QueryError("Give exactly one of a radius or k")
    if k is not None and k < 1:
        raise QueryError(f"k must be at least 1, got {k}")
    if radius is not None and radius < 0:
        raise QueryError(f"Radius must be non-negative, got {radius}")

    cost, offset, label = query_costs(center, measure)
    dist = scan_distances(store, cost)
    if symmetric:
        if isinstance(center, PSSM):
            raise QueryError("Symmetric distances apply to fragment queries, not PSSMs")
        codes = measure.alphabet.encode(center)
        dist = np.maximum(dist, scan_distances(store, measure.dist[:, codes].T))
        offset = None
    n, m = len(store), store.frag_length

    if radius is not None:
        mode, final = "range", int(radius)
    elif n == 0:
        mode, final = "knn", None
    else:
        kth = min(k, n) - 1
        mode, final = "knn", int(np.partition(dist, kth)[kth])

    selected = np.flatnonzero(dist <= final) if final is not None else np.zeros(0, dtype=np.int64)
    hits = []
    for i in selected:
        i = int(i)
        record_id, off = store.provenance(i)
        d = int(dist[i])
        hits.append(Hit(
            index=i,
            record_id=record_id,
            offset=off,
            fragment=store.fragment(i),
            distance=d,
            score=None if offset is None else offset - d,
        ))
    stats = SearchStats(
        frag_length=m,
        fragments_scanned=n,
        residues_scanned=n * m,
        distance_evaluations=n,
    )
    return HitList(mode=mode, hits=hits, stats=stats, radius=final, query_id=query_id, center=label)


def check_equivalent(indexed: HitList, scanned: HitList) -> None:
    """Raise VerificationError unless both hit lists hold the same (fragment, distance) set.

    Raises:
        VerificationError: The sets differ or the kNN radii disagree
    """
    got = {(h.index, h.distance) for h in indexed}
    want = {(h.index, h.distance) for h in scanned}
    label = indexed.query_id or indexed.center
    if got != want:
        missing = len(want - got)
        extra = len(got - want)
        raise VerificationError(
            f"Query {label}: index returned {len(got)} hits, scan {len(want)} "
            f"({missing} missing, {extra} extra)",
            query=label,
        )
    if indexed.mode == "knn" and indexed.radius != scanned.radius:
        raise VerificationError(
            f"Query {label}: kNN radius {indexed.radius} differs from scan radius {scanned.radius}",
            query=label,
        )
