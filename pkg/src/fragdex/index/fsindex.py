"""FSIndex construction.

The index is three flat arrays over a FragmentStore:

    bin   N+1 offsets; bin u holds frag[bin[u]:bin[u+1]]
    frag  store fragment numbers, grouped by bin, lexicographic inside a bin
    lcp   common prefix length with the previous entry of the same bin,
          0 at the first entry of every bin
"""

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from ..errors import QueryError
from ..ingest.store import FragmentStore
from .partitions import PartitionScheme

MAX_FRAG_LENGTH = 255  # lcp is stored as u8


@dataclass
class BuildReport:
    """Summary of a built index."""
    n: int
    num_bins: int
    nonempty_bins: int
    max_bin_size: int
    histogram: Dict[int, int]  # lower power-of-two bound -> number of bins
    windows_total: int = 0
    windows_rejected: int = 0

    @property
    def mean_nonempty_size(self) -> float:
        return self.n / self.nonempty_bins if self.nonempty_bins else 0.0

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "N": self.num_bins,
            "nonemptyBins": self.nonempty_bins,
            "maxBinSize": self.max_bin_size,
            "meanNonemptySize": round(self.mean_nonempty_size, 6),
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "windowsTotal": self.windows_total,
            "windowsRejected": self.windows_rejected,
        }


@dataclass(eq=False)
class FSIndex:
    """Bin, fragment and lcp arrays over a fragment store."""
    scheme: PartitionScheme
    store: FragmentStore
    bin: np.ndarray
    frag: np.ndarray
    lcp: np.ndarray
    # store codes in frag order, so a bin scan reads contiguous rows
    sorted_codes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.sorted_codes = np.ascontiguousarray(self.store.codes[self.frag])
        for array in (self.bin, self.frag, self.lcp, self.sorted_codes):
            array.setflags(write=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FSIndex):
            return NotImplemented
        return (
            self.scheme == other.scheme
            and np.array_equal(self.bin, other.bin)
            and np.array_equal(self.frag, other.frag)
            and np.array_equal(self.lcp, other.lcp)
            and np.array_equal(self.store.codes, other.store.codes)
        )

    @property
    def m(self) -> int:
        return self.scheme.m

    @property
    def n(self) -> int:
        return int(self.frag.shape[0])

    @property
    def num_bins(self) -> int:
        return self.scheme.num_bins

    def bin_size(self, u: int) -> int:
        return int(self.bin[u + 1] - self.bin[u])

    def bin_members(self, u: int) -> np.ndarray:
        """Store fragment numbers in bin u, in scan order."""
        return self.frag[self.bin[u]:self.bin[u + 1]]

    def nonempty_bins(self) -> np.ndarray:
        return np.flatnonzero(np.diff(self.bin))

    def build_report(self) -> BuildReport:
        sizes = np.diff(self.bin)
        occupied = sizes[sizes > 0]
        histogram: Dict[int, int] = {}
        if len(occupied):
            buckets = np.floor(np.log2(occupied)).astype(np.int64)
            for b, count in zip(*np.unique(buckets, return_counts=True)):
                histogram[1 << int(b)] = int(count)
        return BuildReport(
            n=self.n,
            num_bins=self.num_bins,
            nonempty_bins=int(len(occupied)),
            max_bin_size=int(occupied.max()) if len(occupied) else 0,
            histogram=histogram,
            windows_total=self.store.windows_total,
            windows_rejected=self.store.windows_rejected,
        )


def _lcp(sorted_codes: np.ndarray, bin_starts: np.ndarray) -> np.ndarray:
    n, m = sorted_codes.shape
    lcp = np.zeros(n, dtype=np.uint8)
    if n > 1:
        same = sorted_codes[1:] == sorted_codes[:-1]
        lcp[1:] = np.where(same.all(axis=1), m, same.argmin(axis=1))
    lcp[bin_starts] = 0
    return lcp


def build_index(store: FragmentStore, scheme: PartitionScheme, verbose: bool = False) -> FSIndex:
    """Build an FSIndex by counting sort on bin rank.

    Fragments are ordered by an LSD radix pass over the letter positions
    followed by a stable pass on the bin rank, so equal fragments keep their
    (record, offset) order.

    Args:
        store: Fragments to index
        scheme: Partitions; scheme.m must equal store.frag_length
        verbose: Print progress

    Raises:
        QueryError: Fragment length mismatch or unsupported length
    """
    if store.frag_length != scheme.m:
        raise QueryError(
            f"Store fragment length {store.frag_length} does not match partition length {scheme.m}"
        )
    if scheme.m > MAX_FRAG_LENGTH:
        raise QueryError(f"Fragment length {scheme.m} exceeds {MAX_FRAG_LENGTH}")
    if store.alphabet != scheme.alphabet:
        raise QueryError("Store and partition scheme use different alphabets")

    n, m = len(store), scheme.m
    N = scheme.num_bins
    _log(verbose, f"Ranking {n} fragments into {N} bins")

    ranks = scheme.rank_codes(store.codes) if n else np.zeros(0, dtype=np.int64)
    counts = np.bincount(ranks, minlength=N)
    bins = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(counts, out=bins[1:])

    order = np.arange(n, dtype=np.int64)
    for j in range(m - 1, -1, -1):
        order = order[np.argsort(store.codes[order, j], kind="stable")]
    order = order[np.argsort(ranks[order], kind="stable")]

    sorted_codes = store.codes[order]
    starts = bins[:-1][counts > 0]
    lcp = _lcp(sorted_codes, starts)
    _log(verbose, f"Built index: {int((counts > 0).sum())} non-empty bins")

    return FSIndex(scheme=scheme, store=store, bin=bins, frag=order, lcp=lcp)


def _log(verbose: bool, msg: str) -> None:
    if verbose:
        print(f"[fsindex] {msg}")
